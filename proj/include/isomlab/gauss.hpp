#pragma once

#include <map>
#include <optional>
#include <variant>

#include "isomlab/certificate.hpp"
#include "isomlab/representation.hpp"

namespace isomlab::gauss {

// Tail rule a_n = PhibarInv(exp(t^{2n+1})) for -log 2 < t < 0; the log of
// each factor is t^{2n+1} by construction, so partial products and tails
// have exact geometric closed forms.
struct LemmaGenerator {
  double t = -0.5;
};

enum class ShiftKind { InvN, InvSqrtN };

// Tail rule a_n = lemma(t)_n - amplitude * s(n) with s(n) = 1/n or 1/sqrt(n);
// the difference to the unshifted lemma sequence is known exactly, which is
// what the Kakutani certificates need.
struct ShiftedLemmaGenerator {
  double t = -0.5;
  ShiftKind shift = ShiftKind::InvN;
  double amplitude = 1.0;
};

using TailGenerator =
    std::variant<std::monostate, LemmaGenerator, ShiftedLemmaGenerator>;

// Sum_{n>=1} t^{2n+1} = t^3/(1-t^2), and its tail past n0.
double lemma_product_log(double t);
double lemma_product_log_tail(double t, int n0);

// Boundary sequence a = (a_n)_{n>=1} with a_n <= 0: an explicit prefix plus
// an optional generator for the tail.  Without a generator the tail is
// unconstrained (a_n = -infinity, i.e. the factor [a_n, inf) is all of R).
class BoundarySequence {
 public:
  explicit BoundarySequence(std::vector<double> prefix, TailGenerator gen = {});

  double at(int n) const;  // 1-based
  int prefix_size() const { return static_cast<int>(prefix_.size()); }
  const std::vector<double>& prefix() const { return prefix_; }
  const TailGenerator& generator() const { return generator_; }
  bool has_tail() const {
    return !std::holds_alternative<std::monostate>(generator_);
  }

 private:
  std::vector<double> prefix_;
  TailGenerator generator_;
};

// a_n = PhibarInv(t_n) with t_n = exp(t^{2n+1}); the returned sequence has
// an n_max-term prefix and carries the lemma generator for its tail.
BoundarySequence construct_X_sequence(double t, int n_max);

// log mu(A) = sum_n log Phibar(a_n): numeric factors up to `depth`, exact
// generator closed form for the tail (0 without a generator).
double log_mass(const BoundarySequence& a, int depth = 48);

// Certifies mu(A) >= tol (verdict FAIL once the partial products sink
// below the tolerance, e.g. for truncated all-zero sequences).
Certificate x_membership(const BoundarySequence& a, double tol,
                         int depth = 48);

// One half-line factor e^{alpha y} 1_{[floor, inf)}(y).  Translations
// accumulate in `shift` on top of the base data so that two commuting
// translation orders yield bitwise-identical floors (an ulp of floor
// disagreement costs sqrt(ulp) in L^2 through the indicator).
struct CylinderFactor {
  cdouble alpha0 = 0.0;  // exponent at the base point
  double floor0 = 0.0;   // base floor
  double shift = 0.0;    // accumulated translation

  cdouble alpha() const { return alpha0 + 0.5 * shift; }
  double floor() const { return floor0 + shift; }
};

// coeff * prod_k e^{alpha_k y_k} 1_{[c_k, inf)}(y_k) in L^2(A, prod gamma);
// coordinates are 1-based, unspecified ones default to the constant 1 on
// [a_k, inf).  Inner products are taken against the ambient product
// Gaussian restricted (not renormalized) to A.
struct GaussianCylinderVector {
  cdouble coeff = 1.0;
  std::map<int, CylinderFactor> factors;
};

// int_c^inf e^{beta y} dgamma(y) = e^{beta^2/2} Phibar(c - beta); complex
// beta goes through the analytic continuation of Phibar.
cdouble gauss_exp_integral(double floor, cdouble beta);

cdouble cyl_inner(const GaussianCylinderVector& u,
                  const GaussianCylinderVector& v, const BoundarySequence& a,
                  int depth = 48);
double cyl_norm(const GaussianCylinderVector& v, const BoundarySequence& a);

// V^A_x: multiplication by prod_k e^{x_k y_k / 2 - x_k^2 / 4} composed with
// translation by x; exact within the cylinder class.  x lives on the first
// x.size() coordinates and must be nonnegative.
GaussianCylinderVector vA_apply(const BoundarySequence& a,
                                const std::vector<double>& x,
                                const GaussianCylinderVector& v);
GaussianCylinderVector vA_adjoint(const BoundarySequence& a,
                                  const std::vector<double>& x,
                                  const GaussianCylinderVector& v);

// Formal finite sums of cylinder vectors (the linear span the generic
// machinery works with).
using GaussVector = std::vector<GaussianCylinderVector>;

GaussVector gv_add(const GaussVector& u, const GaussVector& v);
GaussVector gv_scale(cdouble c, const GaussVector& v);
cdouble gv_inner(const GaussVector& u, const GaussVector& v,
                 const BoundarySequence& a);

// V^A as a representation of R_+^arity on the cylinder span.
struct GaussRep {
  using Vector = GaussVector;

  GaussRep(BoundarySequence seq, int arity_in)
      : a(std::move(seq)), arity(arity_in) {}

  int dim() const { return arity; }
  Vector apply(const std::vector<double>& t, const Vector& v) const {
    Vector out;
    out.reserve(v.size());
    for (const auto& term : v) out.push_back(vA_apply(a, t, term));
    return out;
  }
  Vector apply_adjoint(const std::vector<double>& t, const Vector& v) const {
    Vector out;
    out.reserve(v.size());
    for (const auto& term : v) out.push_back(vA_adjoint(a, t, term));
    return out;
  }
  cdouble inner(const Vector& u, const Vector& v) const {
    return gv_inner(u, v, a);
  }
  Vector add(const Vector& u, const Vector& v) const { return gv_add(u, v); }
  Vector scale(cdouble c, const Vector& v) const { return gv_scale(c, v); }
  DirectionKind direction_kind(int) const { return DirectionKind::Pure; }

  BoundarySequence a;
  int arity = 1;
};

enum class KakutaniVerdict { Equivalent, Singular, Undecided };

std::string to_string(KakutaniVerdict v);

// Partial Hellinger data for the pair (A, B).  The normalized affinity
// factor of coordinate n is
//   rho_n = exp(-c_n^2/8) Phibar((a_n+b_n)/2) / sqrt(Phibar(a_n) Phibar(b_n))
// with c_n = a_n - b_n; each rho_n lies in [exp(-c_n^2/8), 1] by
// log-concavity of Phibar, which is what certifies the brackets.
struct HellingerReport {
  std::vector<double> c_prefix;
  std::vector<double> partial_c2;        // running sums of c_n^2
  std::vector<double> partial_products;  // running normalized products
  double i_estimate = 1.0;               // product at n_max
  double i_lower = 0.0;                  // certified bracket for the limit
  double i_upper = 1.0;
  KakutaniVerdict verdict = KakutaniVerdict::Undecided;
  double threshold = 0.0;
  // Smallest n with a certified product <= threshold (may be analytic and
  // astronomically large for slowly diverging shifts); -1 when unknown.
  double crossing_n = -1.0;
  double mu_a = 0.0;
  double mu_b = 0.0;
  bool monotone_ok = true;
};

HellingerReport kakutani_certify(const BoundarySequence& a,
                                 const BoundarySequence& b, int n_max,
                                 double tol);

// Explicit intertwiner between V^A and V^B on the first n coordinates
// (Gaussian Koopman translation by b - a plus the tail-mass normalization),
// replayed on the grid and test vectors.
Certificate finite_restriction_intertwiner(
    const BoundarySequence& a, const BoundarySequence& b, int n,
    const std::vector<std::vector<double>>& t_grid,
    const std::vector<GaussianCylinderVector>& test_vectors,
    double claimed_bound = 1e-10);

struct WoldFailureMasses {
  std::vector<double> masses;  // index = bitmask over g in {0,1}^d
  double max_mass = 0.0;
};

// mu(X_g) = prod_{i<=d} nu(g(i)): every candidate Wold piece of the
// direct-integral representation carries mass (max nu)^d at best.
WoldFailureMasses wold_failure_masses(double nu0, double nu1, int d);

}  // namespace isomlab::gauss
