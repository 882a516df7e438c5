#pragma once

#include <map>
#include <optional>
#include <set>

#include "isomlab/certificate.hpp"
#include "isomlab/representation.hpp"

namespace isomlab::fell {

// Classification coordinates (A, lambda) of an irreducible doubly commuting
// representation of R_+^d: shift directions A, character lambda on the
// complement.  Directions are 0-based internally.
struct FellPoint {
  int d = 1;
  std::set<int> A;
  std::map<int, double> lambda;

  FellPoint(int dim, std::set<int> shift_dirs, std::map<int, double> character);
};

bool operator==(const FellPoint& p, const FellPoint& q);

// Model representation V^{(A,lambda)} acting on the exponential span of
// dimension |A|; the complement directions act by the scalar phases
// exp(i t_j lambda_j).  |A| = 0 degenerates to scalars (dim-0 ExpVector).
class ModelRep {
 public:
  using Vector = expspan::ExpVector;

  explicit ModelRep(FellPoint point);

  int dim() const { return point_.d; }
  int model_dim() const { return static_cast<int>(axes_.size()); }
  const FellPoint& point() const { return point_; }

  Vector apply(const std::vector<double>& t, const Vector& v) const;
  Vector apply_adjoint(const std::vector<double>& t, const Vector& v) const;
  cdouble inner(const Vector& u, const Vector& v) const {
    return expspan::inner(u, v);
  }
  Vector add(const Vector& u, const Vector& v) const {
    return expspan::add(u, v);
  }
  Vector scale(cdouble c, const Vector& v) const { return expspan::scale(c, v); }
  DirectionKind direction_kind(int i) const {
    return point_.A.count(i) ? DirectionKind::Pure : DirectionKind::Unitary;
  }

  // f_{(1,...,1)} in the model space (the scalar 1 when A is empty).
  Vector default_unit_vector() const;

 private:
  FellPoint point_;
  std::vector<int> axes_;  // axes_[local] = global direction, sorted
};

struct Witness {
  enum class Kind { PureDecay, PhaseGap };
  Kind kind = Kind::PureDecay;
  std::string side;   // which point's model realizes the witness
  int direction = 0;  // global 0-based direction k
  double t = 0.0;
  double claimed_bound = 0.5;
  double achieved = 0.0;  // replayed value: < 1/2 for decay, >= 1/2 for gap
};

// A replayable witness that the two classes are Fell-separated: either a
// shift direction of one point on which the other acts unitarily (adjoint
// decay beats the 1/2 margin), or a phase gap on a common unitary
// direction.  Returns nothing when P == Q.
std::optional<Witness> separation_witness(
    const FellPoint& P, const FellPoint& Q,
    const std::optional<expspan::ExpVector>& xi = std::nullopt);

// Q lies in the closure of {P}  iff  A_Q is contained in A_P and the
// characters agree on the complement of A_P.
bool closure_member(const FellPoint& P, const FellPoint& Q);

struct DensityCertificate {
  double lambda = 0.0;
  double epsilon = 0.0;
  double a = 0.0;
  double delta = 0.0;
  expspan::ExpVector g;
  double max_deviation = 0.0;      // max over the grid, both directions
  double max_formula_error = 0.0;  // |dev^2 - 2(1 - e^{-delta t})| on the grid
  CertStatus status = CertStatus::Pass;
};

// Quantitative closure of the shift class over the character lambda:
// delta = 0.99 * (-log(1 - eps^2/2) / a) and g = f_{delta + i lambda}
// satisfy ||e^{i lambda t} g - S_t g|| < eps uniformly on [0, a].
DensityCertificate density_certificate(double lambda, double epsilon, double a,
                                       int grid_count);

}  // namespace isomlab::fell
