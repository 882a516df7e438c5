#include "isomlab/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isomlab/normal.hpp"

namespace isomlab::gauss {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double shift_value(ShiftKind kind, int n) {
  return kind == ShiftKind::InvN ? 1.0 / n : 1.0 / std::sqrt(double(n));
}

double lemma_value(double t, int n) {
  // Phibar(a_n) = exp(u) with u = t^{2n+1} < 0 tiny for large n; invert the
  // lower tail through 1 - exp(u) = -expm1(u) to keep full accuracy when
  // exp(u) is within rounding of 1.
  const double u = std::pow(t, 2 * n + 1);
  const double lower = -std::expm1(u);
  if (lower == 0.0) return -std::numeric_limits<double>::infinity();
  if (lower < 1e-3) return -norm_sf_inv(lower);
  return norm_sf_inv(std::exp(u));
}

bool generators_equal(const TailGenerator& g1, const TailGenerator& g2) {
  if (g1.index() != g2.index()) return false;
  if (std::holds_alternative<LemmaGenerator>(g1))
    return std::get<LemmaGenerator>(g1).t == std::get<LemmaGenerator>(g2).t;
  if (std::holds_alternative<ShiftedLemmaGenerator>(g1)) {
    const auto& a = std::get<ShiftedLemmaGenerator>(g1);
    const auto& b = std::get<ShiftedLemmaGenerator>(g2);
    return a.t == b.t && a.shift == b.shift && a.amplitude == b.amplitude;
  }
  return true;  // both monostate
}

}  // namespace

double lemma_product_log(double t) { return t * t * t / (1.0 - t * t); }

double lemma_product_log_tail(double t, int n0) {
  return std::pow(t, 2 * n0 + 3) / (1.0 - t * t);
}

BoundarySequence::BoundarySequence(std::vector<double> prefix,
                                   TailGenerator gen)
    : prefix_(std::move(prefix)), generator_(std::move(gen)) {
  for (double a : prefix_)
    require(a <= 0.0, "BoundarySequence: entries must be <= 0");
  if (std::holds_alternative<LemmaGenerator>(generator_)) {
    const double t = std::get<LemmaGenerator>(generator_).t;
    require(t > -M_LN2 && t < 0.0,
            "BoundarySequence: lemma parameter must lie in (-log 2, 0)");
  } else if (std::holds_alternative<ShiftedLemmaGenerator>(generator_)) {
    const auto& g = std::get<ShiftedLemmaGenerator>(generator_);
    require(g.t > -M_LN2 && g.t < 0.0,
            "BoundarySequence: lemma parameter must lie in (-log 2, 0)");
    require(g.amplitude >= 0.0, "BoundarySequence: negative shift amplitude");
  }
}

double BoundarySequence::at(int n) const {
  require(n >= 1, "BoundarySequence: index is 1-based");
  if (n <= prefix_size()) return prefix_[n - 1];
  if (std::holds_alternative<LemmaGenerator>(generator_))
    return lemma_value(std::get<LemmaGenerator>(generator_).t, n);
  if (std::holds_alternative<ShiftedLemmaGenerator>(generator_)) {
    const auto& g = std::get<ShiftedLemmaGenerator>(generator_);
    return lemma_value(g.t, n) - g.amplitude * shift_value(g.shift, n);
  }
  return kNegInf;  // unconstrained tail
}

BoundarySequence construct_X_sequence(double t, int n_max) {
  require(t > -M_LN2 && t < 0.0,
          "construct_X_sequence: t must lie in (-log 2, 0)");
  require(n_max >= 1, "construct_X_sequence: n_max must be positive");
  std::vector<double> prefix(n_max);
  for (int n = 1; n <= n_max; ++n) {
    prefix[n - 1] = lemma_value(t, n);
    // Drift check |Phibar(a_n) - t_n| <= 1e-14, evaluated on the lower-tail
    // scale where both sides stay representable.
    const double lower = -std::expm1(std::pow(t, 2 * n + 1));
    if (std::isinf(prefix[n - 1])) continue;  // t_n rounds to 1 at this depth
    if (std::abs(norm_sf(-prefix[n - 1]) - lower) > 1e-14)
      throw std::runtime_error("construct_X_sequence: quantile inversion drift");
  }
  return BoundarySequence(std::move(prefix), LemmaGenerator{t});
}

double log_mass(const BoundarySequence& a, int depth) {
  const int upto = std::max(depth, a.prefix_size());
  double sum = 0.0;
  for (int n = 1; n <= upto; ++n) sum += log_norm_sf(a.at(n));
  // Generator tails have exact geometric log sums; the shifted variant is
  // bracketed by the unshifted one (the bracket width is below 1e-25 at
  // this depth), so the unshifted tail serves as the certified lower end.
  if (std::holds_alternative<LemmaGenerator>(a.generator()))
    sum += lemma_product_log_tail(std::get<LemmaGenerator>(a.generator()).t, upto);
  else if (std::holds_alternative<ShiftedLemmaGenerator>(a.generator()))
    sum += lemma_product_log_tail(
        std::get<ShiftedLemmaGenerator>(a.generator()).t, upto);
  return sum;
}

Certificate x_membership(const BoundarySequence& a, double tol, int depth) {
  require(tol > 0.0, "x_membership: tolerance must be positive");
  const int upto = std::max(depth, a.prefix_size());
  Certificate cert;
  cert.kind = "x_membership";
  cert.claimed_bound = tol;

  double partial = 0.0;
  int crossing = -1;
  for (int n = 1; n <= upto; ++n) {
    partial += log_norm_sf(a.at(n));
    if (crossing < 0 && std::exp(partial) < tol) crossing = n;
  }
  const double total = log_mass(a, depth);
  cert.achieved = std::exp(total);
  cert.status = cert.achieved >= tol ? CertStatus::Pass : CertStatus::Fail;
  cert.extra["log_mass"] = total;
  cert.extra["depth"] = upto;
  if (crossing >= 0) cert.extra["first_partial_below_tol"] = crossing;
  return cert;
}

cdouble gauss_exp_integral(double floor, cdouble beta) {
  if (std::isinf(floor) && floor < 0.0) return std::exp(0.5 * beta * beta);
  if (beta == 0.0) return norm_sf(floor);
  if (beta.imag() == 0.0)
    return std::exp(0.5 * beta.real() * beta.real()) *
           norm_sf(floor - beta.real());
  return std::exp(0.5 * beta * beta) * norm_sf_c(floor - beta);
}

namespace {

CylinderFactor factor_or_default(const GaussianCylinderVector& v, int k,
                                 const BoundarySequence& a) {
  auto it = v.factors.find(k);
  if (it != v.factors.end()) return it->second;
  return CylinderFactor{0.0, a.at(k), 0.0};
}

void check_floors(const GaussianCylinderVector& v, const BoundarySequence& a) {
  for (const auto& [k, f] : v.factors) {
    require(k >= 1, "GaussianCylinderVector: coordinates are 1-based");
    require(f.floor() >= a.at(k),
            "GaussianCylinderVector: floor below the ambient boundary");
  }
}

void drop_trivial_factors(GaussianCylinderVector& v, const BoundarySequence& a) {
  for (auto it = v.factors.begin(); it != v.factors.end();) {
    if (it->second.alpha() == 0.0 && it->second.floor() == a.at(it->first))
      it = v.factors.erase(it);
    else
      ++it;
  }
}

}  // namespace

cdouble cyl_inner(const GaussianCylinderVector& u,
                  const GaussianCylinderVector& v, const BoundarySequence& a,
                  int depth) {
  check_floors(u, a);
  check_floors(v, a);
  cdouble result = std::conj(u.coeff) * v.coeff;
  // Coordinates outside both supports contribute their plain ambient factor
  // Phibar(a_k); the complement of the (finite) union comes in through the
  // total mass divided by the union's own ambient factors.
  double log_unseen = log_mass(a, depth);
  for (const auto& [k, f] : u.factors) {
    (void)f;
    log_unseen -= log_norm_sf(a.at(k));
  }
  for (const auto& [k, f] : v.factors) {
    (void)f;
    if (!u.factors.count(k)) log_unseen -= log_norm_sf(a.at(k));
  }
  // Coordinates touched by either factor map.
  for (const auto& [k, fu] : u.factors) {
    const CylinderFactor fv = factor_or_default(v, k, a);
    result *= gauss_exp_integral(std::max(fu.floor(), fv.floor()),
                                 std::conj(fu.alpha()) + fv.alpha());
  }
  for (const auto& [k, fv] : v.factors) {
    if (u.factors.count(k)) continue;
    const CylinderFactor fu = factor_or_default(u, k, a);
    result *= gauss_exp_integral(std::max(fu.floor(), fv.floor()),
                                 std::conj(fu.alpha()) + fv.alpha());
  }
  return result * std::exp(log_unseen);
}

double cyl_norm(const GaussianCylinderVector& v, const BoundarySequence& a) {
  return std::sqrt(std::max(0.0, cyl_inner(v, v, a).real()));
}

GaussianCylinderVector vA_apply(const BoundarySequence& a,
                                const std::vector<double>& x,
                                const GaussianCylinderVector& v) {
  require(is_nonneg(x), "vA_apply: x must be nonnegative");
  check_floors(v, a);
  GaussianCylinderVector out = v;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const int k = static_cast<int>(i) + 1;
    CylinderFactor f = factor_or_default(out, k, a);
    out.coeff *= std::exp(-f.alpha() * x[i] - 0.25 * x[i] * x[i]);
    f.shift += x[i];
    out.factors[k] = f;
  }
  drop_trivial_factors(out, a);
  return out;
}

GaussianCylinderVector vA_adjoint(const BoundarySequence& a,
                                  const std::vector<double>& x,
                                  const GaussianCylinderVector& v) {
  require(is_nonneg(x), "vA_adjoint: x must be nonnegative");
  check_floors(v, a);
  GaussianCylinderVector out = v;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const int k = static_cast<int>(i) + 1;
    CylinderFactor f = factor_or_default(out, k, a);
    out.coeff *= std::exp(f.alpha() * x[i] - 0.25 * x[i] * x[i]);
    if (f.floor() - x[i] >= a.at(k)) {
      f.shift -= x[i];
    } else {
      // The translated floor clips at the ambient boundary: rebase.
      f.alpha0 = f.alpha() - 0.5 * x[i];
      f.floor0 = a.at(k);
      f.shift = 0.0;
    }
    out.factors[k] = f;
  }
  drop_trivial_factors(out, a);
  return out;
}

GaussVector gv_add(const GaussVector& u, const GaussVector& v) {
  GaussVector out = u;
  for (const auto& term : v) {
    bool merged = false;
    for (auto& existing : out) {
      if (existing.factors.size() != term.factors.size()) continue;
      bool same = true;
      auto it1 = existing.factors.begin();
      auto it2 = term.factors.begin();
      for (; it1 != existing.factors.end(); ++it1, ++it2) {
        if (it1->first != it2->first ||
            it1->second.alpha() != it2->second.alpha() ||
            it1->second.floor() != it2->second.floor()) {
          same = false;
          break;
        }
      }
      if (same) {
        existing.coeff += term.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(term);
  }
  std::erase_if(out, [](const GaussianCylinderVector& t) { return t.coeff == 0.0; });
  return out;
}

GaussVector gv_scale(cdouble c, const GaussVector& v) {
  GaussVector out = v;
  for (auto& term : out) term.coeff *= c;
  std::erase_if(out, [](const GaussianCylinderVector& t) { return t.coeff == 0.0; });
  return out;
}

cdouble gv_inner(const GaussVector& u, const GaussVector& v,
                 const BoundarySequence& a) {
  cdouble sum = 0.0;
  for (const auto& tu : u)
    for (const auto& tv : v) sum += cyl_inner(tu, tv, a);
  return sum;
}

std::string to_string(KakutaniVerdict v) {
  switch (v) {
    case KakutaniVerdict::Equivalent:
      return "EQUIVALENT";
    case KakutaniVerdict::Singular:
      return "SINGULAR";
    case KakutaniVerdict::Undecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

namespace {

struct CTail {
  enum class Kind { Zero, Bounded, DivergentSqrt, Unknown } kind = Kind::Unknown;
  double bound = 0.0;      // Bounded: sum_{n > n0} c_n^2 <= bound
  double amplitude = 0.0;  // DivergentSqrt: c_n = amplitude / sqrt(n)
};

CTail classify_c_tail(const BoundarySequence& a, const BoundarySequence& b,
                      int n0) {
  if (n0 < std::max(a.prefix_size(), b.prefix_size())) return {};
  const TailGenerator &ga = a.generator(), &gb = b.generator();
  if (generators_equal(ga, gb)) return {CTail::Kind::Zero, 0.0, 0.0};

  // lemma(t) against shifted-lemma(t): the difference is the shift itself.
  const LemmaGenerator* lem = std::get_if<LemmaGenerator>(&ga);
  const ShiftedLemmaGenerator* shifted = std::get_if<ShiftedLemmaGenerator>(&gb);
  if (!lem || !shifted) {
    lem = std::get_if<LemmaGenerator>(&gb);
    shifted = std::get_if<ShiftedLemmaGenerator>(&ga);
  }
  if (lem && shifted && lem->t == shifted->t) {
    if (shifted->shift == ShiftKind::InvN) {
      // sum_{n > n0} 1/n^2 < 1/n0.
      return {CTail::Kind::Bounded,
              shifted->amplitude * shifted->amplitude / n0, 0.0};
    }
    return {CTail::Kind::DivergentSqrt, 0.0, shifted->amplitude};
  }
  return {};
}

}  // namespace

HellingerReport kakutani_certify(const BoundarySequence& a,
                                 const BoundarySequence& b, int n_max,
                                 double tol) {
  require(n_max >= 1, "kakutani_certify: n_max must be positive");
  require(tol > 0.0 && tol < 1.0, "kakutani_certify: tol must lie in (0,1)");

  HellingerReport rep;
  rep.threshold = tol;
  rep.mu_a = std::exp(log_mass(a));
  rep.mu_b = std::exp(log_mass(b));

  double sum_c2 = 0.0, product = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    const double an = a.at(n), bn = b.at(n);
    double c, rho;
    if (std::isinf(an) && std::isinf(bn)) {
      c = 0.0;  // both coordinates unconstrained
      rho = 1.0;
    } else {
      require(std::isfinite(an) && std::isfinite(bn),
              "kakutani_certify: sequences not comparable to the requested depth");
      c = an - bn;
      rho = std::exp(-c * c / 8.0) * norm_sf(0.5 * (an + bn)) /
            std::sqrt(norm_sf(an) * norm_sf(bn));
    }
    if (rho > 1.0 + 1e-15) rep.monotone_ok = false;
    sum_c2 += c * c;
    product *= rho;
    rep.c_prefix.push_back(c);
    rep.partial_c2.push_back(sum_c2);
    rep.partial_products.push_back(product);
    if (rep.crossing_n < 0 && product <= tol) rep.crossing_n = n;
  }
  rep.i_estimate = product;
  rep.i_upper = product;

  if (rep.crossing_n >= 0) {
    rep.verdict = KakutaniVerdict::Singular;
    rep.i_lower = 0.0;
    return rep;
  }

  const CTail tail = classify_c_tail(a, b, n_max);
  switch (tail.kind) {
    case CTail::Kind::Zero:
    case CTail::Kind::Bounded:
      // Each remaining factor lies in [exp(-c_n^2/8), 1] by log-concavity
      // of the Gaussian tail, so the limit is bracketed explicitly.
      rep.verdict = KakutaniVerdict::Equivalent;
      rep.i_lower = product * std::exp(-tail.bound / 8.0);
      break;
    case CTail::Kind::DivergentSqrt: {
      // Unnormalized factors are <= exp(-c_n^2/8); with c_n = C/sqrt(n) the
      // running sum grows like C^2 log n, which certifies a crossing of the
      // threshold even when it sits far beyond any computable prefix.
      rep.verdict = KakutaniVerdict::Singular;
      rep.i_lower = 0.0;
      const double s_target =
          8.0 * (std::log(1.0 / tol) - 0.5 * std::log(rep.mu_a * rep.mu_b));
      if (sum_c2 < s_target) {
        const double amp2 = tail.amplitude * tail.amplitude;
        rep.crossing_n =
            (n_max + 1) * std::exp((s_target - sum_c2) / amp2) - 1.0;
      } else {
        rep.crossing_n = n_max;
      }
      break;
    }
    case CTail::Kind::Unknown:
      rep.verdict = KakutaniVerdict::Undecided;
      rep.i_lower = 0.0;
      break;
  }
  return rep;
}

Certificate finite_restriction_intertwiner(
    const BoundarySequence& a, const BoundarySequence& b, int n,
    const std::vector<std::vector<double>>& t_grid,
    const std::vector<GaussianCylinderVector>& test_vectors,
    double claimed_bound) {
  require(n >= 1, "finite_restriction_intertwiner: n must be positive");
  for (int k = 1; k <= n; ++k)
    require(std::isfinite(a.at(k)) && std::isfinite(b.at(k)),
            "finite_restriction_intertwiner: sequences must be finite on the "
            "first n coordinates");
  for (const auto& t : t_grid) {
    require(static_cast<int>(t.size()) <= n,
            "finite_restriction_intertwiner: grid exceeds the restriction");
    require(is_nonneg(t), "finite_restriction_intertwiner: negative shift");
  }

  // Tail mass normalization sqrt(mu(A_(n)) / mu(B_(n))).
  double log_tail_a = log_mass(a), log_tail_b = log_mass(b);
  for (int k = 1; k <= n; ++k) {
    log_tail_a -= log_norm_sf(a.at(k));
    log_tail_b -= log_norm_sf(b.at(k));
  }
  const double tail_factor = std::exp(0.5 * (log_tail_a - log_tail_b));

  // The Gaussian Koopman translation by s = b - a on the first n coordinates.
  auto apply_w = [&](const GaussianCylinderVector& v) {
    GaussianCylinderVector out = v;
    for (int k = 1; k <= n; ++k) {
      const double s = b.at(k) - a.at(k);
      if (s == 0.0) continue;
      CylinderFactor f = factor_or_default(out, k, a);
      out.coeff *= std::exp(-f.alpha() * s - 0.25 * s * s);
      f.shift += s;
      out.factors[k] = f;
    }
    out.coeff *= tail_factor;
    drop_trivial_factors(out, b);
    return out;
  };

  Certificate cert;
  cert.kind = "finite_restriction_intertwiner";
  cert.claimed_bound = claimed_bound;
  double worst = 0.0;
  nlohmann::ordered_json worst_witness;
  for (size_t vi = 0; vi < test_vectors.size(); ++vi) {
    const auto& v = test_vectors[vi];
    for (const auto& [k, f] : v.factors) {
      (void)f;
      require(k <= n, "finite_restriction_intertwiner: test vector exceeds "
                      "the restriction");
    }
    const double v_norm = cyl_norm(v, a);
    const GaussianCylinderVector wv = apply_w(v);
    const double norm_dev = std::abs(cyl_norm(wv, b) - v_norm);
    if (norm_dev > worst) {
      worst = norm_dev;
      worst_witness = {{"vector", vi}, {"check", "norm"}};
    }
    for (const auto& t : t_grid) {
      std::vector<double> tn(n, 0.0);
      std::copy(t.begin(), t.end(), tn.begin());
      const GaussianCylinderVector lhs = apply_w(vA_apply(a, tn, v));
      const GaussianCylinderVector rhs = vA_apply(b, tn, wv);
      GaussVector diff{lhs};
      diff = gv_add(diff, gv_scale(-1.0, GaussVector{rhs}));
      const double dev =
          std::sqrt(std::max(0.0, gv_inner(diff, diff, b).real()));
      if (dev > worst) {
        worst = dev;
        worst_witness = {{"vector", vi}, {"check", "intertwine"}, {"t", t}};
      }
    }
  }
  cert.achieved = worst;
  cert.status = worst <= claimed_bound ? CertStatus::Pass : CertStatus::Fail;
  if (!worst_witness.empty()) cert.witnesses.push_back(worst_witness);
  cert.extra["n"] = n;
  cert.extra["tail_factor"] = tail_factor;
  return cert;
}

WoldFailureMasses wold_failure_masses(double nu0, double nu1, int d) {
  require(d >= 1 && d <= 24, "wold_failure_masses: d must lie in [1,24]");
  require(nu0 >= 0.0 && nu1 >= 0.0 && std::abs(nu0 + nu1 - 1.0) <= 1e-12,
          "wold_failure_masses: nu must be a probability on {0,1}");
  WoldFailureMasses out;
  out.masses.resize(size_t(1) << d);
  for (size_t g = 0; g < out.masses.size(); ++g) {
    double mass = 1.0;
    for (int i = 0; i < d; ++i) mass *= (g >> i) & 1 ? nu1 : nu0;
    out.masses[g] = mass;
    out.max_mass = std::max(out.max_mass, mass);
  }
  return out;
}

}  // namespace isomlab::gauss
