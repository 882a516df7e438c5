#include "isomlab/fell.hpp"

#include <algorithm>
#include <cmath>

namespace isomlab::fell {

FellPoint::FellPoint(int dim, std::set<int> shift_dirs,
                     std::map<int, double> character)
    : d(dim), A(std::move(shift_dirs)), lambda(std::move(character)) {
  require(d >= 1, "FellPoint: dimension must be positive");
  for (int k : A) require(k >= 0 && k < d, "FellPoint: direction out of range");
  for (int j = 0; j < d; ++j) {
    if (A.count(j))
      require(!lambda.count(j),
              "FellPoint: lambda must be supported on the complement of A");
    else
      require(lambda.count(j),
              "FellPoint: lambda must cover every direction outside A");
  }
}

bool operator==(const FellPoint& p, const FellPoint& q) {
  return p.d == q.d && p.A == q.A && p.lambda == q.lambda;
}

ModelRep::ModelRep(FellPoint point) : point_(std::move(point)) {
  axes_.assign(point_.A.begin(), point_.A.end());
}

namespace {

// Split the parameter into the local shift (on the A axes) and the phase
// accumulated over the complement.
struct SplitParam {
  std::vector<double> shift;
  double phase = 0.0;
};

SplitParam split_param(const FellPoint& point, const std::vector<int>& axes,
                       const std::vector<double>& t) {
  require(static_cast<int>(t.size()) == point.d,
          "ModelRep: dimension mismatch");
  require(is_nonneg(t), "ModelRep: negative parameter component");
  SplitParam out;
  out.shift.resize(axes.size());
  for (size_t l = 0; l < axes.size(); ++l) out.shift[l] = t[axes[l]];
  for (const auto& [j, lam] : point.lambda) out.phase += t[j] * lam;
  return out;
}

}  // namespace

ModelRep::Vector ModelRep::apply(const std::vector<double>& t,
                                 const Vector& v) const {
  const SplitParam p = split_param(point_, axes_, t);
  Vector out = expspan::apply_shift(p.shift, v);
  if (p.phase != 0.0) out = expspan::scale(std::exp(cdouble(0.0, p.phase)), out);
  return out;
}

ModelRep::Vector ModelRep::apply_adjoint(const std::vector<double>& t,
                                         const Vector& v) const {
  const SplitParam p = split_param(point_, axes_, t);
  Vector out = expspan::apply_adjoint(p.shift, v);
  if (p.phase != 0.0) out = expspan::scale(std::exp(cdouble(0.0, -p.phase)), out);
  return out;
}

ModelRep::Vector ModelRep::default_unit_vector() const {
  const int m = model_dim();
  return expspan::make_term(m, 1.0, std::vector<double>(m, 0.0),
                            std::vector<cdouble>(m, 1.0));
}

namespace {

// Witness on the side of `point` for a direction k where it shifts and the
// other point rotates: pick t with ||V_{t e_k}^* xi|| < 1/2.
Witness pure_decay_witness(const FellPoint& point, std::string side, int k,
                           const expspan::ExpVector& xi) {
  const ModelRep model(point);
  require(std::abs(expspan::norm(xi) - 1.0) <= 1e-8,
          "separation_witness: xi must be a unit vector");

  // Conservative critical time from the per-term decay exp(-Re z (t - s)),
  // then a 1.01 margin; replay confirms (and doubles if ever short).
  const int local = static_cast<int>(
      std::distance(point.A.begin(), point.A.find(k)));
  double t_crit = 0.0;
  const double terms = static_cast<double>(xi.terms.size());
  for (const auto& term : xi.terms) {
    const double re_z = term.decay[local].real();
    const double excess =
        std::log(std::max(1.0, 2.02 * terms * std::abs(term.coeff))) / re_z;
    t_crit = std::max(t_crit, term.shift[local] + excess);
  }
  double t = 1.01 * std::max(t_crit, 1e-2);

  Witness w;
  w.kind = Witness::Kind::PureDecay;
  w.side = std::move(side);
  w.direction = k;
  w.claimed_bound = 0.5;
  for (int guard = 0; guard < 64; ++guard) {
    const auto image = model.apply_adjoint(unit_direction(point.d, k, t), xi);
    w.achieved = expspan::norm(image);
    if (w.achieved < 0.5) break;
    t *= 2.0;
  }
  w.t = t;
  return w;
}

}  // namespace

std::optional<Witness> separation_witness(
    const FellPoint& P, const FellPoint& Q,
    const std::optional<expspan::ExpVector>& xi) {
  require(P.d == Q.d, "separation_witness: dimension mismatch");
  if (P == Q) return std::nullopt;

  for (int k : P.A) {
    if (!Q.A.count(k)) {
      const expspan::ExpVector vec =
          xi ? *xi : ModelRep(P).default_unit_vector();
      return pure_decay_witness(P, "P", k, vec);
    }
  }
  for (int k : Q.A) {
    if (!P.A.count(k))
      return pure_decay_witness(Q, "Q", k, ModelRep(Q).default_unit_vector());
  }

  // A_P == A_Q here; the characters must differ somewhere.
  for (const auto& [k, lam] : P.lambda) {
    const double mu = Q.lambda.at(k);
    if (lam != mu) {
      Witness w;
      w.kind = Witness::Kind::PhaseGap;
      w.side = "P";
      w.direction = k;
      w.t = M_PI / (2.0 * std::abs(lam - mu));
      w.claimed_bound = 0.5;
      w.achieved = std::abs(std::exp(cdouble(0.0, lam * w.t)) -
                            std::exp(cdouble(0.0, mu * w.t)));
      return w;
    }
  }
  return std::nullopt;  // unreachable: P != Q was checked
}

bool closure_member(const FellPoint& P, const FellPoint& Q) {
  require(P.d == Q.d, "closure_member: dimension mismatch");
  for (int k : Q.A)
    if (!P.A.count(k)) return false;
  for (const auto& [j, lam] : P.lambda) {
    if (Q.lambda.at(j) != lam) return false;
  }
  return true;
}

DensityCertificate density_certificate(double lambda, double epsilon, double a,
                                       int grid_count) {
  require(epsilon > 0.0 && epsilon < std::sqrt(2.0),
          "density_certificate: epsilon must lie in (0, sqrt(2))");
  require(a > 0.0, "density_certificate: a must be positive");
  require(grid_count >= 2, "density_certificate: grid too small");

  DensityCertificate cert;
  cert.lambda = lambda;
  cert.epsilon = epsilon;
  cert.a = a;
  cert.delta = 0.99 * (-std::log1p(-0.5 * epsilon * epsilon)) / a;
  cert.g = expspan::make_term(1, 1.0, {0.0}, {cdouble(cert.delta, lambda)});

  for (int k = 0; k < grid_count; ++k) {
    const double t = a * k / (grid_count - 1);
    const cdouble phase = std::exp(cdouble(0.0, lambda * t));
    const auto fwd = expspan::sub(expspan::scale(phase, cert.g),
                                  expspan::apply_shift({t}, cert.g));
    const auto bwd = expspan::sub(expspan::scale(std::conj(phase), cert.g),
                                  expspan::apply_adjoint({t}, cert.g));
    const double dev_fwd2 = expspan::inner(fwd, fwd).real();
    const double dev_fwd = std::sqrt(std::max(0.0, dev_fwd2));
    const double dev_bwd = expspan::norm(bwd);
    cert.max_deviation = std::max({cert.max_deviation, dev_fwd, dev_bwd});
    const double closed_form = 2.0 * (-std::expm1(-cert.delta * t));
    cert.max_formula_error =
        std::max(cert.max_formula_error, std::abs(dev_fwd2 - closed_form));
  }
  cert.status =
      cert.max_deviation < epsilon ? CertStatus::Pass : CertStatus::Fail;
  return cert;
}

}  // namespace isomlab::fell
