#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "isomlab/certificate.hpp"
#include "isomlab/representation.hpp"

namespace isomlab::cooper {

// V_s^* V_t = V_p V_q^* with t - s = p - q and min(p_i, q_i) = 0.
struct NormalOrder {
  std::vector<double> p;
  std::vector<double> q;
};

NormalOrder normal_order(const std::vector<double>& s,
                         const std::vector<double>& t);

struct CooperOptions {
  double eigen_tol = 1e-8;       // tolerance for the K_z relation precheck
  double claimed_bound = 1e-12;  // deviation the certificate asserts
};

// Checks <V_s xi, V_t xi> against <S_s f_z, S_t f_z> * ||xi||^2 over the
// sampled pairs.  xi must satisfy V_t^* xi = exp(-<z,t>) xi on the sampled
// parameters, otherwise the certificate reports FAILED_PRECONDITION with
// the worst offending t.
template <Representation R>
Certificate verify_cooper_gram(
    const R& rep, const typename R::Vector& xi, const std::vector<cdouble>& z,
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
        sample_pairs,
    const CooperOptions& opts = {}) {
  require(static_cast<int>(z.size()) == rep.dim(),
          "verify_cooper_gram: dimension mismatch");
  const double xi_norm2 = rep.inner(xi, xi).real();
  const double xi_norm = std::sqrt(std::max(0.0, xi_norm2));

  Certificate cert;
  cert.kind = "cooper_gram";
  cert.claimed_bound = opts.claimed_bound;

  auto eigen_defect = [&](const std::vector<double>& t) {
    cdouble exponent = 0.0;
    for (size_t i = 0; i < t.size(); ++i) exponent += z[i] * t[i];
    const auto lhs = rep.apply_adjoint(t, xi);
    const auto want = rep.scale(std::exp(-exponent), xi);
    return rep_norm(rep, rep_sub(rep, lhs, want));
  };

  double worst_defect = 0.0;
  std::vector<double> worst_t;
  for (const auto& [s, t] : sample_pairs) {
    for (const auto& param : {s, t}) {
      const double defect = eigen_defect(param);
      if (defect > worst_defect) {
        worst_defect = defect;
        worst_t = param;
      }
    }
  }
  if (worst_defect > opts.eigen_tol * std::max(1.0, xi_norm)) {
    cert.status = CertStatus::FailedPrecondition;
    cert.achieved = worst_defect;
    cert.witnesses.push_back({{"t", worst_t}, {"eigen_defect", worst_defect}});
    return cert;
  }

  double max_dev = 0.0;
  std::pair<std::vector<double>, std::vector<double>> worst_pair;
  for (const auto& [s, t] : sample_pairs) {
    const cdouble lhs = rep.inner(rep.apply(s, xi), rep.apply(t, xi));
    const cdouble kernel = expspan::term_inner(
        expspan::ElementaryTerm{1.0, s, z}, expspan::ElementaryTerm{1.0, t, z});
    const double dev = std::abs(lhs - kernel * xi_norm2);
    if (dev > max_dev) {
      max_dev = dev;
      worst_pair = {s, t};
    }
  }
  cert.achieved = max_dev;
  cert.status = max_dev <= opts.claimed_bound ? CertStatus::Pass : CertStatus::Fail;
  cert.witnesses.push_back(
      {{"s", worst_pair.first}, {"t", worst_pair.second}, {"deviation", max_dev}});
  cert.extra["eigen_defect"] = worst_defect;
  return cert;
}

template <typename VectorT>
struct WanderingResult {
  VectorT xi;
  double max_kernel_residual = 0.0;  // max_i ||V_{e_i}^* xi||
};

// xi = sum_{eps in {0,1}^d} (-1)^{|eps|} exp(-<z,eps>) V_eps eta recovers a
// joint co-kernel vector from an integer eigenvector eta.
template <Representation R>
WanderingResult<typename R::Vector> wandering_from_eigen(
    const R& rep, const typename R::Vector& eta, const std::vector<cdouble>& z,
    double eigen_tol = 1e-8) {
  const int d = rep.dim();
  require(static_cast<int>(z.size()) == d,
          "wandering_from_eigen: dimension mismatch");
  const double eta_norm = rep_norm(rep, eta);
  for (int i = 0; i < d; ++i) {
    const auto t = unit_direction(d, i, 1.0);
    const auto defect = rep_sub(rep, rep.apply_adjoint(t, eta),
                                rep.scale(std::exp(-z[i]), eta));
    require(rep_norm(rep, defect) <= eigen_tol * std::max(1.0, eta_norm),
            "wandering_from_eigen: eta fails the integer eigen-relation");
  }

  typename R::Vector xi = rep.scale(0.0, eta);
  for (int mask = 0; mask < (1 << d); ++mask) {
    cdouble exponent = 0.0;
    std::vector<double> eps(d, 0.0);
    int parity = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1 << i)) {
        eps[i] = 1.0;
        exponent += z[i];
        ++parity;
      }
    }
    const cdouble coeff = (parity % 2 ? -1.0 : 1.0) * std::exp(-exponent);
    xi = rep.add(xi, rep.scale(coeff, rep.apply(eps, eta)));
  }

  WanderingResult<typename R::Vector> out{std::move(xi), 0.0};
  for (int i = 0; i < d; ++i) {
    const auto t = unit_direction(d, i, 1.0);
    out.max_kernel_residual = std::max(
        out.max_kernel_residual, rep_norm(rep, rep.apply_adjoint(t, out.xi)));
  }
  return out;
}

// Finite-dimensional N^d-periodic semigroup T_t = Q diag(e^{2 pi i <n_k, t>}) Q^*,
// held in simultaneously diagonalized form with integer spectra.
class PeriodicSemigroup {
 public:
  PeriodicSemigroup(Eigen::MatrixXcd unitary_basis,
                    std::vector<std::vector<int>> spectra);

  static PeriodicSemigroup diagonal(std::vector<std::vector<int>> spectra);

  int space_dim() const { return static_cast<int>(spectra_.size()); }
  int params() const { return params_; }
  Eigen::MatrixXcd at(const std::vector<double>& t) const;

 private:
  Eigen::MatrixXcd basis_;
  std::vector<std::vector<int>> spectra_;
  int params_;
};

struct PeriodicModes {
  std::map<MultiIndex, Eigen::MatrixXcd> projections;
  int total_rank = 0;
  double max_eigen_defect = 0.0;   // max ||T_s P_n - e^{2 pi i <n,s>} P_n||
  double max_cross_product = 0.0;  // max ||P_n P_m||_F over n != m
};

// P_n = int_{[0,1]^d} e^{-2 pi i <n,t>} T_t dt by the tensor trapezoid rule
// (spectrally exact on trigonometric integrands).  Throws when the rule is
// too coarse for the requested range (aliasing shows up as P_n P_m != 0).
PeriodicModes periodic_eigenmodes(const PeriodicSemigroup& T,
                                  const std::vector<int>& n_lo,
                                  const std::vector<int>& n_hi,
                                  int quad_points);

// Default resolution for a frequency box reaching max |n| = n_abs.
int suggested_quad_points(int n_abs);

}  // namespace isomlab::cooper
