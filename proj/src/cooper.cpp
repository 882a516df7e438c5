#include "isomlab/cooper.hpp"

#include <cmath>
#include <random>

namespace isomlab::cooper {

NormalOrder normal_order(const std::vector<double>& s,
                         const std::vector<double>& t) {
  require(s.size() == t.size(), "normal_order: dimension mismatch");
  NormalOrder out{std::vector<double>(s.size(), 0.0),
                  std::vector<double>(s.size(), 0.0)};
  for (size_t i = 0; i < s.size(); ++i) {
    if (t[i] >= s[i])
      out.p[i] = t[i] - s[i];
    else
      out.q[i] = s[i] - t[i];
  }
  return out;
}

PeriodicSemigroup::PeriodicSemigroup(Eigen::MatrixXcd unitary_basis,
                                     std::vector<std::vector<int>> spectra)
    : basis_(std::move(unitary_basis)), spectra_(std::move(spectra)) {
  require(!spectra_.empty(), "PeriodicSemigroup: empty spectrum");
  params_ = static_cast<int>(spectra_.front().size());
  for (const auto& row : spectra_)
    require(static_cast<int>(row.size()) == params_,
            "PeriodicSemigroup: ragged spectra");
  const int m = static_cast<int>(spectra_.size());
  require(basis_.rows() == m && basis_.cols() == m,
          "PeriodicSemigroup: basis size mismatch");
  const double defect =
      (basis_.adjoint() * basis_ - Eigen::MatrixXcd::Identity(m, m)).norm();
  require(defect <= 1e-10, "PeriodicSemigroup: basis is not unitary");
}

PeriodicSemigroup PeriodicSemigroup::diagonal(
    std::vector<std::vector<int>> spectra) {
  const int m = static_cast<int>(spectra.size());
  return PeriodicSemigroup(Eigen::MatrixXcd::Identity(m, m), std::move(spectra));
}

Eigen::MatrixXcd PeriodicSemigroup::at(const std::vector<double>& t) const {
  require(static_cast<int>(t.size()) == params_,
          "PeriodicSemigroup: parameter dimension mismatch");
  const int m = space_dim();
  Eigen::VectorXcd diag(m);
  for (int k = 0; k < m; ++k) {
    double phase = 0.0;
    for (int i = 0; i < params_; ++i) phase += spectra_[k][i] * t[i];
    diag(k) = std::exp(cdouble(0.0, 2.0 * M_PI * phase));
  }
  return basis_ * diag.asDiagonal() * basis_.adjoint();
}

int suggested_quad_points(int n_abs) { return 4 * n_abs + 4; }

namespace {

std::vector<MultiIndex> frequency_box(const std::vector<int>& lo,
                                      const std::vector<int>& hi) {
  require(lo.size() == hi.size(), "periodic_eigenmodes: ragged range");
  for (size_t i = 0; i < lo.size(); ++i)
    require(lo[i] <= hi[i], "periodic_eigenmodes: empty range");
  std::vector<MultiIndex> out;
  MultiIndex n(lo.begin(), lo.end());
  while (true) {
    out.push_back(n);
    int k = static_cast<int>(n.size()) - 1;
    while (k >= 0 && n[k] == hi[k]) n[k] = lo[k], --k;
    if (k < 0) break;
    ++n[k];
  }
  return out;
}

int projection_rank(const Eigen::MatrixXcd& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (p + p.adjoint().eval()));
  int rank = 0;
  for (int j = 0; j < p.rows(); ++j)
    if (es.eigenvalues()(j) > 0.5) ++rank;
  return rank;
}

}  // namespace

PeriodicModes periodic_eigenmodes(const PeriodicSemigroup& T,
                                  const std::vector<int>& n_lo,
                                  const std::vector<int>& n_hi,
                                  int quad_points) {
  require(quad_points >= 2, "periodic_eigenmodes: quad_points must be >= 2");
  require(static_cast<int>(n_lo.size()) == T.params(),
          "periodic_eigenmodes: range dimension mismatch");
  const int d = T.params();
  const int q = quad_points;

  // One pass over the tensor grid {0, 1/q, ..., (q-1)/q}^d.
  std::vector<MultiIndex> grid =
      frequency_box(std::vector<int>(d, 0), std::vector<int>(d, q - 1));
  std::vector<Eigen::MatrixXcd> samples;
  samples.reserve(grid.size());
  for (const MultiIndex& j : grid) {
    std::vector<double> t(d);
    for (int i = 0; i < d; ++i) t[i] = static_cast<double>(j[i]) / q;
    samples.push_back(T.at(t));
  }

  PeriodicModes out;
  const double cell = 1.0 / std::pow(static_cast<double>(q), d);
  int max_abs = 0;
  for (const MultiIndex& n : frequency_box(n_lo, n_hi)) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(T.space_dim(), T.space_dim());
    for (size_t g = 0; g < grid.size(); ++g) {
      double phase = 0.0;
      for (int i = 0; i < d; ++i)
        phase += static_cast<double>(n[i]) * grid[g][i];
      p += std::exp(cdouble(0.0, -2.0 * M_PI * phase / q)) * samples[g];
    }
    p *= cell;
    for (int i = 0; i < d; ++i) max_abs = std::max(max_abs, std::abs(n[i]));
    out.projections[n] = std::move(p);
  }

  // Aliasing shows up as nonzero products between distinct modes.
  for (auto it1 = out.projections.begin(); it1 != out.projections.end(); ++it1)
    for (auto it2 = std::next(it1); it2 != out.projections.end(); ++it2)
      out.max_cross_product =
          std::max(out.max_cross_product, (it1->second * it2->second).norm());
  if (out.max_cross_product > 1e-8)
    throw std::runtime_error(
        "periodic_eigenmodes: quadrature resolution insufficient (aliasing); "
        "suggested quad_points = " +
        std::to_string(suggested_quad_points(max_abs)));

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [n, p] : out.projections) {
    out.total_rank += projection_rank(p);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> s(d);
      for (int i = 0; i < d; ++i) s[i] = unif(rng);
      double phase = 0.0;
      for (int i = 0; i < d; ++i) phase += n[i] * s[i];
      const double defect =
          (T.at(s) * p - std::exp(cdouble(0.0, 2.0 * M_PI * phase)) * p).norm();
      out.max_eigen_defect = std::max(out.max_eigen_defect, defect);
    }
  }
  return out;
}

}  // namespace isomlab::cooper
