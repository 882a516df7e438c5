#include "isomlab/discrete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace isomlab::discrete {

namespace {

void check_dim(const SparseVector& u, const SparseVector& v) {
  require(u.dim == v.dim, "discrete: dimension mismatch");
}

void check_direction(const BasisIsometry& V, int i) {
  require(i >= 0 && i < V.dim(), "discrete: direction out of range");
}

// Enumerate {0,...,box}^d in lexicographic order.
std::vector<MultiIndex> box_indices(int dim, int box) {
  std::vector<MultiIndex> out;
  MultiIndex n(dim, 0);
  while (true) {
    out.push_back(n);
    int k = dim - 1;
    while (k >= 0 && n[k] == box) n[k--] = 0;
    if (k < 0) break;
    ++n[k];
  }
  return out;
}

SparseVector apply_rule(const BasisIsometry& V, int i, const SparseVector& v,
                        bool adjoint) {
  check_direction(V, i);
  const GeneratorRule& g = V.generator(i);
  SparseVector out = zero_vector(v.dim);
  for (const auto& [n, c] : v.entries) {
    switch (g.kind) {
      case GeneratorRule::Kind::Shift: {
        MultiIndex m = n;
        if (!adjoint) {
          ++m[i];
          out.entries[m] += c;
        } else if (n[i] >= 1) {
          --m[i];
          out.entries[m] += c;
        }
        break;
      }
      case GeneratorRule::Kind::Phase: {
        const cdouble phase =
            std::exp(cdouble(0.0, adjoint ? -g.theta : g.theta));
        out.entries[n] += phase * c;
        break;
      }
      case GeneratorRule::Kind::Custom: {
        const auto& rule = adjoint ? g.adjoint : g.forward;
        require(static_cast<bool>(rule),
                "discrete: custom generator lacks an adjoint rule");
        SparseVector image = rule(n);
        for (const auto& [m, w] : image.entries) out.entries[m] += c * w;
        break;
      }
    }
  }
  drop_zeros(out);
  return out;
}

}  // namespace

SparseVector zero_vector(int dim) { return SparseVector{dim, {}}; }

SparseVector basis_vector(int dim, MultiIndex index) {
  require(static_cast<int>(index.size()) == dim,
          "basis_vector: dimension mismatch");
  for (int k : index) require(k >= 0, "basis_vector: negative index");
  SparseVector v{dim, {}};
  v.entries[std::move(index)] = 1.0;
  return v;
}

void drop_zeros(SparseVector& v) {
  for (auto it = v.entries.begin(); it != v.entries.end();)
    it = (it->second == 0.0) ? v.entries.erase(it) : std::next(it);
}

SparseVector add(const SparseVector& u, const SparseVector& v) {
  check_dim(u, v);
  SparseVector out = u;
  for (const auto& [n, c] : v.entries) out.entries[n] += c;
  drop_zeros(out);
  return out;
}

SparseVector scale(cdouble c, const SparseVector& v) {
  SparseVector out = v;
  for (auto& [n, w] : out.entries) w *= c;
  drop_zeros(out);
  return out;
}

SparseVector sub(const SparseVector& u, const SparseVector& v) {
  return add(u, scale(-1.0, v));
}

cdouble inner(const SparseVector& u, const SparseVector& v) {
  check_dim(u, v);
  cdouble sum = 0.0;
  // Iterate the smaller support.
  const SparseVector& small = u.entries.size() <= v.entries.size() ? u : v;
  const SparseVector& big = u.entries.size() <= v.entries.size() ? v : u;
  const bool small_is_u = &small == &u;
  for (const auto& [n, c] : small.entries) {
    auto it = big.entries.find(n);
    if (it == big.entries.end()) continue;
    sum += small_is_u ? std::conj(c) * it->second : std::conj(it->second) * c;
  }
  return sum;
}

double norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [n, c] : v.entries) s += std::norm(c);
  return std::sqrt(s);
}

BasisIsometry::BasisIsometry(int dim, std::vector<GeneratorRule> generators)
    : dim_(dim), generators_(std::move(generators)) {
  require(dim_ >= 1, "BasisIsometry: dim must be positive");
  require(static_cast<int>(generators_.size()) == dim_,
          "BasisIsometry: one generator per direction required");
  for (const GeneratorRule& g : generators_)
    if (g.kind == GeneratorRule::Kind::Custom)
      require(static_cast<bool>(g.forward) && static_cast<bool>(g.adjoint),
              "BasisIsometry: custom generator lacks an adjoint rule");
}

BasisIsometry BasisIsometry::shifts(int dim) {
  return BasisIsometry(dim,
                       std::vector<GeneratorRule>(dim, GeneratorRule::shift()));
}

SparseVector apply(const BasisIsometry& V, int i, const SparseVector& v) {
  return apply_rule(V, i, v, false);
}

SparseVector apply_adjoint(const BasisIsometry& V, int i,
                           const SparseVector& v) {
  return apply_rule(V, i, v, true);
}

SparseVector apply_multi(const BasisIsometry& V, const MultiIndex& n,
                         const SparseVector& v) {
  require(static_cast<int>(n.size()) == V.dim(), "apply_multi: bad index");
  SparseVector out = v;
  for (int i = 0; i < V.dim(); ++i)
    for (int k = 0; k < n[i]; ++k) out = apply(V, i, out);
  return out;
}

SparseVector apply_multi_adjoint(const BasisIsometry& V, const MultiIndex& n,
                                 const SparseVector& v) {
  require(static_cast<int>(n.size()) == V.dim(),
          "apply_multi_adjoint: bad index");
  SparseVector out = v;
  for (int i = 0; i < V.dim(); ++i)
    for (int k = 0; k < n[i]; ++k) out = apply_adjoint(V, i, out);
  return out;
}

std::vector<SparseVector> kernel_of_adjoints(const BasisIsometry& V,
                                             const std::vector<int>& indices,
                                             int box) {
  require(box >= 0, "kernel_of_adjoints: box must be nonnegative");
  for (int i : indices) check_direction(V, i);

  bool all_builtin = true;
  for (int i : indices) {
    const auto kind = V.generator(i).kind;
    if (kind == GeneratorRule::Kind::Phase) return {};  // unitary: trivial co-kernel
    if (kind != GeneratorRule::Kind::Shift) all_builtin = false;
  }
  if (all_builtin) {
    // ker S_i^* = span{delta_n : n_i = 0}: intersect and restrict to the box.
    std::vector<SparseVector> basis;
    for (const MultiIndex& n : box_indices(V.dim(), box)) {
      bool in_kernel = true;
      for (int i : indices) in_kernel = in_kernel && n[i] == 0;
      if (in_kernel) basis.push_back(basis_vector(V.dim(), n));
    }
    return basis;
  }

  // Custom rules: dense eigensolve of sum_i A_i^* A_i on the box, where A_i
  // is V_i^* compressed to the box.
  const std::vector<MultiIndex> idx = box_indices(V.dim(), box);
  std::map<MultiIndex, int> pos;
  for (size_t j = 0; j < idx.size(); ++j) pos[idx[j]] = static_cast<int>(j);
  const int n = static_cast<int>(idx.size());
  Eigen::MatrixXcd normal_matrix = Eigen::MatrixXcd::Zero(n, n);
  for (int i : indices) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      const SparseVector image =
          apply_adjoint(V, i, basis_vector(V.dim(), idx[j]));
      for (const auto& [m, c] : image.entries) {
        auto it = pos.find(m);
        if (it != pos.end()) a(it->second, j) = c;
      }
    }
    normal_matrix += a.adjoint() * a;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(normal_matrix);
  std::vector<SparseVector> basis;
  for (int j = 0; j < n; ++j) {
    if (es.eigenvalues()(j) > 1e-20) continue;
    SparseVector w = zero_vector(V.dim());
    for (int k = 0; k < n; ++k)
      if (es.eigenvectors()(k, j) != 0.0)
        w.entries[idx[k]] = es.eigenvectors()(k, j);
    drop_zeros(w);
    basis.push_back(std::move(w));
  }
  return basis;
}

double eigenvector_residual_bound(const std::vector<cdouble>& z, int box,
                                  const MultiIndex& m, double xi_norm) {
  require(z.size() == m.size(), "eigenvector_residual_bound: dim mismatch");
  const int d = static_cast<int>(z.size());
  // G_j(M) = sum_{k=0}^{M} q_j^k with q_j = exp(-2 Re z_j); the difference
  // prod G_j(box) - prod G_j(box - m_j) is telescoped so each factor keeps
  // full relative accuracy (a direct subtraction cancels catastrophically).
  auto partial = [&](int j, int upto) {
    if (upto < 0) return 0.0;
    const double q = std::exp(-2.0 * z[j].real());
    return (1.0 - std::pow(q, upto + 1)) / (1.0 - q);
  };
  auto step = [&](int j) {  // G_j(box) - G_j(box - m_j), exactly
    const double q = std::exp(-2.0 * z[j].real());
    const int lo = box - m[j];
    if (lo < -1) return partial(j, box);
    return std::pow(q, lo + 1) * (1.0 - std::pow(q, m[j])) / (1.0 - q);
  };
  double diff = 0.0, decay = 0.0;
  for (int k = 0; k < d; ++k) {
    double term = step(k);
    for (int j = 0; j < k; ++j) term *= partial(j, box);
    for (int j = k + 1; j < d; ++j) term *= partial(j, box - m[j]);
    diff += term;
  }
  for (int j = 0; j < d; ++j) decay += z[j].real() * m[j];
  return std::exp(-decay) * xi_norm * std::sqrt(std::max(0.0, diff));
}

EigenvectorResult build_eigenvector(const BasisIsometry& V,
                                    const SparseVector& xi,
                                    const std::vector<cdouble>& z, int box) {
  require(static_cast<int>(z.size()) == V.dim(),
          "build_eigenvector: dimension mismatch");
  require(box >= 0, "build_eigenvector: box must be nonnegative");
  for (const cdouble& zi : z)
    require(zi.real() > 0.0, "build_eigenvector: Re(z_i) must be positive");
  const double xi_norm = norm(xi);
  for (int i = 0; i < V.dim(); ++i)
    require(norm(apply_adjoint(V, i, xi)) <= 1e-10 * xi_norm,
            "build_eigenvector: xi is not in the joint co-kernel");

  SparseVector eta = zero_vector(V.dim());
  for (const MultiIndex& n : box_indices(V.dim(), box)) {
    cdouble exponent = 0.0;
    for (int j = 0; j < V.dim(); ++j) exponent += z[j] * static_cast<double>(n[j]);
    eta = add(eta, scale(std::exp(-exponent), apply_multi(V, n, xi)));
  }

  double bound = 0.0;
  for (int i = 0; i < V.dim(); ++i) {
    MultiIndex ei(V.dim(), 0);
    ei[i] = 1;
    bound = std::max(bound, eigenvector_residual_bound(z, box, ei, xi_norm));
  }
  return EigenvectorResult{std::move(eta), bound};
}

}  // namespace isomlab::discrete
