#pragma once

#include <functional>
#include <map>
#include <optional>

#include "isomlab/common.hpp"

namespace isomlab::discrete {

// Finitely supported vector on the standard basis of l^2(N_0^d).
struct SparseVector {
  int dim = 0;
  std::map<MultiIndex, cdouble> entries;
};

SparseVector zero_vector(int dim);
SparseVector basis_vector(int dim, MultiIndex index);  // delta_n
SparseVector add(const SparseVector& u, const SparseVector& v);
SparseVector scale(cdouble c, const SparseVector& v);
SparseVector sub(const SparseVector& u, const SparseVector& v);
cdouble inner(const SparseVector& u, const SparseVector& v);  // conj-linear first
double norm(const SparseVector& v);
void drop_zeros(SparseVector& v);

// Per-direction rule defining an isometry by its action on basis vectors.
// Custom rules must ship an adjoint rule; the engine never inverts
// infinite matrices.
struct GeneratorRule {
  enum class Kind { Shift, Phase, Custom };
  Kind kind = Kind::Shift;
  double theta = 0.0;  // Phase only
  std::function<SparseVector(const MultiIndex&)> forward;  // Custom only
  std::function<SparseVector(const MultiIndex&)> adjoint;  // Custom only

  static GeneratorRule shift() { return {Kind::Shift, 0.0, nullptr, nullptr}; }
  static GeneratorRule phase(double theta) {
    return {Kind::Phase, theta, nullptr, nullptr};
  }
  static GeneratorRule custom(std::function<SparseVector(const MultiIndex&)> fwd,
                              std::function<SparseVector(const MultiIndex&)> adj) {
    return {Kind::Custom, 0.0, std::move(fwd), std::move(adj)};
  }
};

// Tuple (V_1, ..., V_d) of doubly commuting isometries on l^2(N_0^d),
// each given by a generator rule in its own direction.
class BasisIsometry {
 public:
  BasisIsometry(int dim, std::vector<GeneratorRule> generators);

  // All directions act as the coordinate shift n -> n + e_i.
  static BasisIsometry shifts(int dim);

  int dim() const { return dim_; }
  const GeneratorRule& generator(int i) const { return generators_.at(i); }

 private:
  int dim_;
  std::vector<GeneratorRule> generators_;
};

// V_i v, linear extension of the generator rule (directions are 0-based).
SparseVector apply(const BasisIsometry& V, int i, const SparseVector& v);

// V_i^* v; exact on finitely supported vectors.
SparseVector apply_adjoint(const BasisIsometry& V, int i, const SparseVector& v);

// V_n = prod_i V_i^{n_i} and its adjoint.
SparseVector apply_multi(const BasisIsometry& V, const MultiIndex& n,
                         const SparseVector& v);
SparseVector apply_multi_adjoint(const BasisIsometry& V, const MultiIndex& n,
                                 const SparseVector& v);

// Orthonormal basis of the joint co-kernel  cap_{i in indices} ker V_i^*
// restricted to multi-indices <= box componentwise.  Exact for the built-in
// rules; custom rules go through a dense eigensolve on the box.
std::vector<SparseVector> kernel_of_adjoints(const BasisIsometry& V,
                                             const std::vector<int>& indices,
                                             int box);

struct EigenvectorResult {
  SparseVector eta;
  // Bound on || V_{e_i}^* eta - exp(-z_i) eta || maximized over directions.
  double residual_bound = 0.0;
};

// Certified residual for general integer m (geometric tails; exact under the
// orthogonality <V_n xi, V_m xi> = delta_{nm} ||xi||^2 of wandering data).
double eigenvector_residual_bound(const std::vector<cdouble>& z, int box,
                                  const MultiIndex& m, double xi_norm);

// eta_N = sum_{n <= box} exp(-<z,n>) V_n xi, the truncated joint eigenvector
// with eigenvalue exp(-<z,m>) for the adjoints.  Requires xi in the joint
// co-kernel (tolerance 1e-10).
EigenvectorResult build_eigenvector(const BasisIsometry& V,
                                    const SparseVector& xi,
                                    const std::vector<cdouble>& z, int box);

}  // namespace isomlab::discrete
