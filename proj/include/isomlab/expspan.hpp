#pragma once

#include <Eigen/Dense>

#include "isomlab/common.hpp"

namespace isomlab::expspan {

// Point of the product half plane H_+^d (all coordinates have Re > 0).
struct HalfPlanePoint {
  std::vector<cdouble> z;

  explicit HalfPlanePoint(std::vector<cdouble> coords);
  int dim() const { return static_cast<int>(z.size()); }
};

// One summand  coeff * S_shift f_decay  of an exponential-span vector.
struct ElementaryTerm {
  cdouble coeff;
  std::vector<double> shift;   // in R_+^d
  std::vector<cdouble> decay;  // in H_+^d
};

// Finite combination of shifted decaying exponentials in L^2(R_+^d).
// Terms are kept merged and sorted; the zero vector is the empty list.
// dim == 0 is permitted (the space degenerates to scalars); it is used by
// the model representations with no shift direction.
struct ExpVector {
  int dim = 0;
  std::vector<ElementaryTerm> terms;
};

ExpVector zero_vector(int dim);
ExpVector make_term(int dim, cdouble coeff, std::vector<double> shift,
                    std::vector<cdouble> decay);

// The unit vector f_z(x) = sqrt(2^d prod Re z_i) exp(-<z,x>).
ExpVector unit_exponential(const HalfPlanePoint& z);

// Merge duplicate (shift, decay) keys, drop coefficients below 1e-14
// relative to the largest one, sort terms into a canonical order.
void canonicalize(ExpVector& v);

ExpVector add(const ExpVector& u, const ExpVector& v);
ExpVector scale(cdouble c, const ExpVector& v);
ExpVector sub(const ExpVector& u, const ExpVector& v);

// Closed-form kernel <S_s f_z, S_t f_w> for two single terms, coefficients
// included.  Conjugate-linear in the first slot.
cdouble term_inner(const ElementaryTerm& a, const ElementaryTerm& b);

// <u, v>, conjugate-linear in the first argument.
cdouble inner(const ExpVector& u, const ExpVector& v);
double norm(const ExpVector& v);

// S_t: each term's shift grows by t.  Exact.
ExpVector apply_shift(const std::vector<double>& t, const ExpVector& v);

// S_t^*: per coordinate, S_t^* S_s f_z = S_{s-t} f_z when s >= t and
// exp(-z (t-s)) f_z otherwise.  The span is exactly invariant.
ExpVector apply_adjoint(const std::vector<double>& t, const ExpVector& v);

// S_t S_t^*, the range projection of S_t.
ExpVector range_projection(const std::vector<double>& t, const ExpVector& v);

// Gram matrix G[j][k] = <vs[j], vs[k]>; Hermitian by construction.
Eigen::MatrixXcd gram(const std::vector<ExpVector>& vs);

struct SpanProjection {
  std::vector<cdouble> coeffs;  // one per grid node
  double residual_norm = 0.0;
  int effective_rank = 0;
};

// Least-squares projection of `target` onto span{S_t f_z2 : t in grid},
// solved through the Gram system with an eigenvalue floor of
// 1e-12 * trace/n (families of shifted exponentials go numerically
// dependent on fine grids).
SpanProjection shift_span_project(const ExpVector& target,
                                  const HalfPlanePoint& z2,
                                  const std::vector<std::vector<double>>& grid);

}  // namespace isomlab::expspan
