#include "isomlab/wold.hpp"

namespace isomlab::wold {

Certificate wandering_reconstruct(const discrete::BasisIsometry& V,
                                  const discrete::SparseVector& v, int box,
                                  double claimed_bound) {
  for (int i = 0; i < V.dim(); ++i)
    require(V.generator(i).kind == discrete::GeneratorRule::Kind::Shift,
            "wandering_reconstruct: all generators must be pure shifts");
  for (const auto& [n, c] : v.entries)
    for (int k : n)
      require(k <= box, "wandering_reconstruct: support of v exceeds the box");

  std::vector<int> all_dirs(V.dim());
  for (int i = 0; i < V.dim(); ++i) all_dirs[i] = i;
  const std::vector<discrete::SparseVector> kernel =
      kernel_of_adjoints(V, all_dirs, box);

  // Expand over the orthonormal family {V_n w : n <= box, w in kernel}.
  discrete::SparseVector reconstruction = discrete::zero_vector(V.dim());
  int used_terms = 0;
  MultiIndex n(V.dim(), 0);
  while (true) {
    for (const auto& w : kernel) {
      const discrete::SparseVector shifted = apply_multi(V, n, w);
      const cdouble coeff = inner(shifted, v);
      if (coeff != 0.0) {
        reconstruction = add(reconstruction, scale(coeff, shifted));
        ++used_terms;
      }
    }
    int k = V.dim() - 1;
    while (k >= 0 && n[k] == box) n[k--] = 0;
    if (k < 0) break;
    ++n[k];
  }

  const double residual = norm(sub(v, reconstruction));
  Certificate cert =
      make_certificate("wandering_reconstruct", claimed_bound, residual);
  cert.extra["box"] = box;
  cert.extra["kernel_dimension"] = kernel.size();
  cert.extra["expansion_terms"] = used_terms;
  return cert;
}

}  // namespace isomlab::wold
