#pragma once

// Test-only oracles and generators.  The quadrature routines here are the
// independent side of every closed-form kernel check: they integrate the
// defining integrals directly and never touch the library kernels.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "isomlab/expspan.hpp"

namespace testsupport {

using isomlab::cdouble;

inline double integrate(const std::function<double(double)>& f, double a,
                        double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 12, 1e-13);
}

// <S_s f_z, S_t f_w> in one dimension straight from the defining integral.
inline cdouble kernel_quadrature_1d(double s, double t, cdouble z, cdouble w) {
  const double m = std::max(s, t);
  const double rate = z.real() + w.real();
  const double upper = m + 42.0 / rate;
  const double amp = 2.0 * std::sqrt(z.real() * w.real());
  auto term = [&](double x) -> cdouble {
    return amp * std::exp(-std::conj(z) * (x - s) - w * (x - t));
  };
  return {integrate([&](double x) { return term(x).real(); }, m, upper),
          integrate([&](double x) { return term(x).imag(); }, m, upper)};
}

inline cdouble kernel_quadrature(const std::vector<double>& s,
                                 const std::vector<double>& t,
                                 const std::vector<cdouble>& z,
                                 const std::vector<cdouble>& w) {
  cdouble k = 1.0;
  for (size_t i = 0; i < s.size(); ++i)
    k *= kernel_quadrature_1d(s[i], t[i], z[i], w[i]);
  return k;
}

// int_c^inf e^{beta y} dgamma(y) by quadrature.
inline cdouble gauss_factor_quadrature(double c, cdouble beta) {
  const double peak = std::max(c, beta.real());
  const double upper = peak + 14.0;
  constexpr double inv_sqrt_2pi = 0.39894228040143267794;
  auto f = [&](double y) -> cdouble {
    return inv_sqrt_2pi * std::exp(beta * y - 0.5 * y * y);
  };
  return {integrate([&](double y) { return f(y).real(); }, c, upper),
          integrate([&](double y) { return f(y).imag(); }, c, upper)};
}

inline cdouble random_halfplane_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(0.3, 2.0), im(-2.0, 2.0);
  return {re(rng), im(rng)};
}

inline std::vector<cdouble> random_halfplane(int dim, std::mt19937_64& rng) {
  std::vector<cdouble> z(dim);
  for (auto& zi : z) zi = random_halfplane_point(rng);
  return z;
}

inline std::vector<double> random_nonneg(int dim, std::mt19937_64& rng,
                                         double hi = 2.0) {
  std::uniform_real_distribution<double> unif(0.0, hi);
  std::vector<double> t(dim);
  for (double& x : t) x = unif(rng);
  return t;
}

// Random dyadic shifts (multiples of 1/64) add exactly in doubles, which is
// what the term-level semigroup identities need.
inline std::vector<double> random_dyadic(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(0, 128);
  std::vector<double> t(dim);
  for (double& x : t) x = grid(rng) / 64.0;
  return t;
}

inline isomlab::expspan::ExpVector random_expvector(int dim, int n_terms,
                                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  isomlab::expspan::ExpVector v = isomlab::expspan::zero_vector(dim);
  for (int k = 0; k < n_terms; ++k) {
    isomlab::expspan::ElementaryTerm term;
    term.coeff = cdouble(coeff(rng), coeff(rng));
    term.shift = random_nonneg(dim, rng);
    term.decay = random_halfplane(dim, rng);
    v.terms.push_back(std::move(term));
  }
  isomlab::expspan::canonicalize(v);
  return v;
}

}  // namespace testsupport
