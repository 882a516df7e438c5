#include "isomlab/normal.hpp"

#include <array>
#include <cmath>

namespace isomlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Rational approximation of the Faddeeva function w(z) for Im(z) >= 0
// (Weideman's method: Fourier coefficients of exp(-t^2)(L^2+t^2) under the
// Moebius substitution t = L tan(theta/2)).  N = 64 terms is comfortably at
// rounding level over the upper half plane.
constexpr int kFadTerms = 64;

const std::array<double, kFadTerms>& faddeeva_coeffs() {
  static const std::array<double, kFadTerms> coeffs = [] {
    std::array<double, kFadTerms> a{};
    const int m_half = 2 * kFadTerms;
    const double L = std::sqrt(kFadTerms / std::sqrt(2.0));
    for (int m = 1; m <= kFadTerms; ++m) {
      double sum = L * L;  // k = 0 sample: g(0) = exp(0) * (L^2 + 0)
      for (int k = 1; k <= m_half - 1; ++k) {
        const double theta = k * M_PI / m_half;
        const double t = L * std::tan(0.5 * theta);
        const double g = std::exp(-t * t) * (L * L + t * t);
        sum += 2.0 * g * std::cos(m * theta);
      }
      a[m - 1] = sum / (2.0 * m_half);
    }
    return a;
  }();
  return coeffs;
}

// w(z) = exp(-z^2) erfc(-iz), valid for Im(z) >= 0.
cdouble faddeeva_w_upper(cdouble z) {
  const auto& a = faddeeva_coeffs();
  const double L = std::sqrt(kFadTerms / std::sqrt(2.0));
  const cdouble iz(-z.imag(), z.real());
  const cdouble denom = L - iz;
  const cdouble big_z = (L + iz) / denom;
  cdouble p = 0.0;
  for (int m = kFadTerms - 1; m >= 0; --m) p = p * big_z + a[m];
  return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double log_norm_sf(double x) {
  if (x < 30.0) return std::log(norm_sf(x));
  // Tail: Phibar(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - ...).
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2);
  return -0.5 * x2 - std::log(x) + std::log(kInvSqrt2Pi * series);
}

double norm_sf_inv(double p) {
  require(p > 0.0 && p < 1.0, "norm_sf_inv: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -norm_sf_inv(1.0 - p);
  // p < 1/2 so the root is positive;  bracket, then safeguarded Newton.
  double lo = 0.0, hi = 1.0;
  while (norm_sf(hi) > p) hi *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = norm_sf(x) - p;
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    double next = x + f / norm_pdf(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

cdouble erfc_c(cdouble z) {
  if (z.imag() == 0.0) return std::erfc(z.real());
  if (z.real() < 0.0) return 2.0 - erfc_c(-z);
  // erfc(z) = exp(-z^2) w(iz); Im(iz) = Re(z) >= 0 here.
  const cdouble iz(-z.imag(), z.real());
  return std::exp(-z * z) * faddeeva_w_upper(iz);
}

cdouble norm_sf_c(cdouble z) {
  if (z.imag() == 0.0) return norm_sf(z.real());
  return 0.5 * erfc_c(z / kSqrt2);
}

}  // namespace isomlab
