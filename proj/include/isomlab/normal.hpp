#pragma once

#include "isomlab/common.hpp"

namespace isomlab {

// Standard normal density.
double norm_pdf(double x);

// Complementary normal CDF  Phibar(x) = (1/sqrt(2 pi)) int_x^inf exp(-u^2/2) du.
double norm_sf(double x);

// log of norm_sf, usable far into the right tail without underflow.
double log_norm_sf(double x);

// Inverse of norm_sf on (0,1).  Safeguarded Newton; the returned x satisfies
// |norm_sf(x) - p| at the rounding level of norm_sf itself.
double norm_sf_inv(double p);

// Complementary error function for complex argument.
cdouble erfc_c(cdouble z);

// Analytic continuation of norm_sf:  Phibar(z) = erfc(z/sqrt(2))/2.
cdouble norm_sf_c(cdouble z);

}  // namespace isomlab
