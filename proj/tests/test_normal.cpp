#include <doctest.h>

#include "isomlab/normal.hpp"
#include "test_support.hpp"

using namespace isomlab;

TEST_CASE("complementary normal CDF reference values") {
  CHECK(norm_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_sf(1.0) == doctest::Approx(0.15865525393145705141).epsilon(1e-15));
  CHECK(norm_sf(-1.0) == doctest::Approx(0.84134474606854294859).epsilon(1e-15));
  CHECK(norm_sf(3.3) == doctest::Approx(0.00048342414238377720111).epsilon(1e-14));
  CHECK(norm_sf(-std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("quantile inversion hits 1e-14 residuals across the range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    double p = unif(rng);
    if (k % 5 == 0) p = std::pow(10.0, -1.0 - 10.0 * unif(rng));  // deep tail
    if (p <= 0.0 || p >= 1.0) continue;
    const double x = norm_sf_inv(p);
    CHECK(std::abs(norm_sf(x) - p) <= 1e-14 * std::max(p, 1e-3));
  }
  // The quantile the X-sequence construction starts from.
  CHECK(norm_sf_inv(std::exp(-0.125)) ==
        doctest::Approx(-1.1875615473802969298).epsilon(1e-13));
}

TEST_CASE("log_norm_sf agrees with the direct log and survives the far tail") {
  for (double x : {-30.0, -3.0, 0.0, 1.5, 7.0, 25.0})
    CHECK(log_norm_sf(x) == doctest::Approx(std::log(norm_sf(x))).epsilon(1e-13));
  // At x = 40 the direct route underflows; the tail expansion must not.
  CHECK(log_norm_sf(40.0) < -750.0);
  CHECK(std::isfinite(log_norm_sf(40.0)));
}

TEST_CASE("complex erfc matches high-precision references") {
  struct Ref {
    cdouble z, value;
  };
  const Ref refs[] = {
      {{0.5, 0.5}, {0.35738708514517947168, -0.45788139443519221584}},
      {{2.0, -3.0}, {21.829461427614568389, 8.6873182714701631444}},
      {{-1.0, 2.0}, {0.46335643422143496601, 5.0491437034470346695}},
      {{4.0, 1.0}, {-1.5096295250026959371e-8, -3.7940329690890710501e-8}},
      {{0.1, 2.8}, {-270.01864342881623135, -476.9821507559736597}},
      {{-2.5, -0.7}, {2.0005330591707436101, -0.00036596180362486860512}},
  };
  for (const Ref& r : refs) {
    const cdouble got = erfc_c(r.z);
    CHECK(std::abs(got - r.value) <= 1e-12 * std::max(1.0, std::abs(r.value)));
  }
}

TEST_CASE("complex erfc degenerates to the real one on the axis") {
  for (double x : {-3.0, -0.5, 0.0, 0.7, 2.5, 6.0}) {
    const cdouble got = erfc_c(cdouble(x, 0.0));
    CHECK(got.imag() == 0.0);
    CHECK(got.real() == doctest::Approx(std::erfc(x)).epsilon(1e-15));
  }
  // Tiny imaginary parts should stay consistent with the real value.
  for (double x : {-2.0, 0.3, 1.8}) {
    const cdouble got = erfc_c(cdouble(x, 1e-12));
    CHECK(std::abs(got.real() - std::erfc(x)) <= 1e-10);
  }
}
