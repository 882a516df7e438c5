#include <doctest.h>

#include "isomlab/fell.hpp"
#include "test_support.hpp"

using namespace isomlab;
using namespace isomlab::fell;

namespace {

FellPoint random_point(int d, std::mt19937_64& rng) {
  static const double lambda_pool[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
  std::set<int> a;
  std::map<int, double> lambda;
  for (int i = 0; i < d; ++i) {
    if (rng() % 2)
      a.insert(i);
    else
      lambda[i] = lambda_pool[rng() % 5];
  }
  return FellPoint(d, std::move(a), std::move(lambda));
}

void replay_witness(const FellPoint& p, const FellPoint& q, const Witness& w) {
  if (w.kind == Witness::Kind::PhaseGap) {
    const double lam = p.lambda.at(w.direction);
    const double mu = q.lambda.at(w.direction);
    const double gap = std::abs(std::exp(cdouble(0.0, lam * w.t)) -
                                std::exp(cdouble(0.0, mu * w.t)));
    CHECK(gap >= 0.5);
    CHECK(std::abs(gap - w.achieved) <= 1e-12);
    return;
  }
  const FellPoint& side = w.side == "P" ? p : q;
  const ModelRep model(side);
  const auto xi = model.default_unit_vector();
  const double norm_after = expspan::norm(
      model.apply_adjoint(unit_direction(side.d, w.direction, w.t), xi));
  CHECK(norm_after < 0.5);
  CHECK(std::abs(norm_after - w.achieved) <= 1e-12);
}

}  // namespace

TEST_CASE("model representation degenerate cases") {
  std::mt19937_64 rng(101);

  // A empty: a pure character on scalars.
  const ModelRep character(FellPoint(2, {}, {{0, 1.5}, {1, -0.5}}));
  const auto one = expspan::make_term(0, 1.0, {}, {});
  const auto rotated = character.apply({2.0, 1.0}, one);
  REQUIRE(rotated.terms.size() == 1);
  CHECK(std::abs(rotated.terms[0].coeff -
                 std::exp(cdouble(0.0, 1.5 * 2.0 - 0.5))) <= 1e-15);
  CHECK(character.inner(one, one).real() == doctest::Approx(1.0));

  // A full: the plain shift on the exponential span.
  const ModelRep full(FellPoint(2, {0, 1}, {}));
  const auto v = testsupport::random_expvector(2, 3, rng);
  const auto t = testsupport::random_nonneg(2, rng);
  CHECK(expspan::norm(expspan::sub(full.apply(t, v),
                                   expspan::apply_shift(t, v))) == 0.0);

  // Isometry in general.
  const ModelRep mixed(FellPoint(3, {0, 2}, {{1, 0.8}}));
  const auto u = testsupport::random_expvector(2, 3, rng);
  const auto s = testsupport::random_nonneg(3, rng);
  CHECK(expspan::norm(mixed.apply(s, u)) ==
        doctest::Approx(expspan::norm(u)).epsilon(1e-12));
}

TEST_CASE("separation witness: shift against character in one dimension") {
  const FellPoint p(1, {0}, {});
  const FellPoint q(1, {}, {{0, 0.0}});
  const auto f1 = expspan::unit_exponential(
      expspan::HalfPlanePoint({cdouble(1.0, 0.0)}));
  const auto w = separation_witness(p, q, f1);
  REQUIRE(w.has_value());
  CHECK(w->kind == Witness::Kind::PureDecay);
  CHECK(w->side == "P");
  CHECK(w->t == doctest::Approx(0.71).epsilon(0.03));  // log 2 plus margin
  CHECK(w->achieved == doctest::Approx(std::exp(-w->t)).epsilon(1e-12));
  CHECK(w->achieved < 0.5);
}

TEST_CASE("separation witness: swapped roles and phase gaps") {
  // Q shifts where P does not: the witness lives on Q's side.
  const FellPoint p(1, {}, {{0, 1.0}});
  const FellPoint q(1, {0}, {});
  const auto w = separation_witness(p, q);
  REQUIRE(w.has_value());
  CHECK(w->side == "Q");
  CHECK(w->achieved < 0.5);

  const FellPoint pp(1, {}, {{0, 0.0}});
  const FellPoint qq(1, {}, {{0, M_PI}});
  const auto wp = separation_witness(pp, qq);
  REQUIRE(wp.has_value());
  CHECK(wp->kind == Witness::Kind::PhaseGap);
  CHECK(wp->t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wp->achieved == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_FALSE(separation_witness(pp, pp).has_value());
}

TEST_CASE("every distinct random pair separates with a replayable witness") {
  std::mt19937_64 rng(103);
  int found = 0;
  while (found < 30) {
    const int d = 1 + int(rng() % 3);
    const FellPoint p = random_point(d, rng);
    const FellPoint q = random_point(d, rng);
    if (p == q) continue;
    ++found;
    const auto w = separation_witness(p, q);
    REQUIRE(w.has_value());
    replay_witness(p, q, *w);
  }
}

TEST_CASE("closure membership matches the stated combinatorics") {
  const FellPoint big(2, {0, 1}, {});
  const FellPoint small(2, {0}, {{1, 5.0}});
  CHECK(closure_member(big, small));
  CHECK(closure_member(big, big));
  CHECK_FALSE(closure_member(small, big));

  const FellPoint char0(1, {}, {{0, 0.0}});
  const FellPoint shift1(1, {0}, {});
  CHECK_FALSE(closure_member(char0, shift1));
  CHECK(closure_member(shift1, char0));  // the shift class is dense in d=1
}

TEST_CASE("closure relation is a partial order on random samples") {
  std::mt19937_64 rng(107);
  std::vector<FellPoint> pool;
  for (int k = 0; k < 100; ++k) pool.push_back(random_point(2, rng));

  for (const auto& p : pool) CHECK(closure_member(p, p));
  for (int k = 0; k < 400; ++k) {
    const auto& p = pool[rng() % pool.size()];
    const auto& q = pool[rng() % pool.size()];
    const auto& r = pool[rng() % pool.size()];
    if (closure_member(p, q) && closure_member(q, r))
      CHECK(closure_member(p, r));
    if (closure_member(p, q) && closure_member(q, p)) CHECK(p == q);
  }
}

TEST_CASE("density certificate meets the announced bounds") {
  const auto cert = density_certificate(3.0, 0.1, 1.0, 1000);
  CHECK(cert.status == CertStatus::Pass);
  CHECK(cert.delta <= 5.013e-3);
  CHECK(cert.max_deviation < 0.1);
  CHECK(cert.max_formula_error <= 1e-12);

  // Endpoint identity: deviation^2 at t = a equals 2(1 - e^{-delta a}).
  const auto g = cert.g;
  const cdouble phase = std::exp(cdouble(0.0, 3.0 * 1.0));
  const auto diff = expspan::sub(expspan::scale(phase, g),
                                 expspan::apply_shift({1.0}, g));
  const double dev2 = expspan::inner(diff, diff).real();
  CHECK(std::abs(dev2 - 2.0 * (1.0 - std::exp(-cert.delta))) <= 1e-12);

  // t = 0 is exact.
  const auto zero_diff = expspan::sub(g, expspan::apply_shift({0.0}, g));
  CHECK(expspan::norm(zero_diff) == 0.0);
}

TEST_CASE("density certificate rejects vacuous epsilon") {
  CHECK_THROWS_AS(density_certificate(1.0, std::sqrt(2.0), 1.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(density_certificate(1.0, 1.5, 1.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(density_certificate(1.0, 0.1, -1.0, 10),
                  std::invalid_argument);
}
