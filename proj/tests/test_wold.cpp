#include <doctest.h>

#include "isomlab/fell.hpp"
#include "isomlab/wold.hpp"
#include "test_support.hpp"

using namespace isomlab;
using namespace isomlab::wold;

namespace {

discrete::SparseVector random_sparse(int dim, int box, int n_entries,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(0, box);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  discrete::SparseVector v = discrete::zero_vector(dim);
  for (int k = 0; k < n_entries; ++k) {
    MultiIndex n(dim);
    for (int& x : n) x = idx(rng);
    v.entries[n] += cdouble(coeff(rng), coeff(rng));
  }
  discrete::drop_zeros(v);
  return v;
}

expspan::ExpVector model_vector(const fell::ModelRep& rep,
                                std::mt19937_64& rng) {
  const int m = rep.model_dim();
  if (m == 0) return expspan::make_term(0, cdouble(0.8, -0.3), {}, {});
  return testsupport::random_expvector(m, 3, rng);
}

}  // namespace

TEST_CASE("limit projection: pure shift kills the vector, with visible decay") {
  const ShiftRep rep(1);
  const auto f1 = expspan::unit_exponential(
      expspan::HalfPlanePoint({cdouble(1.0, 0.0)}));
  // || S_t S_t^* f_1 || = e^{-t}: the announced decay of the range projections.
  for (double t : {0.5, 1.0, 2.0, 5.0})
    CHECK(expspan::norm(expspan::range_projection({t}, f1)) ==
          doctest::Approx(std::exp(-t)).epsilon(1e-12));

  const auto lim = limit_projection(rep, 0, f1);
  CHECK(lim.status == LimitStatus::ShortCircuit);
  CHECK(expspan::norm(lim.value) == 0.0);

  WoldParams force;
  force.force_iterate = true;
  const auto numeric = limit_projection(rep, 0, f1, force);
  CHECK(numeric.status == LimitStatus::Converged);
  CHECK(expspan::norm(numeric.value) <= 1e-9);
}

TEST_CASE("limit projection: unitary direction is the identity") {
  const DiscreteRep rep(
      discrete::BasisIsometry(1, {discrete::GeneratorRule::phase(0.9)}));
  const auto v = discrete::basis_vector(1, {2});
  const auto lim = limit_projection(rep, 0, v);
  CHECK(lim.status == LimitStatus::ShortCircuit);
  CHECK(discrete::norm(discrete::sub(lim.value, v)) == 0.0);
}

TEST_CASE("limit projection reports NONCONVERGED instead of truncating") {
  // Custom copy of the shift so no declared kind short-circuits; the vector
  // has a 1/n tail, so successive range projections keep moving.
  auto fwd = [](const MultiIndex& n) {
    return discrete::basis_vector(1, {n[0] + 1});
  };
  auto adj = [](const MultiIndex& n) {
    if (n[0] < 1) return discrete::zero_vector(1);
    return discrete::basis_vector(1, {n[0] - 1});
  };
  const DiscreteRep rep(discrete::BasisIsometry(
      1, {discrete::GeneratorRule::custom(fwd, adj)}));
  discrete::SparseVector slow = discrete::zero_vector(1);
  for (int n = 0; n < 4096; ++n) slow.entries[{n}] = 1.0 / (n + 1.0);

  WoldParams params;
  params.horizon = 64.0;
  const auto lim = limit_projection(rep, 0, slow, params);
  CHECK(lim.status == LimitStatus::NonConverged);

  const auto wr = wold_decompose(rep, slow, params);
  CHECK_FALSE(wr.converged);
}

TEST_CASE("wold decomposition of the plain shift and the plain unitary") {
  std::mt19937_64 rng(73);
  const ShiftRep shift(1);
  const auto v = testsupport::random_expvector(1, 3, rng);
  const auto wr = wold_decompose(shift, v);
  REQUIRE(wr.components.size() == 2);
  CHECK(expspan::norm(wr.components[0]) <= 1e-12);  // unitary piece empty
  CHECK(expspan::norm(expspan::sub(wr.components[1], v)) <= 1e-12);
  CHECK(wr.recompose_error <= 1e-10);

  const DiscreteRep unitary(
      discrete::BasisIsometry(1, {discrete::GeneratorRule::phase(2.1)}));
  const auto u = random_sparse(1, 4, 3, rng);
  const auto wu = wold_decompose(unitary, u);
  CHECK(discrete::norm(discrete::sub(wu.components[0], u)) <= 1e-12);
  CHECK(discrete::norm(wu.components[1]) <= 1e-12);
}

TEST_CASE("wold decomposition of the d=2 model S (x) U") {
  std::mt19937_64 rng(79);
  const fell::ModelRep rep(fell::FellPoint(2, {0}, {{1, 1.7}}));
  const auto v = testsupport::random_expvector(1, 3, rng);
  const auto wr = wold_decompose(rep, v);
  REQUIRE(wr.components.size() == 4);
  // alpha = {1} is bitmask 0b01: pure in direction 1, unitary in direction 2.
  CHECK(expspan::norm(expspan::sub(wr.components[1], v)) <= 1e-10);
  for (size_t mask : {size_t(0), size_t(2), size_t(3)})
    CHECK(expspan::norm(wr.components[mask]) <= 1e-10);
  CHECK(wr.recompose_error <= 1e-10);
  CHECK(wr.max_pair_overlap <= 1e-10);
  CHECK(wr.max_class_defect <= 1e-10);
}

TEST_CASE("wold invariants across random mixed models") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 3;
    if (trial % 2 == 0) {
      // Model representation with a random shift set.
      std::set<int> a;
      std::map<int, double> lambda;
      std::uniform_real_distribution<double> lam(-2.0, 2.0);
      for (int i = 0; i < d; ++i) {
        if (rng() % 2)
          a.insert(i);
        else
          lambda[i] = lam(rng);
      }
      const fell::ModelRep rep(fell::FellPoint(d, a, lambda));
      const auto v = model_vector(rep, rng);
      const auto wr = wold_decompose(rep, v);
      CHECK(wr.recompose_error <= 1e-10 * std::max(1.0, expspan::norm(v)));
      CHECK(wr.max_pair_overlap <= 1e-10);
      CHECK(wr.max_class_defect <= 1e-10);
      // All mass sits at the bitmask of the declared shift set.
      size_t expected = 0;
      for (int i : a) expected |= (size_t(1) << i);
      CHECK(expspan::norm(expspan::sub(wr.components[expected], v)) <= 1e-10);
    } else {
      // Discrete mixture of shifts and phases.
      std::vector<discrete::GeneratorRule> gens;
      size_t expected = 0;
      for (int i = 0; i < d; ++i) {
        if (rng() % 2) {
          gens.push_back(discrete::GeneratorRule::shift());
          expected |= (size_t(1) << i);
        } else {
          gens.push_back(discrete::GeneratorRule::phase(0.3 + 0.2 * i));
        }
      }
      const DiscreteRep rep(discrete::BasisIsometry(d, gens));
      const auto v = random_sparse(d, 4, 4, rng);
      const auto wr = wold_decompose(rep, v);
      CHECK(wr.recompose_error <= 1e-10 * std::max(1.0, discrete::norm(v)));
      CHECK(wr.max_pair_overlap <= 1e-10);
      CHECK(discrete::norm(discrete::sub(wr.components[expected], v)) <= 1e-10);
    }
  }
}

TEST_CASE("the pieces reduce the representation") {
  std::mt19937_64 rng(89);
  const fell::ModelRep rep(fell::FellPoint(2, {0}, {{1, -0.9}}));
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = testsupport::random_expvector(1, 3, rng);
    const auto t = testsupport::random_nonneg(2, rng);
    const auto before = wold_decompose(rep, v);
    const auto after = wold_decompose(rep, rep.apply(t, v));
    for (size_t mask = 0; mask < before.components.size(); ++mask) {
      const auto moved = rep.apply(t, before.components[mask]);
      CHECK(expspan::norm(expspan::sub(moved, after.components[mask])) <=
            1e-10 * std::max(1.0, expspan::norm(v)));
    }
  }
}

TEST_CASE("wandering reconstruction is exact for shift tuples") {
  const auto S1 = discrete::BasisIsometry::shifts(1);
  const auto c1 = wandering_reconstruct(S1, discrete::basis_vector(1, {3}), 5);
  CHECK(c1.status == CertStatus::Pass);
  CHECK(c1.achieved == 0.0);

  const auto S2 = discrete::BasisIsometry::shifts(2);
  const auto v2 = discrete::add(discrete::basis_vector(2, {1, 2}),
                                discrete::basis_vector(2, {0, 0}));
  const auto c2 = wandering_reconstruct(S2, v2, 4);
  CHECK(c2.status == CertStatus::Pass);
  CHECK(c2.achieved == 0.0);
  CHECK(c2.extra["expansion_terms"] == 2);

  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_sparse(2, 5, 6, rng);
    const auto cert = wandering_reconstruct(S2, v, 5);
    CHECK(cert.status == CertStatus::Pass);
    CHECK(cert.achieved <= 1e-12);
  }
}

TEST_CASE("wandering reconstruction rejects bad inputs") {
  const auto S1 = discrete::BasisIsometry::shifts(1);
  CHECK_THROWS_AS(
      wandering_reconstruct(S1, discrete::basis_vector(1, {9}), 5),
      std::invalid_argument);
  const discrete::BasisIsometry mixed(
      1, {discrete::GeneratorRule::phase(1.0)});
  CHECK_THROWS_AS(
      wandering_reconstruct(mixed, discrete::basis_vector(1, {0}), 5),
      std::invalid_argument);
}
