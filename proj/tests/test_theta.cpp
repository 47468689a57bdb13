#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "thetaframe/oracle.hpp"
#include "thetaframe/theta.hpp"

using namespace thetaframe;

namespace {

// Independent evaluation of the block maxima: scan every functional for every block.
std::vector<double> brute_maxima(const BlockFrameSpec& frame, const ScalarSequence& c) {
  std::vector<double> out(frame.dimension(), 0.0);
  const auto m = frame.as_matrix();
  for (std::size_t j = 0; j < frame.dimension(); ++j) {
    for (std::size_t i = 0; i < m.functional_count(); ++i) {
      const double entry = m.row(i)[j];
      if (entry != 0.0) out[j] = std::max(out[j], std::abs(c[i] / entry));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("member_Mc examples") {
  const auto g1 = example_g1(3);
  CHECK(member_Mc(g1, {1, 2, 2, 3}, Vector{2, 1, 1}));
  CHECK_FALSE(member_Mc(g1, {1, 2, 2, 3}, Vector{1, 1, 1}));
  CHECK(member_Mc(g1, {}, Vector{0, 0, 0}));
  CHECK(member_Mc(g1, {1, 2, 2, 3}, Vector{2, 1 - 1e-12, 1}, 1e-9));
  CHECK_THROWS_AS(member_Mc(g1, {1, 1, 1, 1, 1}, Vector{1, 1, 1}), std::invalid_argument);
}

TEST_CASE("block_maxima examples and exhaustive cross-check") {
  const auto g1 = example_g1(3);
  const auto bm = block_maxima(g1, {1, 2, 2, 3});
  CHECK(bm.values == std::vector<double>{2, 1, 1});
  CHECK(bm.active == std::vector<std::size_t>{1, 2, 3});
  CHECK(block_maxima(g1, {}).values == std::vector<double>{0, 0, 0});
  CHECK(block_maxima(g1, {3, 3}).active[0] == 0);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto frame = testing::random_block_frame(rng, 5, 15);
    const auto c = testing::sparse_sequence(frame.functional_count(), rng);
    const auto ours = block_maxima(frame, c).values;
    const auto ref = brute_maxima(frame, c);
    for (std::size_t j = 0; j < ours.size(); ++j) CHECK(ours[j] == doctest::Approx(ref[j]).epsilon(1e-15));
  }
}

TEST_CASE("theta_norm examples") {
  const auto g1 = example_g1(3);
  const auto h0 = WeightHierarchy::trivial(3);
  const WeightHierarchy h({{1, 1, 1}, {1, 2, 3}});

  auto r = theta_norm(g1, {1, 2, 2, 3}, h0, 0);
  CHECK(r.value == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK(r.method == NormMethod::closed_form);
  CHECK(member_Mc(g1, {1, 2, 2, 3}, r.witness));

  r = theta_norm(g1, {}, h0, 0);
  CHECK(r.value == 0.0);
  CHECK(r.witness == Vector{0, 0, 0});

  r = theta_norm(g1, {1, 2, 2, 3}, h, 1);
  CHECK(r.value == doctest::Approx(std::sqrt(17.0)).epsilon(1e-12));

  CHECK_THROWS_AS(theta_norm(g1, {1, 1, 1, 1, 1}, h0, 0), std::invalid_argument);
  CHECK_THROWS_AS(theta_norm(g1, {1}, h0, 1), std::out_of_range);
  CHECK_THROWS_AS(theta_norm(Frame(example_g2(3)), {1}, h0, 0, NormMethod::closed_form), std::invalid_argument);

  // The same values by the oracle.
  CHECK(theta_norm(g1, {1, 2, 2, 3}, h0, 0, NormMethod::oracle).value ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-6));
  CHECK(theta_norm(g1, {1, 2, 2, 3}, h, 1, NormMethod::oracle).value ==
        doctest::Approx(std::sqrt(17.0)).epsilon(1e-6));
}

TEST_CASE("canonical vector norms") {
  const auto g1 = example_g1(3);
  const auto h0 = WeightHierarchy::trivial(3);
  CHECK(canonical_vector_norm(g1, 2, h0, 0) == doctest::Approx(0.5));
  CHECK(canonical_vector_norm(g1, 0, h0, 0) == doctest::Approx(1.0));
  const WeightHierarchy h({{1, 1, 1}, {1, 4, 4}});
  CHECK(canonical_vector_norm(g1, 2, h, 1) == doctest::Approx(2.0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t s = 0; s <= 1; ++s) {
      const double direct = canonical_vector_norm(g1, i, h, s);
      CHECK(theta_norm(g1, canonical_vector(i), h, s).value == doctest::Approx(direct).epsilon(1e-12));
      CHECK(theta_norm(g1, canonical_vector(i), h, s, NormMethod::oracle).value ==
            doctest::Approx(direct).epsilon(1e-6));
    }
  }
}

TEST_CASE("tail_norm_profile examples") {
  const auto g1 = example_g1(3);
  const auto profile = tail_norm_profile(g1, {1, 2, 2, 3}, WeightHierarchy::trivial(3), 0);
  REQUIRE(profile.size() == 4);
  const double expected[] = {std::sqrt(6.0), std::sqrt(2.0), 1.0, 0.0};
  const std::size_t ks[] = {0, 2, 3, 4};
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(profile[n].k == ks[n]);
    CHECK(profile[n].value == doctest::Approx(expected[n]).epsilon(1e-12));
  }
  const auto single = tail_norm_profile(build_block_frame({{1, {1}}}), {1}, WeightHierarchy::trivial(1), 0);
  REQUIRE(single.size() == 2);
  CHECK(single[0].value == 1.0);
  CHECK(single[1].value == 0.0);
}

TEST_CASE("theta norm properties on random block frames") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto frame = testing::random_block_frame(rng, 5, 15);
    const auto h = WeightHierarchy::polynomial(frame.dimension(), 3);
    const std::size_t m = frame.functional_count();
    const auto c = testing::sparse_sequence(m, rng);
    const auto d = testing::shrink(c, rng);
    const double lambda = testing::gaussian_vector(1, rng)[0];
    for (std::size_t s = 0; s <= 3; ++s) {
      const auto nc = theta_norm(frame, c, h, s);
      // witness attains the value and lies in M^c
      CHECK(member_Mc(frame, c, nc.witness));
      CHECK(level_norm(h, nc.witness, s) == doctest::Approx(nc.value).epsilon(1e-9));
      // solidity
      CHECK(theta_norm(frame, d, h, s).value <= nc.value * (1 + 1e-12));
      // homogeneity
      CHECK(theta_norm(frame, lambda * c, h, s).value ==
            doctest::Approx(std::abs(lambda) * nc.value).epsilon(1e-12));
      // coordinate bound |c_i| <= ||g_i||* N(c)
      for (std::size_t i = 0; i < m; ++i)
        CHECK(std::abs(c[i]) <= functional_dual_norm(frame, i, h, s) * nc.value * (1 + 1e-12) + 1e-300);
      // Bessel bound 1 with equality for block frames
      const auto f = testing::gaussian_vector(frame.dimension(), rng);
      CHECK(theta_norm(frame, analysis(frame, f), h, s).value ==
            doctest::Approx(level_norm(h, f, s)).epsilon(1e-12));
      // levels are monotone
      if (s > 0) CHECK(theta_norm(frame, c, h, s - 1).value <= nc.value * (1 + 1e-12));
    }
    CHECK((theta_norm(frame, c, h, 0).value == 0.0) == c.is_zero());
  }
}

TEST_CASE("closed form agrees with the oracle on random block frames") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto frame = testing::random_block_frame(rng, 4, 10);
    const auto h = WeightHierarchy::polynomial(frame.dimension(), 2);
    const auto c = testing::sparse_sequence(frame.functional_count(), rng);
    for (std::size_t s = 0; s <= 2; ++s) {
      const double closed = theta_norm(frame, c, h, s, NormMethod::closed_form).value;
      const auto oracle = theta_norm(frame, c, h, s, NormMethod::oracle);
      CHECK(oracle.method == NormMethod::oracle);
      CHECK(std::abs(closed - oracle.value) <= 1e-6 * std::max(1.0, closed));
    }
  }
}
