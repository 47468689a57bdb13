#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "thetaframe/reconstruction.hpp"
#include "thetaframe/theta.hpp"

using namespace thetaframe;

TEST_CASE("build_dual examples") {
  const auto dual = build_dual(example_g1(3));
  REQUIRE(dual.count() == 4);
  CHECK(dual.vector(0) == Vector{1, 0, 0});
  CHECK(dual.vector(1) == Vector{0, 0, 0});
  CHECK(dual.vector(2) == Vector{0, 0.5, 0});
  CHECK(dual.vector(3)[2] == doctest::Approx(1.0 / 3.0));
  REQUIRE(dual.witnesses().has_value());
  CHECK((*dual.witnesses())[1] == Vector{1, 0, 0});
  CHECK((*dual.witnesses())[2] == Vector{0, 0.5, 0});

  const auto single = build_dual(build_block_frame({{1, {4}}}));
  CHECK(single.vector(0) == Vector{0.25});

  const auto g2 = example_g2_dual(3);
  CHECK(g2.vectors() == std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
}

TEST_CASE("make_dual validates reconstruction") {
  CHECK_NOTHROW(make_dual(example_g2(3), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}}));
  CHECK_NOTHROW(make_dual(example_g2(3), {{0.5, 0, 0}, {0, 1, 0}, {0.5, 0, 0}, {0, 0, 1}}));
  CHECK_THROWS_AS(make_dual(example_g2(3), {{1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_dual(example_g2(3), {{1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("sparse round trip") {
  const auto dual = build_dual(example_g1(4));
  const auto entries = dual.sparse();
  CHECK(entries.size() == 4);
  const auto back = DualFamily::from_sparse(dual.dimension(), dual.count(), entries);
  CHECK(back.vectors() == dual.vectors());
}

TEST_CASE("apply_v and theta_f examples") {
  const auto g1 = example_g1(3);
  const auto dual = build_dual(g1);
  const auto h = WeightHierarchy::trivial(3);
  const auto v = apply_v(dual, canonical_vector(2), h, 0);
  CHECK(v.value == Vector{0, 0.5, 0});

  const WeightHierarchy w({{1, 1, 1}, {1, 2, 3}});
  CHECK(level_norm(w, dual.vector(2), 1) == doctest::Approx(1.0));
  CHECK(level_norm(w, dual.vector(2), 1) == doctest::Approx(canonical_vector_norm(g1, 2, w, 1)));

  const auto syn = apply_v(dual, {1, 2, 2, 3}, h, 0);
  CHECK(syn.value == Vector{1, 1, 1});
  CHECK(syn.partial_norms.size() == 4);
  CHECK(syn.partial_norms[0] == doctest::Approx(1.0));
  CHECK(syn.partial_norms[3] == doctest::Approx(std::sqrt(3.0)));
  CHECK(theta_f_norm(dual, {1, 2, 2, 3}, h, 0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(theta_f_norm(dual, {}, h, 0) == 0.0);
}

TEST_CASE("expansion residual vanishes") {
  const auto h = WeightHierarchy::polynomial(3, 2);
  CHECK(expansion_residual(example_g1(3), build_dual(example_g1(3)), Vector{1, 1, 1}, h, 1) <= 1e-12);
  CHECK(expansion_residual(example_g2(3), example_g2_dual(3), Vector{1, 2, 3}, h, 2) <= 1e-12);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto frame = testing::random_block_frame(rng, 5, 15);
    const auto dual = build_dual(frame);
    const auto hp = WeightHierarchy::polynomial(frame.dimension(), 2);
    const auto f = testing::gaussian_vector(frame.dimension(), rng);
    for (std::size_t s = 0; s <= 2; ++s) CHECK(expansion_residual(frame, dual, f, hp, s) <= 1e-12 * (1 + level_norm(hp, f, s)));
  }
}

TEST_CASE("v_norm_certificate") {
  const auto g1 = example_g1(4);
  const auto h = WeightHierarchy::polynomial(4, 2);
  const auto certs = v_norm_certificate(g1, build_dual(g1), h, 200, 0);
  REQUIRE(certs.size() == 3);
  for (const auto& cert : certs) {
    CHECK(cert.per_index_ok);
    CHECK(cert.bounded_ok);
    CHECK(cert.k_estimate <= 1 + 1e-9);
    CHECK(cert.checks.size() == 5);
    CHECK(cert.checks[0].opens_block);
    CHECK_FALSE(cert.checks[1].opens_block);
    CHECK(cert.checks[1].dual_vector_norm == 0.0);
  }
}

TEST_CASE("witnesses attain the canonical norms on random block frames") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto frame = testing::random_block_frame(rng, 5, 15);
    const auto dual = build_dual(frame);
    const auto h = WeightHierarchy::polynomial(frame.dimension(), 2);
    for (std::size_t i = 0; i < frame.functional_count(); ++i) {
      const auto& wi = (*dual.witnesses())[i];
      CHECK(member_Mc(frame, canonical_vector(i), wi));
      for (std::size_t s = 0; s <= 2; ++s) {
        const double target = canonical_vector_norm(frame, i, h, s);
        CHECK(level_norm(h, wi, s) == doctest::Approx(target).epsilon(1e-12));
        CHECK(level_norm(h, dual.vector(i), s) <= target * (1 + 1e-12));
      }
    }
    // V is bounded by 1 on sampled sequences
    const auto c = testing::gaussian_sequence(frame.functional_count(), rng);
    for (std::size_t s = 0; s <= 2; ++s) {
      const auto syn = apply_v(dual, c, h, s);
      CHECK(level_norm(h, syn.value, s) <= theta_norm(frame, c, h, s).value * (1 + 1e-9));
    }
  }
}
