#include <doctest.h>

#include <cmath>

#include "credal/interval_fusion.hpp"
#include "credal/oracle.hpp"
#include "credal/point_fusion.hpp"
#include "test_support.hpp"

using namespace credal;
using credal::testing::random_interval_distribution;
using credal::testing::random_likelihoods;
using credal::testing::unit;

namespace {

const IntervalDistribution kMachinePrior{{0.85, 0.05}, {0.95, 0.15}};
const LikelihoodMatrix kMachineLik{{{{0.05, 0.15}, {0.55, 0.65}},
                                    {{0.25, 0.35}, {0.55, 0.65}},
                                    {{0.65, 0.75}, {0.15, 0.25}}}};

const std::vector<IntervalDistribution> kSensorVotes{{{0.40, 0.50}, {0.50, 0.60}},
                                                     {{0.55, 0.35}, {0.65, 0.45}},
                                                     {{0.05, 0.85}, {0.15, 0.95}}};

IntervalDistribution degenerate(const PointDistribution& p) {
  return IntervalDistribution{p.probs, p.probs};
}

}  // namespace

TEST_CASE("context-specific interval fusion reproduces the worked example") {
  IntervalFusionResult r = fuse_context_specific_interval(kMachinePrior, kMachineLik);
  CHECK(r.posterior.lower[0] == doctest::Approx(0.3036).epsilon(1e-3));
  CHECK(r.posterior.upper[0] == doctest::Approx(0.9428).epsilon(1e-3));
  CHECK(r.posterior.lower[1] == doctest::Approx(0.0572).epsilon(1e-3));
  CHECK(r.posterior.upper[1] == doctest::Approx(0.6964).epsilon(1e-3));
  CHECK(validate_interval_distribution(r.posterior).ok);
}

TEST_CASE("context-specific fusion on degenerate intervals equals point fusion") {
  IntervalDistribution prior{{0.9, 0.1}, {0.9, 0.1}};
  LikelihoodMatrix lik{{{{0.1, 0.1}, {0.6, 0.6}},
                        {{0.3, 0.3}, {0.6, 0.6}},
                        {{0.7, 0.7}, {0.2, 0.2}}}};
  IntervalFusionResult r = fuse_context_specific_interval(prior, lik);
  CHECK(r.posterior.lower[0] == doctest::Approx(0.7241).epsilon(1e-3));
  CHECK(r.posterior.upper[0] == doctest::Approx(0.7241).epsilon(1e-3));
  CHECK(r.posterior.lower[1] == doctest::Approx(0.2759).epsilon(1e-3));
}

TEST_CASE("context-specific bounds match a dense prior grid at M = 2, N = 1") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    IntervalDistribution prior = random_interval_distribution(rng, 2, 0.02);
    LikelihoodMatrix lik = random_likelihoods(rng, 1, 2);
    IntervalFusionResult r = fuse_context_specific_interval(prior, lik);

    double lo = 1.0, hi = 0.0;
    for (int gp = 0; gp <= 100; ++gp) {  // prior grid, step 0.01
      double p1 = gp / 100.0;
      if (p1 < prior.lower[0] - 1e-12 || p1 > prior.upper[0] + 1e-12) continue;
      for (double l1 : {lik.rows[0][0].lo, lik.rows[0][0].hi})
        for (double l2 : {lik.rows[0][1].lo, lik.rows[0][1].hi}) {
          double den = p1 * l1 + (1.0 - p1) * l2;
          if (den <= 0.0) continue;
          lo = std::min(lo, p1 * l1 / den);
          hi = std::max(hi, p1 * l1 / den);
        }
    }
    // the grid is a member subset, so it cannot beat the bounds; at step
    // 0.01 it lands within grid resolution of them
    CHECK(r.posterior.lower[0] <= lo + 1e-9);
    CHECK(r.posterior.upper[0] >= hi - 1e-9);
    CHECK(std::abs(r.posterior.lower[0] - lo) <= 0.05);
    CHECK(std::abs(r.posterior.upper[0] - hi) <= 0.05);
  }
}

TEST_CASE("general approach #1") {
  SUBCASE("degenerate point inputs reduce to point fusion") {
    std::vector<IntervalDistribution> inputs{degenerate({{0.45, 0.55}}),
                                             degenerate({{0.6, 0.4}}),
                                             degenerate({{0.1, 0.9}})};
    IntervalFusionResult r = fuse_general_interval_a1(inputs);
    CHECK(r.posterior.lower[0] == doctest::Approx(0.12).epsilon(1e-9));
    CHECK(r.posterior.upper[0] == doctest::Approx(0.12).epsilon(1e-9));
    CHECK(r.posterior.lower[1] == doctest::Approx(0.88).epsilon(1e-9));
  }
  SUBCASE("at least as tight as approach #2 on the sensor votes") {
    IntervalFusionResult a1 = fuse_general_interval_a1(kSensorVotes);
    IntervalFusionResult a2 = fuse_general_interval_a2(kSensorVotes);
    for (int j = 0; j < 2; ++j) {
      CHECK(a1.posterior.lower[j] >= a2.posterior.lower[j] - 1e-9);
      CHECK(a1.posterior.upper[j] <= a2.posterior.upper[j] + 1e-9);
    }
    CHECK(a1.posterior.lower[0] >= 0.0411 - 1e-4);
    CHECK(a1.posterior.upper[0] <= 0.2468 + 1e-4);
  }
  SUBCASE("random instances equal the oracle corner sweep") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 25; ++t) {
      int m = 2 + t % 2;
      std::vector<IntervalDistribution> inputs;
      for (int i = 0; i < 2; ++i) inputs.push_back(random_interval_distribution(rng, m));
      IntervalFusionResult a1 = fuse_general_interval_a1(inputs);
      OracleBounds oracle = oracle_interval_general_bounds(inputs);
      for (int j = 0; j < m; ++j) {
        CHECK(credal::testing::close(a1.posterior.lower[j], oracle.lower[j], 1e-9));
        CHECK(credal::testing::close(a1.posterior.upper[j], oracle.upper[j], 1e-9));
      }
    }
  }
  SUBCASE("pairwise folding stays containment-safe but may be looser") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 10; ++t) {
      std::vector<IntervalDistribution> inputs;
      for (int i = 0; i < 3; ++i) inputs.push_back(random_interval_distribution(rng, 2));
      GeneralFusionOptions pairwise;
      pairwise.pairwise = true;
      IntervalFusionResult seq = fuse_general_interval_a1(inputs, pairwise);
      IntervalFusionResult sim = fuse_general_interval_a1(inputs);
      for (int j = 0; j < 2; ++j) {
        CHECK(seq.posterior.lower[j] <= sim.posterior.lower[j] + 1e-9);
        CHECK(seq.posterior.upper[j] >= sim.posterior.upper[j] - 1e-9);
      }
    }
  }
}

TEST_CASE("general approach #2") {
  SUBCASE("worked sensor-vote example") {
    IntervalFusionResult r = fuse_general_interval_a2(kSensorVotes);
    CHECK(r.posterior.lower[0] == doctest::Approx(0.0411).epsilon(1e-3));
    CHECK(r.posterior.upper[0] == doctest::Approx(0.2468).epsilon(1e-3));
    CHECK(r.posterior.lower[1] == doctest::Approx(0.7532).epsilon(1e-3));
    CHECK(r.posterior.upper[1] == doctest::Approx(0.9589).epsilon(1e-3));
  }
  SUBCASE("degenerate point inputs reduce to point fusion") {
    std::vector<IntervalDistribution> inputs{degenerate({{0.45, 0.55}}),
                                             degenerate({{0.6, 0.4}}),
                                             degenerate({{0.1, 0.9}})};
    IntervalFusionResult r = fuse_general_interval_a2(inputs);
    CHECK(r.posterior.lower[0] == doctest::Approx(0.12).epsilon(1e-9));
    CHECK(r.posterior.upper[0] == doctest::Approx(0.12).epsilon(1e-9));
  }
  SUBCASE("identical degenerate inputs are a fixed point") {
    std::vector<IntervalDistribution> inputs{degenerate({{0.5, 0.5}}),
                                             degenerate({{0.5, 0.5}})};
    IntervalFusionResult r = fuse_general_interval_a2(inputs);
    CHECK(r.posterior.lower[0] == doctest::Approx(0.5));
    CHECK(r.posterior.upper[0] == doctest::Approx(0.5));
  }
  SUBCASE("total conflict is an error") {
    std::vector<IntervalDistribution> inputs{degenerate({{1.0, 0.0}}),
                                             degenerate({{0.0, 1.0}})};
    CHECK_THROWS_AS(fuse_general_interval_a2(inputs), conflict_error);
    CHECK_THROWS_AS(fuse_general_interval_a1(inputs), conflict_error);
  }
}

TEST_CASE("containment: interval ops never exclude a fused member point") {
  std::mt19937_64 rng(67);
  std::uint64_t violations = 0;
  for (int t = 0; t < 12; ++t) {
    int m = 2 + t % 3;  // up to M = 4
    int n = 1 + t % 3;
    IntervalDistribution prior = random_interval_distribution(rng, m, 0.0);
    LikelihoodMatrix lik = random_likelihoods(rng, n, m, 0.01);
    auto ctx = fuse_context_specific_interval(prior, lik);
    violations +=
        check_containment_interval_context(prior, lik, ctx.posterior, 500, 1000 + t).violations;

    std::vector<IntervalDistribution> inputs;
    for (int i = 0; i < 2 + t % 2; ++i)
      inputs.push_back(random_interval_distribution(rng, m, 0.0));
    violations += check_containment_interval_general(
                      inputs, fuse_general_interval_a1(inputs).posterior, 500, 2000 + t)
                      .violations;
    violations += check_containment_interval_general(
                      inputs, fuse_general_interval_a2(inputs).posterior, 500, 3000 + t)
                      .violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("dominance: approach #1 inside approach #2 on random instances") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 40; ++t) {
    int m = 2 + t % 3;
    std::vector<IntervalDistribution> inputs;
    for (int i = 0; i < 2 + t % 2; ++i) inputs.push_back(random_interval_distribution(rng, m));
    IntervalFusionResult a1 = fuse_general_interval_a1(inputs);
    IntervalFusionResult a2 = fuse_general_interval_a2(inputs);
    for (int j = 0; j < m; ++j) {
      CHECK(a1.posterior.lower[j] >= a2.posterior.lower[j] - 1e-9);
      CHECK(a1.posterior.upper[j] <= a2.posterior.upper[j] + 1e-9);
    }
  }
}

TEST_CASE("maximal tightness: context-specific fusion equals the oracle") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 25; ++t) {
    int m = 2 + t % 2;
    int n = 1 + t % 3;
    IntervalDistribution prior = random_interval_distribution(rng, m);
    LikelihoodMatrix lik = random_likelihoods(rng, n, m);
    IntervalFusionResult r = fuse_context_specific_interval(prior, lik);
    OracleBounds oracle = oracle_interval_context_bounds(prior, lik);
    for (int j = 0; j < m; ++j) {
      CHECK(credal::testing::close(r.posterior.lower[j], oracle.lower[j], 1e-9));
      CHECK(credal::testing::close(r.posterior.upper[j], oracle.upper[j], 1e-9));
    }
  }
}

TEST_CASE("sequential context fusion stays inside the containment property") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 6; ++t) {
    IntervalDistribution prior = random_interval_distribution(rng, 2);
    LikelihoodMatrix lik = random_likelihoods(rng, 3, 2);
    auto seq = fuse_sequential_context_interval(prior, lik);
    auto sim = fuse_context_specific_interval(prior, lik);
    // one row is folded per step, so the result may widen but never shrinks
    for (int j = 0; j < 2; ++j) {
      CHECK(seq.posterior.lower[j] <= sim.posterior.lower[j] + 1e-9);
      CHECK(seq.posterior.upper[j] >= sim.posterior.upper[j] - 1e-9);
    }
    CHECK(check_containment_interval_context(prior, lik, seq.posterior, 300, 500 + t)
              .violations == 0);
  }
}

TEST_CASE("sequential approach #2 keeps containment") {
  std::mt19937_64 rng(149);
  for (int t = 0; t < 6; ++t) {
    std::vector<IntervalDistribution> inputs;
    for (int i = 0; i < 3; ++i) inputs.push_back(random_interval_distribution(rng, 2, 0.0));
    auto seq = fuse_sequential_interval_a2(inputs);
    CHECK(check_containment_interval_general(inputs, seq.posterior, 300, 700 + t).violations ==
          0);
  }
}

TEST_CASE("negative tolerance is rejected") {
  CHECK_THROWS_AS(validate_interval_distribution({{0.3, 0.3}, {0.7, 0.7}}, Tolerance{-1.0}),
                  validation_error);
  CHECK_THROWS_AS(fuse_general_interval_a2({{{0.3, 0.3}, {0.7, 0.7}},
                                            {{0.5, 0.5}, {0.5, 0.5}}},
                                           Tolerance{0.0}),
                  validation_error);
}

TEST_CASE("long observation streams survive product underflow") {
  // 600 rows of likelihoods around 0.1 would underflow naive products by
  // hundreds of orders of magnitude; the rescaled ratios must stay sane
  IntervalDistribution prior{{0.4, 0.3}, {0.7, 0.6}};
  LikelihoodMatrix lik;
  for (int i = 0; i < 600; ++i)
    lik.rows.push_back({{0.12, 0.14}, {0.09, 0.11}});
  IntervalFusionResult r = fuse_context_specific_interval(prior, lik);
  CHECK(validate_interval_distribution(r.posterior).ok);
  // outcome 1 strictly dominates every row, so its posterior pins to 1
  CHECK(r.posterior.lower[0] > 0.999);
  CHECK(r.posterior.upper[1] < 0.001);
}
