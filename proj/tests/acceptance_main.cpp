// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance and runtime limit is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "credal/core.hpp"
#include "credal/ds_fusion.hpp"
#include "credal/interval_fusion.hpp"
#include "credal/oracle.hpp"
#include "credal/point_fusion.hpp"
#include "credal/sat_bridge.hpp"
#include "test_support.hpp"

using namespace credal;
using credal::testing::random_interval_distribution;
using credal::testing::random_likelihoods;
using credal::testing::random_mass_function;
using credal::testing::random_point;
using credal::testing::unit;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void close(double got, double want, double tol, const std::string& what) {
    require(std::abs(got - want) <= tol,
            what + " = " + std::to_string(got) + ", want " + std::to_string(want) + " +-" +
                std::to_string(tol));
  }
};

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// shared worked-example inputs
const IntervalDistribution kMachinePriorInterval{{0.85, 0.05}, {0.95, 0.15}};
const LikelihoodMatrix kMachineLik{{{{0.05, 0.15}, {0.55, 0.65}},
                                    {{0.25, 0.35}, {0.55, 0.65}},
                                    {{0.65, 0.75}, {0.15, 0.25}}}};
const std::vector<IntervalDistribution> kVotesInterval{{{0.40, 0.50}, {0.50, 0.60}},
                                                       {{0.55, 0.35}, {0.65, 0.45}},
                                                       {{0.05, 0.85}, {0.15, 0.95}}};
const MassFunction kMachinePriorDs{2, {{0b01, 0.85}, {0b10, 0.05}, {0b11, 0.10}}};
const std::vector<MassFunction> kVotesDs{{2, {{0b01, 0.40}, {0b10, 0.50}, {0b11, 0.10}}},
                                         {2, {{0b01, 0.55}, {0b10, 0.35}, {0b11, 0.10}}},
                                         {2, {{0b01, 0.05}, {0b10, 0.85}, {0b11, 0.10}}}};
const MassFunction kWide{2, {{0b01, 0.1}, {0b10, 0.1}, {0b11, 0.8}}};

void criterion_1(Checker& c, double& elapsed_ms) {
  PointContextInput ctx{{{0.9, 0.1}}, {{0.1, 0.6}, {0.3, 0.6}, {0.7, 0.2}}};
  std::vector<PointDistribution> votes{{{0.45, 0.55}}, {{0.6, 0.4}}, {{0.1, 0.9}}};
  (void)fuse_context_specific_point(ctx);  // warm up
  double t0 = now_ms();
  PointDistribution p = fuse_context_specific_point(ctx);
  PointDistribution g = fuse_general_point(votes);
  elapsed_ms = now_ms() - t0;
  c.close(p.probs[0], 0.7241, 1e-4, "context posterior(1)");
  c.close(p.probs[1], 0.2759, 1e-4, "context posterior(2)");
  c.close(g.probs[0], 0.12, 1e-9, "general posterior(1)");
  c.close(g.probs[1], 0.88, 1e-9, "general posterior(2)");
  c.require(elapsed_ms < 1.0, "runtime " + std::to_string(elapsed_ms) + " ms, limit 1");
}

void criterion_2(Checker& c, double& elapsed_ms) {
  double t0 = now_ms();
  IntervalFusionResult r = fuse_context_specific_interval(kMachinePriorInterval, kMachineLik);
  elapsed_ms = now_ms() - t0;
  c.close(r.posterior.lower[0], 0.3036, 1e-4, "lower(1)");
  c.close(r.posterior.upper[0], 0.9428, 1e-4, "upper(1)");
  c.close(r.posterior.lower[1], 0.0572, 1e-4, "lower(2)");
  c.close(r.posterior.upper[1], 0.6964, 1e-4, "upper(2)");
  c.require(elapsed_ms < 10.0, "runtime " + std::to_string(elapsed_ms) + " ms, limit 10");
}

void criterion_3(Checker& c, double& elapsed_ms) {
  double t0 = now_ms();
  IntervalFusionResult a2 = fuse_general_interval_a2(kVotesInterval);
  IntervalFusionResult a1 = fuse_general_interval_a1(kVotesInterval);
  OracleBounds oracle = oracle_interval_general_bounds(kVotesInterval);
  elapsed_ms = now_ms() - t0;
  c.close(a2.posterior.lower[0], 0.0411, 1e-4, "a2 lower(1)");
  c.close(a2.posterior.upper[0], 0.2468, 1e-4, "a2 upper(1)");
  c.close(a2.posterior.lower[1], 0.7532, 1e-4, "a2 lower(2)");
  c.close(a2.posterior.upper[1], 0.9589, 1e-4, "a2 upper(2)");
  for (int j = 0; j < 2; ++j) {
    c.require(a1.posterior.lower[j] >= a2.posterior.lower[j] - 1e-9, "a1 dominates a2 (lower)");
    c.require(a1.posterior.upper[j] <= a2.posterior.upper[j] + 1e-9, "a1 dominates a2 (upper)");
    c.close(a1.posterior.lower[j], oracle.lower[j], 1e-9, "a1 vs oracle lower");
    c.close(a1.posterior.upper[j], oracle.upper[j], 1e-9, "a1 vs oracle upper");
  }
  c.require(elapsed_ms < 1000.0, "runtime " + std::to_string(elapsed_ms) + " ms, limit 1000");
}

void criterion_4(Checker& c, double&) {
  DsFusionResult r = fuse_context_specific_ds(kMachinePriorDs, kMachineLik);
  c.close(r.posterior.mass(0b01), 0.3036, 1e-4, "mass{1}");
  c.close(r.posterior.mass(0b10), 0.0572, 1e-4, "mass{2}");
  c.close(r.posterior.mass(0b11), 0.6392, 1e-4, "mass{1,2}");
  IntervalFusionResult iv = fuse_context_specific_interval(kMachinePriorInterval, kMachineLik);
  for (int j = 0; j < 2; ++j) {
    c.close(belief_of(r.posterior, singleton_mask(j)), iv.posterior.lower[j], 1e-4,
            "Bel singleton vs interval lower");
    c.close(plausibility_of(r.posterior, singleton_mask(j)), iv.posterior.upper[j], 1e-4,
            "Pl singleton vs interval upper");
  }
}

void criterion_5(Checker& c, double&) {
  DsFusionResult r = fuse_general_ds_a2(kVotesDs);
  c.close(r.posterior.mass(0b01), 0.0411, 1e-4, "mass{1}");
  c.close(r.posterior.mass(0b10), 0.7532, 1e-4, "mass{2}");
  c.close(r.posterior.mass(0b11), 0.2057, 1e-4, "mass{1,2}");
}

void criterion_6(Checker& c, double&) {
  MassFunction combined = dempster_combine({kWide, kWide});
  c.close(combined.mass(0b01), 0.1735, 1e-4, "mass{1}");
  c.close(combined.mass(0b10), 0.1735, 1e-4, "mass{2}");
  c.close(combined.mass(0b11), 0.6531, 1e-4, "mass{1,2}");

  ContainmentViolationReport rep =
      containment_violation_report({kWide, kWide}, {{{0.1, 0.9}}, {{0.1, 0.9}}});
  c.close(rep.fused_point.probs[0], 0.0122, 1e-4, "fused member point(1)");
  c.close(rep.fused_point.probs[1], 0.9878, 1e-4, "fused member point(2)");
  c.require(rep.violation, "fused member point must NOT be contained under Dempster's rule");

  DsFusionResult a2 = fuse_general_ds_a2({kWide, kWide});
  c.require(contains_point(a2.posterior, rep.fused_point),
            "approach #2 must contain the fused member point");
}

void criterion_7(Checker& c, double& elapsed_ms) {
  const Tolerance tol{1e-9};
  const std::uint64_t trials_per_instance = 50;
  const int instances = 10;  // 500 trials per op
  double t0 = now_ms();
  std::uint64_t violations = 0;

  std::mt19937_64 rng(20260809);
  for (int k = 0; k < instances; ++k) {
    int m = 2 + k % 2;  // M <= 3
    int n = 1 + k % 3;  // N <= 3
    IntervalDistribution prior = random_interval_distribution(rng, m, 0.0);
    LikelihoodMatrix lik = random_likelihoods(rng, n, m, 0.01);
    violations += check_containment_interval_context(
                      prior, lik, fuse_context_specific_interval(prior, lik, tol).posterior,
                      trials_per_instance, 100 + k, tol)
                      .violations;

    MassFunction ds_prior = random_mass_function(rng, m);
    violations += check_containment_ds_context(
                      ds_prior, lik, fuse_context_specific_ds(ds_prior, lik, tol).posterior,
                      trials_per_instance, 200 + k, tol)
                      .violations;

    int ng = 2 + k % 2;  // N <= 3 inputs
    std::vector<IntervalDistribution> iv;
    std::vector<MassFunction> dv;
    for (int i = 0; i < ng; ++i) {
      iv.push_back(random_interval_distribution(rng, m, 0.0));
      dv.push_back(random_mass_function(rng, m));
    }
    violations += check_containment_interval_general(
                      iv, fuse_general_interval_a1(iv, {false, {}, tol}).posterior,
                      trials_per_instance, 300 + k, tol)
                      .violations;
    violations += check_containment_interval_general(
                      iv, fuse_general_interval_a2(iv, tol).posterior, trials_per_instance,
                      400 + k, tol)
                      .violations;
    violations += check_containment_ds_general(
                      dv, fuse_general_ds_a1(dv, {false, {}, tol}).posterior,
                      trials_per_instance, 500 + k, tol)
                      .violations;
    violations += check_containment_ds_general(dv, fuse_general_ds_a2(dv, tol).posterior,
                                               trials_per_instance, 600 + k, tol)
                      .violations;
  }
  elapsed_ms = now_ms() - t0;
  c.require(violations == 0, std::to_string(violations) + " containment violations");
  c.require(elapsed_ms < 60'000.0, "runtime " + std::to_string(elapsed_ms) + " ms, limit 60000");
}

void criterion_8(Checker& c, double& elapsed_ms) {
  double t0 = now_ms();
  std::mt19937_64 rng(424243);
  double worst = 0.0;

  for (int k = 0; k < 100; ++k) {  // context instances, interval and DS
    int m = 2 + k % 2;
    int n = 1 + k % 3;
    IntervalDistribution prior = random_interval_distribution(rng, m);
    LikelihoodMatrix lik = random_likelihoods(rng, n, m);
    IntervalFusionResult alg = fuse_context_specific_interval(prior, lik);
    OracleBounds oracle = oracle_interval_context_bounds(prior, lik);
    for (int j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(alg.posterior.lower[j] - oracle.lower[j]));
      worst = std::max(worst, std::abs(alg.posterior.upper[j] - oracle.upper[j]));
    }

    MassFunction ds_prior = random_mass_function(rng, m);
    DsFusionResult ds_alg = fuse_context_specific_ds(ds_prior, lik);
    OracleBounds ds_oracle = oracle_ds_context_bounds(ds_prior, lik);
    for (SubsetMask s = 1; s <= full_mask(m); ++s) {
      worst = std::max(worst, std::abs(ds_alg.belief[s] - ds_oracle.lower[s]));
      worst = std::max(worst, std::abs(ds_alg.plausibility[s] - ds_oracle.upper[s]));
    }
  }

  for (int k = 0; k < 100; ++k) {  // general instances, interval a1 and DS a1
    int m = 2 + k % 2;
    int n = 2 + k % 2;
    std::vector<IntervalDistribution> iv;
    std::vector<MassFunction> dv;
    for (int i = 0; i < n; ++i) {
      iv.push_back(random_interval_distribution(rng, m));
      dv.push_back(random_mass_function(rng, m));
    }
    IntervalFusionResult a1 = fuse_general_interval_a1(iv);
    OracleBounds oracle = oracle_interval_general_bounds(iv);
    for (int j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(a1.posterior.lower[j] - oracle.lower[j]));
      worst = std::max(worst, std::abs(a1.posterior.upper[j] - oracle.upper[j]));
    }
    DsFusionResult da1 = fuse_general_ds_a1(dv);
    OracleBounds ds_oracle = oracle_ds_general_bounds(dv);
    for (SubsetMask s = 1; s <= full_mask(m); ++s) {
      worst = std::max(worst, std::abs(da1.belief[s] - ds_oracle.lower[s]));
      worst = std::max(worst, std::abs(da1.plausibility[s] - ds_oracle.upper[s]));
    }
  }
  elapsed_ms = now_ms() - t0;
  c.require(worst <= 1e-9,
            "worst |algorithm - oracle| = " + std::to_string(worst) + ", limit 1e-9");
}

void criterion_9(Checker& c, double&) {
  auto choose = [](long long n, long long k) {
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int m : {2, 4, 6, 8}) {
    IntervalDistribution d{std::vector<double>(m, 0.0), std::vector<double>(m, 2.0 / m)};
    std::size_t got = interval_extreme_points(d).size();
    c.require(got == std::size_t(choose(m, m / 2)),
              "M=" + std::to_string(m) + " gave " + std::to_string(got) + " extreme points");
  }
  c.require(choose(20, 10) == 184756, "C(20,10) arithmetic");

  MassFunction uniform{3, {}};
  for (SubsetMask s = 1; s <= 7; ++s) uniform.masses[s] = 1.0 / 7.0;
  std::vector<double> cascade{4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0};
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  int contained = 0;
  do {
    PointDistribution p;
    p.probs.assign(3, 0.0);
    for (int r = 0; r < 3; ++r) p.probs[perm[r]] = cascade[r];
    if (contains_point(uniform, p)) ++contained;
  } while (std::next_permutation(perm, perm + 3));
  c.require(contained == 6, "only " + std::to_string(contained) +
                                " of 6 cascade permutations are contained");
}

void criterion_10(Checker& c, double& elapsed_ms) {
  double t0 = now_ms();
  constexpr auto P = LiteralSlot::positive;
  constexpr auto N = LiteralSlot::negative;
  constexpr auto F = LiteralSlot::absent;
  SatInstance threevar{3, {{P, P, P}, {F, P, N}, {N, N, F}, {N, N, N}}};
  SatDecision d = decide_sat_detailed(threevar);
  c.require(d.satisfiable, "four-clause instance must be satisfiable");
  c.require(d.objective <= 3 + 1e-6, "objective cap");

  std::mt19937_64 rng(77001);
  for (int t = 0; t < 50; ++t) {
    SatInstance s;
    s.variables = 1 + int(unit(rng) * 4);
    int clauses = 1 + int(unit(rng) * 6);
    for (int j = 0; j < clauses; ++j) {
      std::vector<LiteralSlot> clause(s.variables, F);
      for (int i = 0; i < s.variables; ++i) {
        double roll = unit(rng);
        clause[i] = roll < 0.4 ? F : (roll < 0.7 ? P : N);
      }
      s.clauses.push_back(std::move(clause));
    }
    SatDecision got = decide_sat_detailed(s);
    bool expected = brute_force_sat(s);
    c.require(got.satisfiable == expected, "random instance " + std::to_string(t) +
                                               " disagrees with brute force");
    c.require(got.objective <= s.variables + 1e-6,
              "objective exceeds variable count on instance " + std::to_string(t));
  }
  elapsed_ms = now_ms() - t0;
  c.require(elapsed_ms < 30'000.0, "runtime " + std::to_string(elapsed_ms) + " ms, limit 30000");
}

void criterion_11(Checker& c, double& elapsed_ms) {
  double t0 = now_ms();
  std::mt19937_64 rng(5150);
  std::vector<int> sizes{2, 4, 8, 16, 32, 64};
  std::vector<double> per_call(sizes.size(), 0.0);

  for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
    int nm = sizes[idx];
    std::vector<IntervalDistribution> inputs;
    for (int i = 0; i < nm; ++i) inputs.push_back(random_interval_distribution(rng, nm, 0.0));
    // average over enough repetitions for a stable clock reading
    int reps = std::max(4, int(200000 / (nm * nm)));
    double best = 1e300;
    for (int attempt = 0; attempt < 3; ++attempt) {
      double s0 = now_ms();
      for (int r = 0; r < reps; ++r) (void)fuse_general_interval_a2(inputs);
      best = std::min(best, (now_ms() - s0) / reps);
    }
    per_call[idx] = best;
  }

  // monotone within slack, and per-unit cost bounded by a loose x3 ratio fit
  for (std::size_t idx = 1; idx < sizes.size(); ++idx)
    c.require(per_call[idx] >= per_call[idx - 1] / 3.0,
              "time collapsed between sizes " + std::to_string(sizes[idx - 1]) + " and " +
                  std::to_string(sizes[idx]));
  double unit_large = per_call.back() / (64.0 * 64.0);
  double unit_mid = per_call[3] / (16.0 * 16.0);
  c.require(unit_large <= 3.0 * unit_mid,
            "per-cell cost grows faster than linear: unit(64)/unit(16) = " +
                std::to_string(unit_large / unit_mid) + ", limit 3");
  elapsed_ms = now_ms() - t0;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Checker&, double&)> body;
  };
  std::vector<Entry> criteria{
      {1, "point fusion worked examples", criterion_1},
      {2, "interval context-specific worked example", criterion_2},
      {3, "interval general: approach #2 example, approach #1 dominance and oracle match",
       criterion_3},
      {4, "DS context-specific example agrees with the interval bounds", criterion_4},
      {5, "DS general approach #2 worked example", criterion_5},
      {6, "Dempster's rule example and the containment counterexample", criterion_6},
      {7, "containment suite: 500 randomized trials per fusion op", criterion_7},
      {8, "maximal tightness: 100 random instances per algorithm vs oracle", criterion_8},
      {9, "extreme-point counts and the uniform-mass cascade permutations", criterion_9},
      {10, "SAT bridge: worked instance, 50 random agreements, objective cap", criterion_10},
      {11, "approach #2 runtime scales about linearly in N*M", criterion_11},
  };

  int failures = 0;
  for (auto& entry : criteria) {
    Checker checker;
    double elapsed = 0.0;
    try {
      entry.body(checker, elapsed);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%2d] %s  %s (%.2f ms)\n", entry.id, checker.ok ? "PASS" : "FAIL", entry.name,
                elapsed);
    if (!checker.ok) {
      std::printf("     %s\n", checker.detail.c_str());
      ++failures;
    }
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
