#ifndef CREDAL_ORACLE_HPP
#define CREDAL_ORACLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "credal/core.hpp"

namespace credal {

// Brute-force reference bounds, used to validate the fusion algorithms at
// desk scale. `lower`/`upper` are per outcome for interval oracles and per
// subset mask for Dempster-Shafer oracles.
struct OracleBounds {
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t combos_examined = 0;
  double seconds = 0.0;
};

struct OracleOptions {
  int max_outcomes = 3;
  int max_inputs = 3;
  bool grid_augment = true;   // add simplex grid members next to the vertices
  double grid_step = 0.02;
  Tolerance tol;
};

// Enumerates prior members (polytope vertices, optionally grid-augmented)
// against every likelihood-endpoint combination, fuses pointwise, and takes
// exact per-outcome extremes. Combinations with zero evidence probability
// are not members of the conditional and are skipped.
OracleBounds oracle_interval_context_bounds(const IntervalDistribution& prior,
                                            const LikelihoodMatrix& lik,
                                            const OracleOptions& opts = {});

// Same over all vertex combinations of the input distributions.
OracleBounds oracle_interval_general_bounds(const std::vector<IntervalDistribution>& inputs,
                                            const OracleOptions& opts = {});

// Enumerates every focusing of the prior masses against likelihood
// endpoints; bounds are per subset mask.
OracleBounds oracle_ds_context_bounds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                      const OracleOptions& opts = {});

OracleBounds oracle_ds_general_bounds(const std::vector<MassFunction>& inputs,
                                      const OracleOptions& opts = {});

// ---- member sampling -------------------------------------------------------

// Deterministic for a fixed engine state; the result always satisfies
// contains_point.
PointDistribution sample_member_point(const IntervalDistribution& model, std::mt19937_64& rng);
PointDistribution sample_member_point(const MassFunction& model, std::mt19937_64& rng);
PointDistribution sample_member_point(const IntervalDistribution& model, std::uint64_t seed);
PointDistribution sample_member_point(const MassFunction& model, std::uint64_t seed);

// Uniform likelihood values drawn inside each interval entry.
std::vector<std::vector<double>> sample_likelihood_values(const LikelihoodMatrix& lik,
                                                          std::mt19937_64& rng);

// ---- containment checking --------------------------------------------------

struct ContainmentReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> counterexamples;  // capped, one JSON-ish line each

  bool passed() const { return violations == 0; }
};

ContainmentReport check_containment_interval_context(const IntervalDistribution& prior,
                                                     const LikelihoodMatrix& lik,
                                                     const IntervalDistribution& fused,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     Tolerance tol = {});

ContainmentReport check_containment_interval_general(
    const std::vector<IntervalDistribution>& inputs, const IntervalDistribution& fused,
    std::uint64_t trials, std::uint64_t seed, Tolerance tol = {});

ContainmentReport check_containment_ds_context(const MassFunction& prior,
                                               const LikelihoodMatrix& lik,
                                               const MassFunction& fused, std::uint64_t trials,
                                               std::uint64_t seed, Tolerance tol = {});

ContainmentReport check_containment_ds_general(const std::vector<MassFunction>& inputs,
                                               const MassFunction& fused, std::uint64_t trials,
                                               std::uint64_t seed, Tolerance tol = {});

}  // namespace credal

#endif
