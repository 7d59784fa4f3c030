#ifndef CREDAL_INTERVAL_FUSION_HPP
#define CREDAL_INTERVAL_FUSION_HPP

#include <vector>

#include "credal/core.hpp"
#include "credal/sum_of_products.hpp"

namespace credal {

struct IntervalFusionResult {
  IntervalDistribution posterior;
  bool tightening_changed = false;  // raw computed bounds were not reachable
};

// Greedy corner allocation per outcome: the bound-of-interest sits at its
// extreme, the remaining prior mass is spread over the adversarial outcomes
// in decreasing likelihood-product order. Output is tightened. Maximally
// tight; the posterior contains every pointwise fusion of members.
IntervalFusionResult fuse_context_specific_interval(const IntervalDistribution& prior,
                                                    const LikelihoodMatrix& lik,
                                                    Tolerance tol = {});

// Folds one observation row at a time (possibly looser than simultaneous).
IntervalFusionResult fuse_sequential_context_interval(const IntervalDistribution& prior,
                                                      const LikelihoodMatrix& lik,
                                                      Tolerance tol = {});

struct GeneralFusionOptions {
  bool pairwise = false;  // fold two inputs at a time through the n = 2 solver
  SolverGuard guard;
  Tolerance tol;
};

// Exact bounds per outcome via the corner-state solver: the bound numerator
// is the extreme product for the outcome, the denominator adds the opposing
// optimum over the remaining columns. Maximally tight when not pairwise.
IntervalFusionResult fuse_general_interval_a1(const std::vector<IntervalDistribution>& inputs,
                                              const GeneralFusionOptions& opts = {});

// Closed form over column products and row sums; linear time, never tighter
// than approach #1 but always containment-safe.
IntervalFusionResult fuse_general_interval_a2(const std::vector<IntervalDistribution>& inputs,
                                              Tolerance tol = {});

// Approach #2 folded pairwise.
IntervalFusionResult fuse_sequential_interval_a2(const std::vector<IntervalDistribution>& inputs,
                                                 Tolerance tol = {});

}  // namespace credal

#endif
