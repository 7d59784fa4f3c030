#ifndef CREDAL_DS_FUSION_HPP
#define CREDAL_DS_FUSION_HPP

#include <string>
#include <vector>

#include "credal/choice_problem.hpp"
#include "credal/core.hpp"

namespace credal {

// The returned model is defined by the belief bounds alone; plausibilities
// are carried for reporting and always satisfy Pl(J) = 1 - Bel(complement).
struct DsFusionResult {
  MassFunction posterior;
  std::vector<double> belief;        // dense, indexed by subset mask
  std::vector<double> plausibility;  // dense, indexed by subset mask
  std::vector<std::string> warnings;
};

// Per subset, prior masses are routed to single outcomes (inside mass to the
// least favorable member, outside mass to the most favorable opponent,
// straddling mass away from the subset) and the posterior belief is the
// resulting ratio. Masses recovered by Moebius inversion.
DsFusionResult fuse_context_specific_ds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                        Tolerance tol = {}, SolverGuard guard = {});

DsFusionResult fuse_sequential_context_ds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                          Tolerance tol = {}, SolverGuard guard = {});

struct DsGeneralOptions {
  bool pairwise = false;
  SolverGuard guard;
  Tolerance tol;
};

// Exact per-subset bounds via the mass-focusing solver. Maximally tight
// among Dempster-Shafer models when not pairwise.
DsFusionResult fuse_general_ds_a1(const std::vector<MassFunction>& inputs,
                                  const DsGeneralOptions& opts = {});

// Joint-model closed form (independence between inputs is not enforced, so
// bounds are looser than approach #1 but containment-safe). Requires
// singleton masses for a nontrivial posterior; degenerates to the vacuous
// model with a warning otherwise.
DsFusionResult fuse_general_ds_a2(const std::vector<MassFunction>& inputs, Tolerance tol = {});

DsFusionResult fuse_sequential_ds_a2(const std::vector<MassFunction>& inputs, Tolerance tol = {});

// Dempster's rule of combination. Fails the containment property in general;
// kept as the classical baseline. Throws conflict_error when the
// normalization constant vanishes.
MassFunction dempster_combine(const std::vector<MassFunction>& inputs, Tolerance tol = {});

// Reproduces the containment counterexample: fuses member points through
// point fusion, models through Dempster's rule, and reports whether the
// fused point is contained.
struct ContainmentViolationReport {
  PointDistribution fused_point;
  MassFunction combined_model;
  bool violation = false;
};

ContainmentViolationReport containment_violation_report(
    const std::vector<MassFunction>& inputs, const std::vector<PointDistribution>& member_points,
    Tolerance tol = {});

}  // namespace credal

#endif
