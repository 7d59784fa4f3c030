#include "credal/ds_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "credal/point_fusion.hpp"

namespace credal {

namespace {

void check_ds_inputs(const std::vector<MassFunction>& inputs, Tolerance tol) {
  if (inputs.size() < 2) throw validation_error("general fusion needs at least 2 models");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    require_valid(validate_mass_function(inputs[i], tol), "input model " + std::to_string(i + 1));
    if (inputs[i].outcomes() != inputs[0].outcomes())
      throw validation_error("input models cover different outcome counts");
  }
}

void check_lattice_guard(int outcomes, const SolverGuard& guard, const char* what) {
  double cost = std::ldexp(1.0, 2 * outcomes);  // 4^M
  if (cost > static_cast<double>(guard.max_corners))
    throw guard_error(std::string(what) + " needs ~" + std::to_string(cost) +
                      " subset-lattice steps, above the guard of " +
                      std::to_string(guard.max_corners));
}

DsFusionResult finish_from_belief(std::vector<double> bel, int outcomes, Tolerance tol,
                                  std::vector<std::string> warnings) {
  SubsetMask full = full_mask(outcomes);
  std::vector<double> pl(bel.size(), 0.0);
  for (SubsetMask s = 1; s <= full; ++s) pl[s] = 1.0 - bel[full & ~s];
  DsFusionResult out;
  out.posterior = mass_from_belief(bel, outcomes, tol);
  out.belief = std::move(bel);
  out.plausibility = std::move(pl);
  out.warnings = std::move(warnings);
  return out;
}

// Mass routing rule for one subset of interest. Returns the posterior
// probability of the subset at the routed corner, or the containment-safe
// fallback when the denominator vanishes.
double routed_ratio(const MassFunction& prior, const std::vector<double>& lprod,
                    const std::vector<double>& uprod, SubsetMask target, bool upper_branch,
                    bool* den_zero = nullptr) {
  int m = prior.outcomes();
  std::vector<double> p(m, 0.0);
  std::vector<double> c(m);
  for (int j = 0; j < m; ++j) {
    bool inside = (target >> j) & 1;
    if (upper_branch)
      c[j] = inside ? uprod[j] : lprod[j];
    else
      c[j] = inside ? lprod[j] : uprod[j];
  }

  auto pick_extreme = [&](SubsetMask from, bool want_max) {
    int best = -1;
    for (SubsetMask bits = from; bits != 0; bits &= bits - 1) {
      int j = std::countr_zero(bits);
      if (best < 0 || (want_max ? c[j] > c[best] : c[j] < c[best])) best = j;
    }
    return best;
  };

  for (const auto& [subset, mass] : prior.masses) {
    if (mass <= 0.0) continue;
    int j;
    if ((subset & ~target) == 0) {
      j = pick_extreme(subset, upper_branch);  // inside: minimize (maximize) weight
    } else if ((subset & target) == 0) {
      j = pick_extreme(subset, !upper_branch);  // disjoint: maximize (minimize) weight
    } else {
      // straddling mass leaves (enters) the subset at the heaviest weight
      SubsetMask side = upper_branch ? (subset & target) : (subset & ~target);
      j = pick_extreme(side, true);
    }
    p[j] += mass;
  }

  double num = 0.0, den = 0.0;
  for (int j = 0; j < m; ++j) {
    den += p[j] * c[j];
    if ((target >> j) & 1) num += p[j] * c[j];
  }
  if (den_zero) *den_zero = den <= 0.0;
  if (den <= 0.0) return upper_branch ? 1.0 : 0.0;
  return num / den;
}

}  // namespace

DsFusionResult fuse_context_specific_ds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                        Tolerance tol, SolverGuard guard) {
  require_valid(validate_mass_function(prior, tol), "prior");
  int m = prior.outcomes();
  require_valid(validate_likelihood_matrix(lik, m, tol), "likelihood matrix");
  check_lattice_guard(m, guard, "context-specific fusion");

  // ratios are scale-invariant: rescale both product vectors together by an
  // exact power of two when a long observation stream drives them toward
  // the underflow range
  std::vector<double> lprod(m, 1.0), uprod(m, 1.0);
  for (const auto& row : lik.rows) {
    double peak = 0.0;
    for (int j = 0; j < m; ++j) {
      lprod[j] *= row[j].lo;
      uprod[j] *= row[j].hi;
      peak = std::max(peak, uprod[j]);
    }
    if (peak > 0.0 && peak < 0x1.0p-512) {
      for (int j = 0; j < m; ++j) {
        lprod[j] = std::ldexp(lprod[j], 512);
        uprod[j] = std::ldexp(uprod[j], 512);
      }
    }
  }

  SubsetMask full = full_mask(m);
  // the most favorable configuration overall; zero here means no member
  // assigns the observations positive probability
  bool no_support = false;
  routed_ratio(prior, lprod, uprod, full, true, &no_support);
  if (no_support) throw conflict_error("no posterior support: observations are impossible");

  std::vector<double> bel(std::size_t{1} << m, 0.0);
  std::vector<double> pl(bel.size(), 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    bel[s] = routed_ratio(prior, lprod, uprod, s, false);
    pl[s] = routed_ratio(prior, lprod, uprod, s, true);
  }
  bel[full] = 1.0;

  DsFusionResult out = finish_from_belief(std::move(bel), m, tol, {});
  out.plausibility = std::move(pl);
  out.plausibility[full] = 1.0;
  return out;
}

DsFusionResult fuse_sequential_context_ds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                          Tolerance tol, SolverGuard guard) {
  require_valid(validate_mass_function(prior, tol), "prior");
  require_valid(validate_likelihood_matrix(lik, prior.outcomes(), tol), "likelihood matrix");
  DsFusionResult acc;
  acc.posterior = prior;
  for (const auto& row : lik.rows) {
    LikelihoodMatrix single;
    single.rows.push_back(row);
    DsFusionResult step = fuse_context_specific_ds(acc.posterior, single, tol, guard);
    acc.posterior = std::move(step.posterior);
    acc.belief = std::move(step.belief);
    acc.plausibility = std::move(step.plausibility);
  }
  return acc;
}

namespace {

// Exact bounds on Pr(E=1 and H in A) over all mass focusings:
//  - restricted minimum: only mass already inside A may land there
//  - gravitated maximum: every mass intersecting A is pulled inside
double solve_restricted_min(const std::vector<MassFunction>& inputs, SubsetMask domain,
                            const SolverGuard& guard, Tolerance tol) {
  ChoiceInstance inst;
  inst.domain = domain;
  inst.sense = OptimizeSense::minimize;
  inst.weights.resize(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const auto& [subset, mass] : inputs[i].masses)
      if (mass > 0.0 && (subset & ~domain) == 0) inst.weights[i][subset] = mass;
  return solve_choice_problem(inst, guard, tol).value;
}

double solve_gravitated_max(const std::vector<MassFunction>& inputs, SubsetMask domain,
                            const SolverGuard& guard, Tolerance tol) {
  if (domain == 0) return 0.0;
  ChoiceInstance inst;
  inst.domain = domain;
  inst.sense = OptimizeSense::maximize;
  inst.weights.resize(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const auto& [subset, mass] : inputs[i].masses) {
      SubsetMask inside = subset & domain;
      if (mass > 0.0 && inside != 0) inst.weights[i][inside] += mass;
    }
  return solve_choice_problem(inst, guard, tol).value;
}

DsFusionResult general_a1_core(const std::vector<MassFunction>& inputs,
                               const DsGeneralOptions& opts) {
  int m = inputs[0].outcomes();
  check_lattice_guard(m, opts.guard, "general fusion");
  SubsetMask full = full_mask(m);

  std::vector<double> min_restricted(std::size_t{1} << m, 0.0);
  std::vector<double> max_gravitated(std::size_t{1} << m, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    min_restricted[s] = solve_restricted_min(inputs, s, opts.guard, opts.tol);
    max_gravitated[s] = solve_gravitated_max(inputs, s, opts.guard, opts.tol);
  }
  if (max_gravitated[full] <= 0.0)
    throw conflict_error("total conflict: no focusing gives the inputs a common outcome");

  std::vector<double> bel(std::size_t{1} << m, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    double q = min_restricted[s];
    double r = max_gravitated[full & ~s];
    if (q + r > 0.0)
      bel[s] = q / (q + r);
    else
      bel[s] = max_gravitated[s] > 0.0 ? 1.0 : 0.0;
  }
  bel[full] = 1.0;
  return finish_from_belief(std::move(bel), m, opts.tol, {});
}

}  // namespace

DsFusionResult fuse_general_ds_a1(const std::vector<MassFunction>& inputs,
                                  const DsGeneralOptions& opts) {
  check_ds_inputs(inputs, opts.tol);
  if (!opts.pairwise || inputs.size() == 2) return general_a1_core(inputs, opts);
  DsFusionResult acc;
  acc.posterior = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    DsFusionResult step = general_a1_core({acc.posterior, inputs[i]}, opts);
    acc.posterior = std::move(step.posterior);
    acc.belief = std::move(step.belief);
    acc.plausibility = std::move(step.plausibility);
  }
  return acc;
}

DsFusionResult fuse_general_ds_a2(const std::vector<MassFunction>& inputs, Tolerance tol) {
  check_ds_inputs(inputs, tol);
  int m = inputs[0].outcomes();
  SubsetMask full = full_mask(m);
  std::size_t table = std::size_t{1} << m;

  // joint lower bound on agreement inside a subset: product of singleton masses
  std::vector<double> agree(table, 0.0);
  for (int j = 0; j < m; ++j) {
    double prod = 1.0;
    for (const auto& mf : inputs) prod *= mf.mass(singleton_mask(j));
    agree[singleton_mask(j)] = prod;
  }
  subset_sum_transform(agree, m);  // agree[J] = sum over singletons inside J

  // commonality-style product: q[J] = prod_i (mass at or above J)
  std::vector<double> q(table, 1.0);
  for (const auto& mf : inputs) {
    std::vector<double> above(table, 0.0);
    for (const auto& [subset, mass] : mf.masses) above[subset] += mass;
    // superset sums
    for (int b = 0; b < m; ++b)
      for (SubsetMask s = full; s != 0; --s)
        if (!(s & singleton_mask(b))) above[s] += above[s | singleton_mask(b)];
    for (SubsetMask s = 1; s <= full; ++s) q[s] *= above[s];
  }

  // inclusion-exclusion over nonempty subsets of J
  std::vector<double> joint_pl(table, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    double total = 0.0;
    for (SubsetMask sub = s;; sub = (sub - 1) & s) {
      if (sub != 0) total += (subset_size(sub) % 2 == 1 ? 1.0 : -1.0) * q[sub];
      if (sub == 0) break;
    }
    joint_pl[s] = total;
  }

  std::vector<std::string> warnings;
  if (agree[full] <= 0.0)
    warnings.push_back(
        "no outcome carries singleton mass in every input; the posterior degenerates to the "
        "vacuous model");

  std::vector<double> bel(table, 0.0);
  bool any_support = false;
  for (SubsetMask s = 1; s <= full; ++s) {
    double den = agree[s] + joint_pl[full & ~s];  // complement term is 0 for the full set
    if (den > 0.0) {
      bel[s] = agree[s] / den;
      any_support = true;
    }
  }
  if (!any_support)
    throw conflict_error("total conflict: every subset has zero joint support");
  bel[full] = 1.0;

  std::vector<double> pl(table, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    double den = joint_pl[s] + agree[full & ~s];
    pl[s] = den > 0.0 ? joint_pl[s] / den : 1.0 - bel[full & ~s];
  }
  pl[full] = 1.0;

  DsFusionResult out = finish_from_belief(std::move(bel), m, tol, std::move(warnings));
  out.plausibility = std::move(pl);
  return out;
}

DsFusionResult fuse_sequential_ds_a2(const std::vector<MassFunction>& inputs, Tolerance tol) {
  check_ds_inputs(inputs, tol);
  DsFusionResult acc;
  acc.posterior = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    DsFusionResult step = fuse_general_ds_a2({acc.posterior, inputs[i]}, tol);
    acc.warnings.insert(acc.warnings.end(), step.warnings.begin(), step.warnings.end());
    acc.posterior = std::move(step.posterior);
    acc.belief = std::move(step.belief);
    acc.plausibility = std::move(step.plausibility);
  }
  return acc;
}

MassFunction dempster_combine(const std::vector<MassFunction>& inputs, Tolerance tol) {
  check_ds_inputs(inputs, tol);
  MassFunction acc = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    std::map<SubsetMask, double> combined;
    double norm = 0.0;
    for (const auto& [s1, v1] : acc.masses)
      for (const auto& [s2, v2] : inputs[i].masses) {
        SubsetMask meet = s1 & s2;
        double w = v1 * v2;
        if (meet != 0 && w > 0.0) {
          combined[meet] += w;
          norm += w;
        }
      }
    if (norm <= 0.0)
      throw conflict_error("complete conflict: all mass products have empty intersections");
    for (auto& [s, v] : combined) v /= norm;
    acc.masses = std::move(combined);
  }
  return acc;
}

ContainmentViolationReport containment_violation_report(
    const std::vector<MassFunction>& inputs, const std::vector<PointDistribution>& member_points,
    Tolerance tol) {
  if (inputs.size() != member_points.size())
    throw validation_error("need one member point per input model");
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!contains_point(inputs[i], member_points[i], tol))
      throw validation_error("member point " + std::to_string(i + 1) +
                             " is not contained in its model");
  ContainmentViolationReport rep;
  rep.fused_point = fuse_general_point(member_points, tol);
  rep.combined_model = dempster_combine(inputs, tol);
  rep.violation = !contains_point(rep.combined_model, rep.fused_point, tol);
  return rep;
}

}  // namespace credal
