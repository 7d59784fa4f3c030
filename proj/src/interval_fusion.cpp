#include "credal/interval_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace credal {

namespace {

// Per-outcome products of the likelihood bounds. The posterior ratios are
// invariant to a common factor on all products, so whenever the running peak
// sinks toward the underflow range both vectors are rescaled together by an
// exact power of two; long observation streams stay representable.
void bound_products(const LikelihoodMatrix& lik, std::vector<double>& lprod,
                    std::vector<double>& uprod) {
  int m = lik.outcomes();
  lprod.assign(m, 1.0);
  uprod.assign(m, 1.0);
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
}

void check_same_domain(const std::vector<IntervalDistribution>& inputs, Tolerance tol) {
  if (inputs.size() < 2)
    throw validation_error("general fusion needs at least 2 input distributions");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    require_valid(validate_interval_distribution(inputs[i], tol),
                  "input distribution " + std::to_string(i + 1));
    if (inputs[i].outcomes() != inputs[0].outcomes())
      throw validation_error("input distributions cover different outcome counts");
  }
}

IntervalFusionResult tighten_result(std::vector<double> lo, std::vector<double> hi,
                                    Tolerance tol) {
  for (double& v : lo) v = std::clamp(v, 0.0, 1.0);
  for (double& v : hi) v = std::clamp(v, 0.0, 1.0);
  IntervalDistribution tightened;
  try {
    tightened = tighten_interval_distribution(lo, hi, tol);
  } catch (const validation_error&) {
    throw conflict_error("no posterior support: fused bounds admit no distribution");
  }
  bool changed = false;
  for (int j = 0; j < tightened.outcomes(); ++j)
    if (std::abs(tightened.lower[j] - lo[j]) > tol.eps ||
        std::abs(tightened.upper[j] - hi[j]) > tol.eps)
      changed = true;
  return {std::move(tightened), changed};
}

// One bound of the context-specific posterior. The focus outcome sits at its
// own extreme; every other prior probability starts at its matching bound
// and the slack to reach a total of 1 is absorbed by the outcomes with the
// largest opposing likelihood product first (ties to the smallest index).
double context_bound(const IntervalDistribution& prior, const std::vector<double>& lprod,
                     const std::vector<double>& uprod, int focus, bool upper_branch) {
  int m = prior.outcomes();
  std::vector<double> p = upper_branch ? prior.upper : prior.lower;
  std::vector<double> c(m);
  std::vector<bool> open(m);
  for (int j = 0; j < m; ++j) {
    if (j == focus)
      c[j] = upper_branch ? uprod[j] : lprod[j];
    else
      c[j] = upper_branch ? lprod[j] : uprod[j];
    open[j] = (j != focus);
  }
  double sigma = 0.0;
  for (double v : p) sigma += v;

  while (upper_branch ? sigma > 1.0 + 1e-15 : sigma < 1.0 - 1e-15) {
    int pick = -1;
    for (int j = 0; j < m; ++j)
      if (open[j] && (pick < 0 || c[j] > c[pick])) pick = j;
    if (pick < 0) break;  // validated inputs always close the gap
    double room = prior.upper[pick] - prior.lower[pick];
    double step = std::min(room, std::abs(1.0 - sigma));
    if (upper_branch) {
      p[pick] -= step;
      sigma -= step;
    } else {
      p[pick] += step;
      sigma += step;
    }
    open[pick] = false;
  }

  double den = 0.0;
  for (int j = 0; j < m; ++j) den += p[j] * c[j];
  if (den <= 0.0) return 0.0;  // containment-safe fallback, repaired by tightening
  return p[focus] * c[focus] / den;
}

IntervalFusionResult general_a1_core(const std::vector<IntervalDistribution>& inputs,
                                     const GeneralFusionOptions& opts) {
  int n = static_cast<int>(inputs.size());
  int m = inputs[0].outcomes();

  bool any_support = false;
  for (int j = 0; j < m && !any_support; ++j) {
    double prod = 1.0;
    for (const auto& d : inputs) prod *= d.upper[j];
    any_support = prod > 0.0;
  }
  if (!any_support)
    throw conflict_error("total conflict: every outcome has a zero upper product");

  std::vector<double> lo(m), hi(m);
  SumOfProductsInstance sop;
  sop.lo.assign(n, std::vector<double>(m - 1, 0.0));
  sop.hi.assign(n, std::vector<double>(m - 1, 0.0));
  sop.row_sum.assign(n, 0.0);

  for (int focus = 0; focus < m; ++focus) {
    for (int i = 0; i < n; ++i) {
      int k = 0;
      for (int j = 0; j < m; ++j) {
        if (j == focus) continue;
        sop.lo[i][k] = inputs[i].lower[j];
        sop.hi[i][k] = inputs[i].upper[j];
        ++k;
      }
    }
    // lower bound: numerator minimized, opposition maximized
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
      q *= inputs[i].lower[focus];
      sop.row_sum[i] = 1.0 - inputs[i].lower[focus];
    }
    sop.sense = OptimizeSense::maximize;
    double r = solve_sum_of_products(sop, opts.guard, opts.tol).value;
    if (q + r > 0.0) {
      lo[focus] = q / (q + r);
    } else {
      double qmax = 1.0;
      for (int i = 0; i < n; ++i) qmax *= inputs[i].upper[focus];
      lo[focus] = qmax > 0.0 ? 1.0 : 0.0;  // no opposition reachable at all
    }
    // upper bound: numerator maximized, opposition minimized
    q = 1.0;
    for (int i = 0; i < n; ++i) {
      q *= inputs[i].upper[focus];
      sop.row_sum[i] = 1.0 - inputs[i].upper[focus];
    }
    sop.sense = OptimizeSense::minimize;
    r = solve_sum_of_products(sop, opts.guard, opts.tol).value;
    hi[focus] = (q + r > 0.0) ? q / (q + r) : 0.0;
  }
  return tighten_result(std::move(lo), std::move(hi), opts.tol);
}

}  // namespace

IntervalFusionResult fuse_context_specific_interval(const IntervalDistribution& prior,
                                                    const LikelihoodMatrix& lik, Tolerance tol) {
  require_valid(validate_interval_distribution(prior, tol), "prior");
  require_valid(validate_likelihood_matrix(lik, prior.outcomes(), tol), "likelihood matrix");

  int m = prior.outcomes();
  std::vector<double> lprod, uprod;
  bound_products(lik, lprod, uprod);

  std::vector<double> lo(m), hi(m);
  for (int j = 0; j < m; ++j) {
    lo[j] = context_bound(prior, lprod, uprod, j, false);
    hi[j] = context_bound(prior, lprod, uprod, j, true);
  }
  return tighten_result(std::move(lo), std::move(hi), tol);
}

IntervalFusionResult fuse_sequential_context_interval(const IntervalDistribution& prior,
                                                      const LikelihoodMatrix& lik,
                                                      Tolerance tol) {
  require_valid(validate_interval_distribution(prior, tol), "prior");
  require_valid(validate_likelihood_matrix(lik, prior.outcomes(), tol), "likelihood matrix");
  IntervalFusionResult acc{prior, false};
  for (const auto& row : lik.rows) {
    LikelihoodMatrix single;
    single.rows.push_back(row);
    IntervalFusionResult step = fuse_context_specific_interval(acc.posterior, single, tol);
    acc.posterior = std::move(step.posterior);
    acc.tightening_changed = acc.tightening_changed || step.tightening_changed;
  }
  return acc;
}

IntervalFusionResult fuse_general_interval_a1(const std::vector<IntervalDistribution>& inputs,
                                              const GeneralFusionOptions& opts) {
  check_same_domain(inputs, opts.tol);
  if (!opts.pairwise || inputs.size() == 2) return general_a1_core(inputs, opts);
  // TODO: a dedicated two-row path could cut each fold below the generic
  // corner enumeration; the guard keeps the generic one honest meanwhile.
  IntervalFusionResult acc{inputs[0], false};
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    IntervalFusionResult step = general_a1_core({acc.posterior, inputs[i]}, opts);
    acc.posterior = std::move(step.posterior);
    acc.tightening_changed = acc.tightening_changed || step.tightening_changed;
  }
  return acc;
}

IntervalFusionResult fuse_general_interval_a2(const std::vector<IntervalDistribution>& inputs,
                                              Tolerance tol) {
  check_same_domain(inputs, tol);
  int n = static_cast<int>(inputs.size());
  int m = inputs[0].outcomes();

  std::vector<double> lprod(m, 1.0), uprod(m, 1.0);
  double lo_sum_prod = 1.0, hi_sum_prod = 1.0;  // products over rows of the row sums
  for (int i = 0; i < n; ++i) {
    double ls = 0.0, us = 0.0;
    for (int j = 0; j < m; ++j) {
      lprod[j] *= inputs[i].lower[j];
      uprod[j] *= inputs[i].upper[j];
      ls += inputs[i].lower[j];
      us += inputs[i].upper[j];
    }
    lo_sum_prod *= ls;
    hi_sum_prod *= us;
  }
  double lo_prod_sum = 0.0, hi_prod_sum = 0.0;  // sums over columns of the products
  for (int j = 0; j < m; ++j) {
    lo_prod_sum += lprod[j];
    hi_prod_sum += uprod[j];
  }
  if (hi_prod_sum <= 0.0)
    throw conflict_error("total conflict: every outcome has a zero upper product");

  std::vector<double> lo(m), hi(m);
  for (int j = 0; j < m; ++j) {
    double lden = std::min(lprod[j] + (hi_prod_sum - uprod[j]),
                           1.0 - (lo_sum_prod - lo_prod_sum));
    lo[j] = lden > 0.0 ? lprod[j] / lden : 0.0;
    double uden = std::max(uprod[j] + (lo_prod_sum - lprod[j]),
                           1.0 - (hi_sum_prod - hi_prod_sum));
    hi[j] = uden > 0.0 ? uprod[j] / uden : 0.0;
  }
  return tighten_result(std::move(lo), std::move(hi), tol);
}

IntervalFusionResult fuse_sequential_interval_a2(const std::vector<IntervalDistribution>& inputs,
                                                 Tolerance tol) {
  check_same_domain(inputs, tol);
  IntervalFusionResult acc{inputs[0], false};
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    IntervalFusionResult step = fuse_general_interval_a2({acc.posterior, inputs[i]}, tol);
    acc.posterior = std::move(step.posterior);
    acc.tightening_changed = acc.tightening_changed || step.tightening_changed;
  }
  return acc;
}

}  // namespace credal
