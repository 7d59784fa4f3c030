#include "credal/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "credal/point_fusion.hpp"

namespace credal {

namespace {

// portable unit-interval draw (the standard distributions are not
// bit-identical across library implementations)
double next_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::string point_to_string(const PointDistribution& p) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int j = 0; j < p.outcomes(); ++j) os << (j ? "," : "") << p.probs[j];
  os << "]";
  return os.str();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// simplex grid points at the given resolution that fall inside the bounds
void append_grid_members(const IntervalDistribution& d, double step,
                         std::vector<PointDistribution>& out) {
  int m = d.outcomes();
  int units = std::max(1, static_cast<int>(std::lround(1.0 / step)));
  std::vector<int> counts(m, 0);
  std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == m - 1) {
      counts[pos] = left;
      PointDistribution p;
      p.probs.resize(m);
      for (int j = 0; j < m; ++j) p.probs[j] = static_cast<double>(counts[j]) / units;
      if (contains_point(d, p)) out.push_back(std::move(p));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[pos] = k;
      walk(pos + 1, left - k);
    }
  };
  walk(0, units);
}

std::vector<PointDistribution> interval_members(const IntervalDistribution& d,
                                                const OracleOptions& opts) {
  std::vector<PointDistribution> members =
      interval_extreme_points(d, opts.tol, opts.max_outcomes + 1);
  if (opts.grid_augment && d.outcomes() <= 3) append_grid_members(d, opts.grid_step, members);
  return members;
}

// All focusings of a mass function, one member point each. The vector is
// rebuilt at every leaf so coordinates that receive no mass are exactly
// zero; an add-then-subtract scheme would leave ulp residue and turn
// genuinely conflicting combinations into noise ratios downstream.
std::vector<PointDistribution> ds_focusings(const MassFunction& m) {
  std::vector<std::pair<SubsetMask, double>> entries;
  for (const auto& [subset, mass] : m.masses)
    if (mass > 0.0) entries.emplace_back(subset, mass);
  std::vector<PointDistribution> out;
  std::vector<int> chosen(entries.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == entries.size()) {
      PointDistribution p;
      p.probs.assign(m.outcomes(), 0.0);
      for (std::size_t k = 0; k < entries.size(); ++k)
        p.probs[chosen[k]] += entries[k].second;
      out.push_back(std::move(p));
      return;
    }
    for (SubsetMask bits = entries[idx].first; bits != 0; bits &= bits - 1) {
      chosen[idx] = std::countr_zero(bits);
      walk(idx + 1);
    }
  };
  walk(0);
  return out;
}

// every likelihood matrix whose entries sit at interval endpoints
void for_each_likelihood_corner(const LikelihoodMatrix& lik,
                                const std::function<void(const std::vector<std::vector<double>>&)>& fn) {
  int n = lik.observations(), m = lik.outcomes();
  int cells = n * m;
  if (cells > 30) throw guard_error("likelihood corner enumeration over " +
                                    std::to_string(cells) + " cells is too large");
  std::vector<std::vector<double>> values(n, std::vector<double>(m, 0.0));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    int t = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j, ++t)
        values[i][j] = (bits >> t) & 1 ? lik.rows[i][j].hi : lik.rows[i][j].lo;
    fn(values);
  }
}

void check_oracle_guard(int outcomes, int inputs, const OracleOptions& opts) {
  if (outcomes > opts.max_outcomes)
    throw guard_error("oracle guard: " + std::to_string(outcomes) + " outcomes above limit " +
                      std::to_string(opts.max_outcomes));
  if (inputs > opts.max_inputs)
    throw guard_error("oracle guard: " + std::to_string(inputs) + " inputs above limit " +
                      std::to_string(opts.max_inputs));
}

struct Extremes {
  std::vector<double> lo, hi;
  std::uint64_t count = 0;

  explicit Extremes(std::size_t size)
      : lo(size, std::numeric_limits<double>::infinity()),
        hi(size, -std::numeric_limits<double>::infinity()) {}

  void admit(std::size_t idx, double v) {
    lo[idx] = std::min(lo[idx], v);
    hi[idx] = std::max(hi[idx], v);
  }
};

// subset sums of a point distribution, indexed by mask
std::vector<double> subset_probability(const PointDistribution& p) {
  SubsetMask full = full_mask(p.outcomes());
  std::vector<double> sums(std::size_t{1} << p.outcomes(), 0.0);
  for (SubsetMask s = 1; s <= full; ++s)
    sums[s] = sums[s & (s - 1)] + p.probs[std::countr_zero(s)];
  return sums;
}

}  // namespace

OracleBounds oracle_interval_context_bounds(const IntervalDistribution& prior,
                                            const LikelihoodMatrix& lik,
                                            const OracleOptions& opts) {
  check_oracle_guard(prior.outcomes(), lik.observations(), opts);
  require_valid(validate_interval_distribution(prior, opts.tol), "prior");
  require_valid(validate_likelihood_matrix(lik, prior.outcomes(), opts.tol), "likelihoods");

  Timer timer;
  int m = prior.outcomes();
  Extremes ext(m);
  for (const PointDistribution& p : interval_members(prior, opts)) {
    for_each_likelihood_corner(lik, [&](const std::vector<std::vector<double>>& values) {
      ++ext.count;
      double den = 0.0;
      std::vector<double> w(m);
      for (int j = 0; j < m; ++j) {
        double prod = p.probs[j];
        for (int i = 0; i < lik.observations(); ++i) prod *= values[i][j];
        w[j] = prod;
        den += prod;
      }
      if (den <= 0.0) return;  // not a member of the conditional
      for (int j = 0; j < m; ++j) ext.admit(j, w[j] / den);
    });
  }
  if (std::isinf(ext.lo[0]))
    throw conflict_error("oracle: no member combination gives the observations positive mass");
  return {std::move(ext.lo), std::move(ext.hi), ext.count, timer.seconds()};
}

OracleBounds oracle_interval_general_bounds(const std::vector<IntervalDistribution>& inputs,
                                            const OracleOptions& opts) {
  if (inputs.size() < 2) throw validation_error("oracle: need at least 2 inputs");
  check_oracle_guard(inputs[0].outcomes(), static_cast<int>(inputs.size()), opts);

  Timer timer;
  int m = inputs[0].outcomes();
  // vertices are exact here; grid augmentation would blow up the cross product
  OracleOptions vertex_only = opts;
  vertex_only.grid_augment = false;
  std::vector<std::vector<PointDistribution>> members;
  for (const auto& d : inputs) {
    require_valid(validate_interval_distribution(d, opts.tol), "oracle input");
    members.push_back(interval_members(d, vertex_only));
  }

  Extremes ext(m);
  std::vector<const PointDistribution*> pick(inputs.size());
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == inputs.size()) {
      ++ext.count;
      double den = 0.0;
      std::vector<double> w(m, 1.0);
      for (int j = 0; j < m; ++j) {
        for (const auto* p : pick) w[j] *= p->probs[j];
        den += w[j];
      }
      if (den <= 0.0) return;
      for (int j = 0; j < m; ++j) ext.admit(j, w[j] / den);
      return;
    }
    for (const auto& p : members[idx]) {
      pick[idx] = &p;
      walk(idx + 1);
    }
  };
  walk(0);
  if (std::isinf(ext.lo[0]))
    throw conflict_error("oracle: every member combination is in total conflict");
  return {std::move(ext.lo), std::move(ext.hi), ext.count, timer.seconds()};
}

OracleBounds oracle_ds_context_bounds(const MassFunction& prior, const LikelihoodMatrix& lik,
                                      const OracleOptions& opts) {
  check_oracle_guard(prior.outcomes(), lik.observations(), opts);
  require_valid(validate_mass_function(prior, opts.tol), "prior");
  require_valid(validate_likelihood_matrix(lik, prior.outcomes(), opts.tol), "likelihoods");

  Timer timer;
  int m = prior.outcomes();
  SubsetMask full = full_mask(m);
  Extremes ext((std::size_t{1} << m));
  for (const PointDistribution& p : ds_focusings(prior)) {
    for_each_likelihood_corner(lik, [&](const std::vector<std::vector<double>>& values) {
      ++ext.count;
      double den = 0.0;
      std::vector<double> w(m);
      for (int j = 0; j < m; ++j) {
        double prod = p.probs[j];
        for (int i = 0; i < lik.observations(); ++i) prod *= values[i][j];
        w[j] = prod;
        den += prod;
      }
      if (den <= 0.0) return;
      PointDistribution posterior;
      posterior.probs.resize(m);
      for (int j = 0; j < m; ++j) posterior.probs[j] = w[j] / den;
      std::vector<double> sums = subset_probability(posterior);
      for (SubsetMask s = 1; s <= full; ++s) ext.admit(s, sums[s]);
    });
  }
  if (std::isinf(ext.lo[1]))
    throw conflict_error("oracle: no member combination gives the observations positive mass");
  ext.lo[0] = ext.hi[0] = 0.0;
  return {std::move(ext.lo), std::move(ext.hi), ext.count, timer.seconds()};
}

OracleBounds oracle_ds_general_bounds(const std::vector<MassFunction>& inputs,
                                      const OracleOptions& opts) {
  if (inputs.size() < 2) throw validation_error("oracle: need at least 2 inputs");
  check_oracle_guard(inputs[0].outcomes(), static_cast<int>(inputs.size()), opts);

  Timer timer;
  int m = inputs[0].outcomes();
  SubsetMask full = full_mask(m);
  std::vector<std::vector<PointDistribution>> members;
  for (const auto& mf : inputs) {
    require_valid(validate_mass_function(mf, opts.tol), "oracle input");
    members.push_back(ds_focusings(mf));
  }

  Extremes ext((std::size_t{1} << m));
  std::vector<const PointDistribution*> pick(inputs.size());
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == inputs.size()) {
      ++ext.count;
      double den = 0.0;
      std::vector<double> w(m, 1.0);
      for (int j = 0; j < m; ++j) {
        for (const auto* p : pick) w[j] *= p->probs[j];
        den += w[j];
      }
      if (den <= 0.0) return;
      PointDistribution posterior;
      posterior.probs.resize(m);
      for (int j = 0; j < m; ++j) posterior.probs[j] = w[j] / den;
      std::vector<double> sums = subset_probability(posterior);
      for (SubsetMask s = 1; s <= full; ++s) ext.admit(s, sums[s]);
      return;
    }
    for (const auto& p : members[idx]) {
      pick[idx] = &p;
      walk(idx + 1);
    }
  };
  walk(0);
  if (std::isinf(ext.lo[1]))
    throw conflict_error("oracle: every member combination is in total conflict");
  ext.lo[0] = ext.hi[0] = 0.0;
  return {std::move(ext.lo), std::move(ext.hi), ext.count, timer.seconds()};
}

// ---- member sampling -------------------------------------------------------

PointDistribution sample_member_point(const IntervalDistribution& model, std::mt19937_64& rng) {
  int m = model.outcomes();
  std::vector<double> tail_lo(m + 1, 0.0), tail_hi(m + 1, 0.0);
  for (int j = m - 1; j >= 0; --j) {
    tail_lo[j] = tail_lo[j + 1] + model.lower[j];
    tail_hi[j] = tail_hi[j + 1] + model.upper[j];
  }
  PointDistribution p;
  p.probs.resize(m);
  double used = 0.0;
  for (int j = 0; j < m - 1; ++j) {
    double lo = std::max(model.lower[j], 1.0 - used - tail_hi[j + 1]);
    double hi = std::min(model.upper[j], 1.0 - used - tail_lo[j + 1]);
    double v = hi <= lo ? lo : lo + (hi - lo) * next_unit(rng);
    p.probs[j] = v;
    used += v;
  }
  p.probs[m - 1] = std::clamp(1.0 - used, model.lower[m - 1], model.upper[m - 1]);
  return p;
}

PointDistribution sample_member_point(const MassFunction& model, std::mt19937_64& rng) {
  int m = model.outcomes();
  PointDistribution p;
  p.probs.assign(m, 0.0);
  std::vector<double> cuts;
  for (const auto& [subset, mass] : model.masses) {
    if (mass <= 0.0) continue;
    int k = subset_size(subset);
    if (k == 1) {
      p.probs[std::countr_zero(subset)] += mass;
      continue;
    }
    // split the mass across the subset with uniform random weights
    cuts.assign(k, 0.0);
    double total = 0.0;
    for (int t = 0; t < k; ++t) {
      cuts[t] = -std::log(1.0 - next_unit(rng));
      total += cuts[t];
    }
    int t = 0;
    for (SubsetMask bits = subset; bits != 0; bits &= bits - 1, ++t)
      p.probs[std::countr_zero(bits)] += mass * (cuts[t] / total);
  }
  return p;
}

PointDistribution sample_member_point(const IntervalDistribution& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_member_point(model, rng);
}

PointDistribution sample_member_point(const MassFunction& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_member_point(model, rng);
}

std::vector<std::vector<double>> sample_likelihood_values(const LikelihoodMatrix& lik,
                                                          std::mt19937_64& rng) {
  std::vector<std::vector<double>> values(lik.observations(),
                                          std::vector<double>(lik.outcomes(), 0.0));
  for (int i = 0; i < lik.observations(); ++i)
    for (int j = 0; j < lik.outcomes(); ++j) {
      const Interval& iv = lik.rows[i][j];
      values[i][j] = iv.lo + (iv.hi - iv.lo) * next_unit(rng);
    }
  return values;
}

// ---- containment checking --------------------------------------------------

namespace {

constexpr std::size_t kMaxCounterexamples = 10;

template <typename Model, typename SampleFused>
ContainmentReport run_trials(const Model& fused, std::uint64_t trials, std::uint64_t seed,
                             Tolerance tol, SampleFused&& sample_fused) {
  ContainmentReport report;
  report.trials = trials;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto [fused_point, detail] = sample_fused(rng);
    if (!fused_point.has_value()) continue;  // sampled combination had no support
    if (!contains_point(fused, *fused_point, tol)) {
      ++report.violations;
      if (report.counterexamples.size() < kMaxCounterexamples)
        report.counterexamples.push_back("trial " + std::to_string(t) + ": fused point " +
                                         point_to_string(*fused_point) + " from " + detail);
    }
  }
  return report;
}

using MaybePoint = std::optional<PointDistribution>;

MaybePoint fuse_point_or_nothing(const PointContextInput& in, Tolerance tol) {
  try {
    return fuse_context_specific_point(in, tol);
  } catch (const conflict_error&) {
    return std::nullopt;
  }
}

MaybePoint fuse_points_or_nothing(const std::vector<PointDistribution>& points, Tolerance tol) {
  try {
    return fuse_general_point(points, tol);
  } catch (const conflict_error&) {
    return std::nullopt;
  }
}

std::string points_to_string(const std::vector<PointDistribution>& points) {
  std::string out = "members ";
  for (const auto& p : points) out += point_to_string(p);
  return out;
}

}  // namespace

ContainmentReport check_containment_interval_context(const IntervalDistribution& prior,
                                                     const LikelihoodMatrix& lik,
                                                     const IntervalDistribution& fused,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     Tolerance tol) {
  return run_trials(fused, trials, seed, tol,
                    [&](std::mt19937_64& rng) -> std::pair<MaybePoint, std::string> {
                      PointContextInput in;
                      in.prior = sample_member_point(prior, rng);
                      in.likelihoods = sample_likelihood_values(lik, rng);
                      return {fuse_point_or_nothing(in, tol),
                              "prior member " + point_to_string(in.prior)};
                    });
}

ContainmentReport check_containment_interval_general(
    const std::vector<IntervalDistribution>& inputs, const IntervalDistribution& fused,
    std::uint64_t trials, std::uint64_t seed, Tolerance tol) {
  return run_trials(fused, trials, seed, tol,
                    [&](std::mt19937_64& rng) -> std::pair<MaybePoint, std::string> {
                      std::vector<PointDistribution> points;
                      points.reserve(inputs.size());
                      for (const auto& d : inputs) points.push_back(sample_member_point(d, rng));
                      return {fuse_points_or_nothing(points, tol), points_to_string(points)};
                    });
}

ContainmentReport check_containment_ds_context(const MassFunction& prior,
                                               const LikelihoodMatrix& lik,
                                               const MassFunction& fused, std::uint64_t trials,
                                               std::uint64_t seed, Tolerance tol) {
  return run_trials(fused, trials, seed, tol,
                    [&](std::mt19937_64& rng) -> std::pair<MaybePoint, std::string> {
                      PointContextInput in;
                      in.prior = sample_member_point(prior, rng);
                      in.likelihoods = sample_likelihood_values(lik, rng);
                      return {fuse_point_or_nothing(in, tol),
                              "prior member " + point_to_string(in.prior)};
                    });
}

ContainmentReport check_containment_ds_general(const std::vector<MassFunction>& inputs,
                                               const MassFunction& fused, std::uint64_t trials,
                                               std::uint64_t seed, Tolerance tol) {
  return run_trials(fused, trials, seed, tol,
                    [&](std::mt19937_64& rng) -> std::pair<MaybePoint, std::string> {
                      std::vector<PointDistribution> points;
                      points.reserve(inputs.size());
                      for (const auto& mf : inputs)
                        points.push_back(sample_member_point(mf, rng));
                      return {fuse_points_or_nothing(points, tol), points_to_string(points)};
                    });
}

}  // namespace credal
