#include "credal/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace credal {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

void require_valid(const ValidityReport& report, const std::string& what) {
  if (report.ok) return;
  std::ostringstream os;
  os << what << " is invalid:";
  for (const auto& v : report.violations) os << "\n  - " << v;
  throw validation_error(os.str());
}

ValidityReport validate_point_distribution(const PointDistribution& d, Tolerance tol) {
  require_positive(tol);
  if (d.outcomes() < 2)
    throw validation_error("point distribution needs at least 2 outcomes, got " +
                           std::to_string(d.outcomes()));
  ValidityReport r;
  double sum = 0.0;
  for (int j = 0; j < d.outcomes(); ++j) {
    double p = d.probs[j];
    if (!(p >= -tol.eps && p <= 1.0 + tol.eps))
      r.violations.push_back("range: probs[" + std::to_string(j + 1) + "] = " + fmt(p) +
                             " outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.eps)
    r.violations.push_back("sum: probabilities sum to " + fmt(sum) + ", expected 1");
  r.ok = r.violations.empty();
  return r;
}

ValidityReport validate_interval_distribution(const IntervalDistribution& d, Tolerance tol) {
  require_positive(tol);
  int m = d.outcomes();
  if (m < 2)
    throw validation_error("interval distribution needs at least 2 outcomes, got " +
                           std::to_string(m));
  if (static_cast<int>(d.upper.size()) != m)
    throw validation_error("interval distribution has " + std::to_string(m) +
                           " lower bounds but " + std::to_string(d.upper.size()) + " uppers");

  ValidityReport r;
  double lsum = 0.0, usum = 0.0;
  for (int j = 0; j < m; ++j) {
    if (!(d.lower[j] >= -tol.eps && d.lower[j] <= d.upper[j] + tol.eps &&
          d.upper[j] <= 1.0 + tol.eps))
      r.violations.push_back("range: outcome " + std::to_string(j + 1) + " violates 0 <= " +
                             fmt(d.lower[j]) + " <= " + fmt(d.upper[j]) + " <= 1");
    lsum += d.lower[j];
    usum += d.upper[j];
  }
  if (lsum > 1.0 + tol.eps)
    r.violations.push_back("feasibility: lower bounds sum to " + fmt(lsum) + " > 1");
  if (usum < 1.0 - tol.eps)
    r.violations.push_back("feasibility: upper bounds sum to " + fmt(usum) + " < 1");
  for (int j = 0; j < m; ++j) {
    double other_u = usum - d.upper[j];
    double other_l = lsum - d.lower[j];
    if (d.lower[j] < 1.0 - other_u - tol.eps)
      r.violations.push_back("reachability: lower[" + std::to_string(j + 1) + "] = " +
                             fmt(d.lower[j]) + " below 1 - sum of other uppers = " +
                             fmt(1.0 - other_u));
    if (d.upper[j] > 1.0 - other_l + tol.eps)
      r.violations.push_back("reachability: upper[" + std::to_string(j + 1) + "] = " +
                             fmt(d.upper[j]) + " above 1 - sum of other lowers = " +
                             fmt(1.0 - other_l));
  }
  r.ok = r.violations.empty();
  return r;
}

ValidityReport validate_mass_function(const MassFunction& m, Tolerance tol) {
  require_positive(tol);
  int n = m.outcomes();
  if (n < 2)
    throw validation_error("mass function needs at least 2 outcomes, got " + std::to_string(n));
  if (n > kMaxMaskedOutcomes)
    throw validation_error("mass function over " + std::to_string(n) +
                           " outcomes exceeds the subset cap of " +
                           std::to_string(kMaxMaskedOutcomes));
  ValidityReport r;
  SubsetMask full = full_mask(n);
  double sum = 0.0;
  for (const auto& [subset, value] : m.masses) {
    if (subset == 0 || (subset & ~full) != 0)
      r.violations.push_back("subset: mask " + std::to_string(subset) +
                             " is empty or outside the domain");
    if (value < -tol.eps)
      r.violations.push_back("range: mass of subset " + std::to_string(subset) + " is " +
                             fmt(value) + " < 0");
    sum += value;
  }
  if (std::abs(sum - 1.0) > tol.eps)
    r.violations.push_back("sum: masses sum to " + fmt(sum) + ", expected 1");
  r.ok = r.violations.empty();
  return r;
}

ValidityReport validate_likelihood_matrix(const LikelihoodMatrix& lik, int expected_outcomes,
                                          Tolerance tol) {
  require_positive(tol);
  if (lik.observations() < 1)
    throw validation_error("likelihood matrix needs at least one observation row");
  ValidityReport r;
  for (int i = 0; i < lik.observations(); ++i) {
    if (static_cast<int>(lik.rows[i].size()) != expected_outcomes)
      throw validation_error("likelihood row " + std::to_string(i + 1) + " has " +
                             std::to_string(lik.rows[i].size()) + " entries, expected " +
                             std::to_string(expected_outcomes));
    for (int j = 0; j < expected_outcomes; ++j) {
      const Interval& iv = lik.rows[i][j];
      if (!(iv.lo >= -tol.eps && iv.lo <= iv.hi + tol.eps && iv.hi <= 1.0 + tol.eps))
        r.violations.push_back("range: entry (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") violates 0 <= " + fmt(iv.lo) +
                               " <= " + fmt(iv.hi) + " <= 1");
    }
  }
  r.ok = r.violations.empty();
  return r;
}

IntervalDistribution tighten_interval_distribution(std::vector<double> lower,
                                                   std::vector<double> upper, Tolerance tol) {
  require_positive(tol);
  int m = static_cast<int>(lower.size());
  if (m < 2 || static_cast<int>(upper.size()) != m)
    throw validation_error("tighten: need matching bound vectors with at least 2 outcomes");
  double lsum = 0.0, usum = 0.0;
  for (int j = 0; j < m; ++j) {
    if (lower[j] < -tol.eps || upper[j] > 1.0 + tol.eps || lower[j] > upper[j] + tol.eps)
      throw validation_error("tighten: outcome " + std::to_string(j + 1) +
                             " violates 0 <= lower <= upper <= 1");
    lower[j] = std::clamp(lower[j], 0.0, 1.0);
    upper[j] = std::clamp(upper[j], 0.0, 1.0);
    lsum += lower[j];
    usum += upper[j];
  }
  if (lsum > 1.0 + tol.eps || usum < 1.0 - tol.eps)
    throw validation_error("empty credal set: lower bounds sum to " + fmt(lsum) +
                           ", upper bounds sum to " + fmt(usum));

  IntervalDistribution out;
  out.lower.resize(m);
  out.upper.resize(m);
  for (int j = 0; j < m; ++j) {
    double other_u = usum - upper[j];
    double other_l = lsum - lower[j];
    out.lower[j] = std::clamp(std::max(lower[j], 1.0 - other_u), 0.0, 1.0);
    out.upper[j] = std::clamp(std::min(upper[j], 1.0 - other_l), 0.0, 1.0);
  }
  return out;
}

bool contains_point(const IntervalDistribution& model, const PointDistribution& p,
                    Tolerance tol) {
  if (model.outcomes() != p.outcomes())
    throw validation_error("contains_point: model has " + std::to_string(model.outcomes()) +
                           " outcomes, point has " + std::to_string(p.outcomes()));
  for (int j = 0; j < p.outcomes(); ++j)
    if (p.probs[j] < model.lower[j] - tol.eps || p.probs[j] > model.upper[j] + tol.eps)
      return false;
  return true;
}

bool contains_point(const MassFunction& model, const PointDistribution& p, Tolerance tol) {
  if (model.outcomes() != p.outcomes())
    throw validation_error("contains_point: model has " + std::to_string(model.outcomes()) +
                           " outcomes, point has " + std::to_string(p.outcomes()));
  int m = model.outcomes();
  SubsetMask full = full_mask(m);
  std::vector<double> bel = belief_table(model);
  // p(J) cumulative sums per mask, then Bel(J) <= p(J) <= 1 - Bel(~J).
  std::vector<double> psum(std::size_t{1} << m, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    int bit = std::countr_zero(s);
    psum[s] = psum[s & (s - 1)] + p.probs[bit];
  }
  for (SubsetMask s = 1; s <= full; ++s) {
    double pl = 1.0 - bel[full & ~s];
    if (psum[s] < bel[s] - tol.eps || psum[s] > pl + tol.eps) return false;
  }
  return true;
}

double belief_of(const MassFunction& m, SubsetMask subset) {
  double sum = 0.0;
  for (const auto& [s, v] : m.masses)
    if ((s & ~subset) == 0) sum += v;
  return sum;
}

double plausibility_of(const MassFunction& m, SubsetMask subset) {
  double sum = 0.0;
  for (const auto& [s, v] : m.masses)
    if ((s & subset) != 0) sum += v;
  return sum;
}

void subset_sum_transform(std::vector<double>& f, int outcomes) {
  for (int b = 0; b < outcomes; ++b)
    for (SubsetMask s = 0; s < f.size(); ++s)
      if (s & singleton_mask(b)) f[s] += f[s ^ singleton_mask(b)];
}

void subset_sum_invert(std::vector<double>& f, int outcomes) {
  for (int b = 0; b < outcomes; ++b)
    for (SubsetMask s = 0; s < f.size(); ++s)
      if (s & singleton_mask(b)) f[s] -= f[s ^ singleton_mask(b)];
}

std::vector<double> belief_table(const MassFunction& m) {
  std::vector<double> f(std::size_t{1} << m.outcomes(), 0.0);
  for (const auto& [s, v] : m.masses) f[s] += v;
  subset_sum_transform(f, m.outcomes());
  return f;
}

MassFunction mass_from_belief(const std::vector<double>& belief, int outcomes, Tolerance tol) {
  require_positive(tol);
  if (outcomes < 2 || outcomes > kMaxMaskedOutcomes)
    throw validation_error("mass_from_belief: outcome count " + std::to_string(outcomes) +
                           " outside [2," + std::to_string(kMaxMaskedOutcomes) + "]");
  SubsetMask full = full_mask(outcomes);
  if (belief.size() != (std::size_t{1} << outcomes))
    throw validation_error("mass_from_belief: table size must be 2^outcomes");
  if (std::abs(belief[full] - 1.0) > tol.eps)
    throw validation_error("not a belief function: Bel(full set) = " + fmt(belief[full]));

  std::vector<double> mass = belief;
  mass[0] = 0.0;
  subset_sum_invert(mass, outcomes);

  MassFunction out;
  out.outcome_count = outcomes;
  double sum = 0.0;
  for (SubsetMask s = 1; s <= full; ++s) {
    double v = mass[s];
    if (v < -tol.eps)
      throw validation_error("not a belief function: subset " + std::to_string(s) +
                             " gets mass " + fmt(v));
    if (v > 0.0) {
      out.masses[s] = v;
      sum += v;
    }
  }
  if (sum <= 0.0) throw validation_error("not a belief function: all masses vanish");
  if (std::abs(sum - 1.0) > 0.0)
    for (auto& [s, v] : out.masses) v /= sum;
  return out;
}

IntervalDistribution ds_to_interval(const MassFunction& m, Tolerance tol) {
  int n = m.outcomes();
  std::vector<double> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = belief_of(m, singleton_mask(j));
    hi[j] = plausibility_of(m, singleton_mask(j));
  }
  return tighten_interval_distribution(std::move(lo), std::move(hi), tol);
}

std::vector<PointDistribution> interval_extreme_points(const IntervalDistribution& d,
                                                       Tolerance tol, int max_outcomes) {
  int m = d.outcomes();
  if (m > max_outcomes)
    throw guard_error("extreme-point enumeration is factorial; refusing " + std::to_string(m) +
                      " outcomes (limit " + std::to_string(max_outcomes) + ")");
  require_valid(validate_interval_distribution(d, tol), "interval distribution");

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);

  // dedupe by quantized coordinates
  std::map<std::vector<long long>, PointDistribution> seen;
  double quantum = std::max(tol.eps, 1e-12);

  do {
    std::vector<double> p = d.lower;
    double budget = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
    for (int idx : order) {
      if (budget <= 0.0) break;
      double raise = std::min(d.upper[idx] - d.lower[idx], budget);
      p[idx] += raise;
      budget -= raise;
    }
    std::vector<long long> key(m);
    for (int j = 0; j < m; ++j) key[j] = std::llround(p[j] / quantum);
    seen.emplace(std::move(key), PointDistribution{std::move(p)});
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<PointDistribution> out;
  out.reserve(seen.size());
  for (auto& [key, p] : seen) out.push_back(std::move(p));
  return out;
}

}  // namespace credal
