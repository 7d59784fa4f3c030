#include "credal/sum_of_products.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "credal/detail/column_search.hpp"

namespace credal {

namespace {

// All corner vectors of {lo <= x <= hi, sum x = target}: pick the column
// that may sit strictly between its bounds, put every other column at lo or
// hi, keep the combinations whose forced remainder fits. Duplicates (the
// remainder landing exactly on a bound, degenerate columns) are merged.
std::vector<std::vector<double>> row_corner_vectors(const std::vector<double>& lo,
                                                    const std::vector<double>& hi, double target,
                                                    double eps) {
  int m = static_cast<int>(lo.size());
  std::map<std::vector<long long>, std::vector<double>> seen;
  double quantum = 1e-12;

  std::vector<int> others(m - 1);
  std::vector<double> x(m);
  for (int free = 0; free < m; ++free) {
    int k = 0;
    for (int j = 0; j < m; ++j)
      if (j != free) others[k++] = j;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (m - 1)); ++bits) {
      double base = 0.0;
      for (int t = 0; t < m - 1; ++t) {
        x[others[t]] = (bits >> t) & 1 ? hi[others[t]] : lo[others[t]];
        base += x[others[t]];
      }
      double rem = target - base;
      if (rem < lo[free] - eps || rem > hi[free] + eps) continue;
      x[free] = std::clamp(rem, lo[free], hi[free]);
      std::vector<long long> key(m);
      for (int j = 0; j < m; ++j)
        key[j] = std::llround(std::clamp(x[j] / quantum, -9.0e18, 9.0e18));
      seen.emplace(std::move(key), x);
    }
  }
  std::vector<std::vector<double>> out;
  out.reserve(seen.size());
  for (auto& [key, v] : seen) out.push_back(std::move(v));
  return out;
}

}  // namespace

void validate_sop_instance(const SumOfProductsInstance& inst, Tolerance tol) {
  require_positive(tol);
  int n = inst.rows(), m = inst.columns();
  if (n < 1 || m < 1) throw validation_error("sum-of-products instance needs n,m >= 1");
  if (static_cast<int>(inst.hi.size()) != n || static_cast<int>(inst.row_sum.size()) != n)
    throw validation_error("sum-of-products instance has mismatched shapes");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(inst.lo[i].size()) != m || static_cast<int>(inst.hi[i].size()) != m)
      throw validation_error("sum-of-products row " + std::to_string(i + 1) +
                             " has the wrong width");
    double lsum = 0.0, hsum = 0.0;
    for (int j = 0; j < m; ++j) {
      if (!(inst.lo[i][j] >= -tol.eps && inst.lo[i][j] <= inst.hi[i][j] + tol.eps))
        throw validation_error("sum-of-products entry (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") violates 0 <= lo <= hi");
      lsum += inst.lo[i][j];
      hsum += inst.hi[i][j];
    }
    if (inst.row_sum[i] < lsum - tol.eps || inst.row_sum[i] > hsum + tol.eps)
      throw validation_error("infeasible instance: row " + std::to_string(i + 1) +
                             " cannot sum to " + std::to_string(inst.row_sum[i]));
  }
}

SopSolution solve_sum_of_products(const SumOfProductsInstance& inst, SolverGuard guard,
                                  Tolerance tol) {
  validate_sop_instance(inst, tol);
  int n = inst.rows(), m = inst.columns();

  double per_row_estimate = m >= 1 ? static_cast<double>(m) * std::ldexp(1.0, m - 1) : 1.0;
  if (per_row_estimate > static_cast<double>(guard.max_corners))
    throw guard_error("corner enumeration per row needs ~" + std::to_string(per_row_estimate) +
                      " combinations, above the guard of " + std::to_string(guard.max_corners));

  std::vector<std::vector<std::vector<double>>> rows(n);
  double space = 1.0;
  for (int i = 0; i < n; ++i) {
    rows[i] = row_corner_vectors(inst.lo[i], inst.hi[i], inst.row_sum[i], tol.eps);
    if (rows[i].empty())
      throw validation_error("infeasible instance: row " + std::to_string(i + 1) +
                             " admits no corner state");
    space *= static_cast<double>(rows[i].size());
    if (space > static_cast<double>(guard.max_corners))
      throw guard_error("corner search space is ~" + std::to_string(space) +
                        " states, above the guard of " + std::to_string(guard.max_corners));
  }

  detail::ProductSumResult best = detail::optimize_product_sum(rows, m, inst.sense);
  SopSolution sol;
  sol.value = best.value;
  sol.corners_searched = static_cast<std::uint64_t>(space);
  sol.witness.x.resize(n);
  for (int i = 0; i < n; ++i) sol.witness.x[i] = rows[i][best.pick[i]];
  return sol;
}

}  // namespace credal
