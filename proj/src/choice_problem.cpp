#include "credal/choice_problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "credal/detail/column_search.hpp"

namespace credal {

namespace {

struct FocusEnumerator {
  const std::vector<std::pair<SubsetMask, double>>& entries;
  const std::vector<int>& column_of;  // outcome index -> column in the domain
  int columns;

  std::map<std::vector<long long>, std::pair<std::vector<double>, std::map<SubsetMask, int>>>
      seen;
  std::vector<int> chosen;

  void enumerate() {
    chosen.assign(entries.size(), 0);
    walk(0);
  }

  void walk(std::size_t idx) {
    if (idx == entries.size()) {
      // rebuild at the leaf: columns without mass must be exactly zero
      std::vector<double> x(columns, 0.0);
      std::map<SubsetMask, int> choice;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        x[column_of[chosen[k]]] += entries[k].second;
        choice[entries[k].first] = chosen[k];
      }
      std::vector<long long> key(columns);
      for (int j = 0; j < columns; ++j)
        key[j] = std::llround(std::clamp(x[j] / 1e-12, -9.0e18, 9.0e18));
      seen.emplace(std::move(key), std::make_pair(std::move(x), std::move(choice)));
      return;
    }
    for (SubsetMask bits = entries[idx].first; bits != 0; bits &= bits - 1) {
      chosen[idx] = std::countr_zero(bits);
      walk(idx + 1);
    }
  }
};

}  // namespace

ChoiceSolution solve_choice_problem(const ChoiceInstance& inst, SolverGuard guard,
                                    Tolerance tol) {
  require_positive(tol);
  if (inst.domain == 0) throw validation_error("choice problem needs a nonempty domain");
  if (inst.weights.empty()) throw validation_error("choice problem needs at least one input");

  int columns = subset_size(inst.domain);
  std::vector<int> column_of(32, -1);
  {
    int col = 0;
    for (SubsetMask bits = inst.domain; bits != 0; bits &= bits - 1)
      column_of[std::countr_zero(bits)] = col++;
  }

  int n = static_cast<int>(inst.weights.size());
  std::vector<std::vector<std::pair<SubsetMask, double>>> positive(n);
  double search_space = 1.0;
  for (int i = 0; i < n; ++i) {
    for (const auto& [subset, weight] : inst.weights[i]) {
      if (subset == 0 || (subset & ~inst.domain) != 0)
        throw validation_error("choice problem weight on a subset outside the domain");
      if (weight < -tol.eps)
        throw validation_error("choice problem weights must be nonnegative");
      if (weight > 0.0) {
        positive[i].emplace_back(subset, weight);
        search_space *= static_cast<double>(subset_size(subset));
      }
    }
    if (search_space > static_cast<double>(guard.max_corners))
      throw guard_error("choice search space is ~" + std::to_string(search_space) +
                        " focusings, above the guard of " + std::to_string(guard.max_corners));
  }

  std::vector<std::vector<std::vector<double>>> rows(n);
  std::vector<std::vector<std::map<SubsetMask, int>>> choices(n);
  for (int i = 0; i < n; ++i) {
    FocusEnumerator fe{positive[i], column_of, columns, {}, {}};
    fe.enumerate();
    rows[i].reserve(fe.seen.size());
    choices[i].reserve(fe.seen.size());
    for (auto& [key, pair] : fe.seen) {
      rows[i].push_back(std::move(pair.first));
      choices[i].push_back(std::move(pair.second));
    }
  }

  detail::ProductSumResult best = detail::optimize_product_sum(rows, columns, inst.sense);
  ChoiceSolution sol;
  sol.value = best.value;
  sol.choices_searched = static_cast<std::uint64_t>(search_space);
  sol.witness.resize(n);
  for (int i = 0; i < n; ++i) sol.witness[i] = choices[i][best.pick[i]];
  return sol;
}

}  // namespace credal
