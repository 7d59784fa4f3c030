#include "credal/detail/column_search.hpp"

#include <limits>

namespace credal::detail {

namespace {

struct Searcher {
  const std::vector<std::vector<std::vector<double>>>& rows;
  int columns;
  bool maximize;
  // suffix[i][j] bounds prod_{k >= i} x[k][j] over all candidate choices
  std::vector<std::vector<double>> suffix;
  std::vector<int> current;
  ProductSumResult best;

  void run() {
    int n = static_cast<int>(rows.size());
    suffix.assign(n + 1, std::vector<double>(columns, 1.0));
    for (int i = n - 1; i >= 0; --i)
      for (int j = 0; j < columns; ++j) {
        double extreme = maximize ? 0.0 : std::numeric_limits<double>::infinity();
        for (const auto& v : rows[i])
          extreme = maximize ? std::max(extreme, v[j]) : std::min(extreme, v[j]);
        suffix[i][j] = extreme * suffix[i + 1][j];
      }
    current.assign(n, 0);
    best.value = maximize ? -1.0 : std::numeric_limits<double>::infinity();
    std::vector<double> partial(columns, 1.0);
    descend(0, partial);
  }

  void descend(int depth, const std::vector<double>& partial) {
    double bound = 0.0;
    for (int j = 0; j < columns; ++j) bound += partial[j] * suffix[depth][j];
    if (maximize ? bound <= best.value : bound >= best.value) return;
    if (depth == static_cast<int>(rows.size())) {
      best.value = bound;  // suffix row is all ones here
      best.pick = current;
      return;
    }
    std::vector<double> next(columns);
    for (int c = 0; c < static_cast<int>(rows[depth].size()); ++c) {
      for (int j = 0; j < columns; ++j) next[j] = partial[j] * rows[depth][c][j];
      current[depth] = c;
      descend(depth + 1, next);
    }
  }
};

}  // namespace

ProductSumResult optimize_product_sum(const std::vector<std::vector<std::vector<double>>>& rows,
                                      int columns, OptimizeSense sense) {
  for (const auto& row : rows)
    if (row.empty())
      throw validation_error("column search: a row has no candidate vectors");
  Searcher s{rows, columns, sense == OptimizeSense::maximize, {}, {}, {}};
  s.run();
  return s.best;
}

}  // namespace credal::detail
