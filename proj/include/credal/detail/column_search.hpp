#ifndef CREDAL_DETAIL_COLUMN_SEARCH_HPP
#define CREDAL_DETAIL_COLUMN_SEARCH_HPP

#include <vector>

#include "credal/core.hpp"

namespace credal::detail {

// Exhaustive optimization of sum_j prod_i x[i][j] where row i picks one
// candidate vector out of rows[i]. All entries must be nonnegative (the
// column-wise suffix bounds used for pruning rely on it). Iteration order is
// fixed and ties keep the first optimum found, so results are deterministic.
struct ProductSumResult {
  double value = 0.0;
  std::vector<int> pick;  // chosen candidate index per row
};

ProductSumResult optimize_product_sum(const std::vector<std::vector<std::vector<double>>>& rows,
                                      int columns, OptimizeSense sense);

}  // namespace credal::detail

#endif
