#ifndef CREDAL_SUM_OF_PRODUCTS_HPP
#define CREDAL_SUM_OF_PRODUCTS_HPP

#include <cstdint>
#include <vector>

#include "credal/core.hpp"

namespace credal {

// Optimize sum_j prod_i x[i][j] subject to lo <= x <= hi elementwise and
// sum_j x[i][j] = row_sum[i] per row. All data nonnegative.
struct SumOfProductsInstance {
  std::vector<std::vector<double>> lo;   // n x m
  std::vector<std::vector<double>> hi;   // n x m
  std::vector<double> row_sum;           // n
  OptimizeSense sense = OptimizeSense::maximize;

  int rows() const { return static_cast<int>(lo.size()); }
  int columns() const { return lo.empty() ? 0 : static_cast<int>(lo[0].size()); }
};

// Per row all entries sit at lo or hi except at most one; the optimum is
// always attained at such a state because the objective is linear in each
// row vector.
struct CornerAssignment {
  std::vector<std::vector<double>> x;
};

struct SopSolution {
  double value = 0.0;
  CornerAssignment witness;
  std::uint64_t corners_searched = 0;  // product of per-row candidate counts
};

struct SolverGuard {
  std::uint64_t max_corners = 10'000'000;
};

// Throws validation_error on a malformed or infeasible instance.
void validate_sop_instance(const SumOfProductsInstance& inst, Tolerance tol = {});

// Exhaustive search over deduplicated per-row corner vectors with
// branch-and-bound pruning; exact for both senses. Throws guard_error with a
// size estimate when the corner space exceeds the guard.
SopSolution solve_sum_of_products(const SumOfProductsInstance& inst, SolverGuard guard = {},
                                  Tolerance tol = {});

}  // namespace credal

#endif
