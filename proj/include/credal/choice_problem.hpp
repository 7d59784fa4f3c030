#ifndef CREDAL_CHOICE_PROBLEM_HPP
#define CREDAL_CHOICE_PROBLEM_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "credal/core.hpp"
#include "credal/sum_of_products.hpp"

namespace credal {

// Mass-focusing variant of the sum-of-products problem: every weighted
// subset J of the domain sends its whole weight to one element g(J) in J,
// forming an unnormalized vector x[i] per input; optimize
// sum over domain elements of prod_i x[i][element].
struct ChoiceInstance {
  SubsetMask domain = 0;                              // the set A, as a bitmask
  std::vector<std::map<SubsetMask, double>> weights;  // f_i over nonempty subsets of A
  OptimizeSense sense = OptimizeSense::maximize;
};

struct ChoiceSolution {
  double value = 0.0;
  // witness[i] maps each positively weighted subset to the chosen element
  // (0-based outcome index)
  std::vector<std::map<SubsetMask, int>> witness;
  std::uint64_t choices_searched = 0;
};

// Exhaustive over all admissible focusings, deduplicating inputs that induce
// the same vector. Throws guard_error when the product of per-subset choice
// counts exceeds the guard.
ChoiceSolution solve_choice_problem(const ChoiceInstance& inst, SolverGuard guard = {},
                                    Tolerance tol = {});

}  // namespace credal

#endif
