#ifndef CREDAL_SAT_BRIDGE_HPP
#define CREDAL_SAT_BRIDGE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "credal/sum_of_products.hpp"

namespace credal {

enum class LiteralSlot : std::uint8_t { absent, positive, negative };

// CNF with at most one literal per variable per clause (one slot each).
struct SatInstance {
  int variables = 0;
  std::vector<std::vector<LiteralSlot>> clauses;  // each clause has `variables` slots
};

void validate_sat_instance(const SatInstance& s);

// The reduction behind the NP-hardness argument: n+m rows over 2n columns,
// two columns per variable (true slot 2i, false slot 2i+1, 0-based). Every
// upper bound is 1, every row sums to 2n-1, and the zeros in the lower
// bounds mark where a row may spend its unit deficit: a variable row on its
// own pair, a clause row on its supporting literals. The formula is
// satisfiable exactly when the maximum of the reduced instance reaches n.
SumOfProductsInstance reduce_sat_to_sop(const SatInstance& s);

struct SatBridgeGuard {
  int max_rows = 12;  // n + m of the reduced instance
  SolverGuard solver;
};

struct SatDecision {
  bool satisfiable = false;
  double objective = 0.0;
  std::vector<bool> assignment;  // decoded from the witness when satisfiable
};

// Decides via the reduction and the exact corner-state solver. An instance
// with an empty clause reduces to an infeasible row and is unsatisfiable.
bool decide_sat_via_sop(const SatInstance& s, const SatBridgeGuard& guard = {});
SatDecision decide_sat_detailed(const SatInstance& s, const SatBridgeGuard& guard = {});

// Exhaustive assignment sweep; the reduction's independent oracle.
bool brute_force_sat(const SatInstance& s, int max_variables = 20);

// DIMACS-ish CNF reader ("c" comments, "p cnf <vars> <clauses>", clauses as
// whitespace-separated literals terminated by 0). A clause mentioning the
// same variable twice is rejected: formulation here has one slot per
// variable.
SatInstance parse_dimacs(std::istream& in);

}  // namespace credal

#endif
