#include "credal/sat_bridge.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace credal {

namespace {
constexpr double kDecisionEps = 1e-6;
}

void validate_sat_instance(const SatInstance& s) {
  if (s.variables < 1) throw validation_error("SAT instance needs at least one variable");
  if (s.clauses.empty()) throw validation_error("SAT instance needs at least one clause");
  for (std::size_t j = 0; j < s.clauses.size(); ++j)
    if (static_cast<int>(s.clauses[j].size()) != s.variables)
      throw validation_error("clause " + std::to_string(j + 1) + " has " +
                             std::to_string(s.clauses[j].size()) + " slots, expected " +
                             std::to_string(s.variables));
}

SumOfProductsInstance reduce_sat_to_sop(const SatInstance& s) {
  validate_sat_instance(s);
  int n = s.variables;
  int m = static_cast<int>(s.clauses.size());

  SumOfProductsInstance inst;
  inst.sense = OptimizeSense::maximize;
  inst.lo.assign(n + m, std::vector<double>(2 * n, 1.0));
  inst.hi.assign(n + m, std::vector<double>(2 * n, 1.0));
  inst.row_sum.assign(n + m, 2.0 * n - 1.0);

  for (int i = 0; i < n; ++i) {
    inst.lo[i][2 * i] = 0.0;
    inst.lo[i][2 * i + 1] = 0.0;
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      if (s.clauses[j][i] == LiteralSlot::positive)
        inst.lo[n + j][2 * i] = 0.0;
      else if (s.clauses[j][i] == LiteralSlot::negative)
        inst.lo[n + j][2 * i + 1] = 0.0;
    }
  return inst;
}

SatDecision decide_sat_detailed(const SatInstance& s, const SatBridgeGuard& guard) {
  validate_sat_instance(s);
  int rows = s.variables + static_cast<int>(s.clauses.size());
  if (rows > guard.max_rows)
    throw guard_error("reduced instance has " + std::to_string(rows) +
                      " rows, above the guard of " + std::to_string(guard.max_rows));

  // an empty clause (no literals) makes its row infeasible: no corner can
  // reach the row sum, so the maximum over an empty feasible set stays
  // below the threshold
  for (const auto& clause : s.clauses) {
    bool any = false;
    for (LiteralSlot slot : clause) any = any || slot != LiteralSlot::absent;
    if (!any) return {false, 0.0, {}};
  }

  SumOfProductsInstance inst = reduce_sat_to_sop(s);
  SopSolution sol = solve_sum_of_products(inst, guard.solver);

  SatDecision decision;
  decision.objective = sol.value;
  decision.satisfiable = sol.value >= static_cast<double>(s.variables) - kDecisionEps;
  if (decision.satisfiable) {
    decision.assignment.resize(s.variables);
    for (int i = 0; i < s.variables; ++i)
      decision.assignment[i] = sol.witness.x[i][2 * i] < 0.5;  // zeroed true-slot means true
  }
  return decision;
}

bool decide_sat_via_sop(const SatInstance& s, const SatBridgeGuard& guard) {
  return decide_sat_detailed(s, guard).satisfiable;
}

bool brute_force_sat(const SatInstance& s, int max_variables) {
  validate_sat_instance(s);
  if (s.variables > max_variables)
    throw guard_error("brute-force SAT over " + std::to_string(s.variables) +
                      " variables is above the guard of " + std::to_string(max_variables));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s.variables); ++bits) {
    bool all = true;
    for (const auto& clause : s.clauses) {
      bool sat = false;
      for (int i = 0; i < s.variables && !sat; ++i) {
        bool value = (bits >> i) & 1;
        sat = (clause[i] == LiteralSlot::positive && value) ||
              (clause[i] == LiteralSlot::negative && !value);
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

SatInstance parse_dimacs(std::istream& in) {
  SatInstance s;
  int declared_clauses = -1;
  std::string line;
  int line_no = 0;
  std::vector<int> pending;
  bool in_clause = false;

  auto flush_clause = [&](int at_line) {
    std::vector<LiteralSlot> slots(s.variables, LiteralSlot::absent);
    for (int lit : pending) {
      int var = std::abs(lit) - 1;
      if (var >= s.variables)
        throw validation_error("line " + std::to_string(at_line) + ": literal " +
                               std::to_string(lit) + " exceeds the declared variable count");
      if (slots[var] != LiteralSlot::absent)
        throw validation_error("line " + std::to_string(at_line) + ": variable " +
                               std::to_string(var + 1) +
                               " appears twice in one clause (one slot per variable)");
      slots[var] = lit > 0 ? LiteralSlot::positive : LiteralSlot::negative;
    }
    s.clauses.push_back(std::move(slots));
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (tok == "c" || tok[0] == 'c') {
        break;  // comment line
      } else if (tok == "p") {
        std::string fmt;
        int vars = 0, clauses = 0;
        if (!(tokens >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 1 || clauses < 1)
          throw validation_error("line " + std::to_string(line_no) +
                                 ": malformed problem line, expected 'p cnf <vars> <clauses>'");
        s.variables = vars;
        declared_clauses = clauses;
        break;
      } else {
        if (s.variables == 0)
          throw validation_error("line " + std::to_string(line_no) +
                                 ": clause before the 'p cnf' problem line");
        int lit = 0;
        try {
          lit = std::stoi(tok);
        } catch (const std::exception&) {
          throw validation_error("line " + std::to_string(line_no) + ": bad token '" + tok + "'");
        }
        if (lit == 0) {
          flush_clause(line_no);
          in_clause = false;
        } else {
          pending.push_back(lit);
          in_clause = true;
        }
      }
    }
  }
  if (in_clause) flush_clause(line_no);  // tolerate a missing trailing 0
  if (s.variables == 0) throw validation_error("missing 'p cnf' problem line");
  if (s.clauses.empty()) throw validation_error("no clauses found");
  if (declared_clauses >= 0 && static_cast<int>(s.clauses.size()) != declared_clauses)
    throw validation_error("header declares " + std::to_string(declared_clauses) +
                           " clauses but " + std::to_string(s.clauses.size()) + " were parsed");
  return s;
}

}  // namespace credal
