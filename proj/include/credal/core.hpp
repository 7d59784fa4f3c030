#ifndef CREDAL_CORE_HPP
#define CREDAL_CORE_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

// Outcomes of the hypothesis variable are 1..M in documents and reports.
// Internally vectors are 0-based and subsets are bitmasks with bit j-1
// standing for outcome j.
using SubsetMask = std::uint32_t;

// Subset tables are 2^M entries; beyond this the exhaustive subset-lattice
// algorithms are hopeless anyway, so exhaustion is made explicit.
inline constexpr int kMaxMaskedOutcomes = 24;

inline constexpr SubsetMask full_mask(int outcomes) {
  return (outcomes >= 32) ? ~SubsetMask{0} : ((SubsetMask{1} << outcomes) - 1);
}
inline constexpr SubsetMask singleton_mask(int outcome_index0) {
  return SubsetMask{1} << outcome_index0;
}
inline int subset_size(SubsetMask m) { return std::popcount(m); }

struct Tolerance {
  double eps = 1e-9;
};

inline void require_positive(Tolerance tol) {
  if (!(tol.eps > 0.0)) throw validation_error("tolerance must be positive");
}

enum class OptimizeSense { minimize, maximize };

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// A single probability distribution over outcomes 1..M.
struct PointDistribution {
  std::vector<double> probs;

  int outcomes() const { return static_cast<int>(probs.size()); }
};

// Closed per-outcome probability bounds [lower_j, upper_j]; a member is any
// distribution p with lower <= p <= upper componentwise.
struct IntervalDistribution {
  std::vector<double> lower;
  std::vector<double> upper;

  int outcomes() const { return static_cast<int>(lower.size()); }
};

// Dempster-Shafer model: nonnegative mass on nonempty outcome subsets,
// summing to 1. Absent entries are zero.
struct MassFunction {
  int outcome_count = 0;
  std::map<SubsetMask, double> masses;

  int outcomes() const { return outcome_count; }
  double mass(SubsetMask subset) const {
    auto it = masses.find(subset);
    return it == masses.end() ? 0.0 : it->second;
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// One row per observation; entry (i, j) bounds Pr(O_i = o_i | H = j+1).
// Rows are not distributions and carry no sum constraint.
struct LikelihoodMatrix {
  std::vector<std::vector<Interval>> rows;

  int observations() const { return static_cast<int>(rows.size()); }
  int outcomes() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

// ---- validation -----------------------------------------------------------

ValidityReport validate_point_distribution(const PointDistribution& d,
                                           Tolerance tol = {});

// Reports the three condition families (range, mass feasibility,
// reachability) separately. Throws validation_error on structural problems
// (length mismatch, M < 2).
ValidityReport validate_interval_distribution(const IntervalDistribution& d,
                                              Tolerance tol = {});

ValidityReport validate_mass_function(const MassFunction& m, Tolerance tol = {});

ValidityReport validate_likelihood_matrix(const LikelihoodMatrix& lik,
                                          int expected_outcomes,
                                          Tolerance tol = {});

// Throws validation_error listing the report's violations when !ok.
void require_valid(const ValidityReport& report, const std::string& what);

// ---- interval repair and membership ---------------------------------------

// Shrinks raw bounds to the tightest reachable ones:
//   lower'_j = max(lower_j, 1 - sum of other uppers)
//   upper'_j = min(upper_j, 1 - sum of other lowers)
// The member set is unchanged. Throws validation_error("empty credal set")
// when no distribution fits the raw bounds.
IntervalDistribution tighten_interval_distribution(std::vector<double> lower,
                                                   std::vector<double> upper,
                                                   Tolerance tol = {});

bool contains_point(const IntervalDistribution& model, const PointDistribution& p,
                    Tolerance tol = {});
// 2^M - 1 checks: Bel(J) - eps <= p(J) <= Pl(J) + eps for every subset.
bool contains_point(const MassFunction& model, const PointDistribution& p,
                    Tolerance tol = {});

// ---- belief / plausibility / masses ---------------------------------------

double belief_of(const MassFunction& m, SubsetMask subset);
double plausibility_of(const MassFunction& m, SubsetMask subset);

// Dense table indexed by mask, entry [J] = Bel(J); size 2^M, entry [0] = 0.
std::vector<double> belief_table(const MassFunction& m);

// Moebius inversion of a dense belief table. Masses in [-eps, 0) are clamped
// to zero and the function renormalized; anything below -eps throws
// validation_error("not a belief function: ...").
MassFunction mass_from_belief(const std::vector<double>& belief, int outcomes,
                              Tolerance tol = {});

// Outer interval approximation: lower_j = Bel({j}), upper_j = Pl({j}),
// tightened. Loses information, never excludes a member.
IntervalDistribution ds_to_interval(const MassFunction& m, Tolerance tol = {});

// In-place subset-sum (zeta) transform and its inverse over the full lattice;
// f.size() must be 2^outcomes.
void subset_sum_transform(std::vector<double>& f, int outcomes);
void subset_sum_invert(std::vector<double>& f, int outcomes);

// ---- extreme points --------------------------------------------------------

// Vertices of {p : lower <= p <= upper, sum p = 1}: for every outcome
// ordering, raise probabilities from lower toward upper until the sum is 1,
// then deduplicate componentwise within eps. Factorial in M; refuses beyond
// max_outcomes.
std::vector<PointDistribution> interval_extreme_points(const IntervalDistribution& d,
                                                       Tolerance tol = {},
                                                       int max_outcomes = 10);

}  // namespace credal

#endif
