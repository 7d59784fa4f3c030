#include "credal/point_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace credal {

namespace {

// Products over many factors underflow; past this row count they are
// accumulated as log sums instead.
constexpr int kLogSpaceThreshold = 30;

void check_likelihoods(const std::vector<std::vector<double>>& rows, int outcomes) {
  if (rows.empty()) throw validation_error("context fusion needs at least one observation row");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != outcomes)
      throw validation_error("likelihood row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(outcomes));
    for (double v : rows[i])
      if (!(v >= 0.0 && v <= 1.0))
        throw validation_error("likelihood row " + std::to_string(i + 1) +
                               " has an entry outside [0,1]");
  }
}

// weights_j = base_j * prod over rows of row[j], computed in log space when
// there are many rows. Only ratios of the weights matter downstream.
std::vector<double> column_weights(const std::vector<double>& base,
                                   const std::vector<std::vector<double>>& rows) {
  int m = static_cast<int>(base.size());
  std::vector<double> w(m, 0.0);
  if (static_cast<int>(rows.size()) <= kLogSpaceThreshold) {
    for (int j = 0; j < m; ++j) {
      double prod = base[j];
      for (const auto& row : rows) prod *= row[j];
      w[j] = prod;
    }
    return w;
  }
  std::vector<double> logw(m, 0.0);
  std::vector<bool> zero(m, false);
  for (int j = 0; j < m; ++j) {
    if (base[j] <= 0.0) { zero[j] = true; continue; }
    logw[j] = std::log(base[j]);
    for (const auto& row : rows) {
      if (row[j] <= 0.0) { zero[j] = true; break; }
      logw[j] += std::log(row[j]);
    }
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j)
    if (!zero[j]) peak = std::max(peak, logw[j]);
  if (std::isinf(peak)) return w;  // everything zero
  for (int j = 0; j < m; ++j)
    if (!zero[j]) w[j] = std::exp(logw[j] - peak);
  return w;
}

PointDistribution normalize_or_conflict(std::vector<double> w, const char* message) {
  double total = 0.0;
  for (double v : w) total += v;
  if (total <= 0.0) throw conflict_error(message);
  for (double& v : w) v /= total;
  return PointDistribution{std::move(w)};
}

}  // namespace

PointDistribution fuse_context_specific_point(const PointContextInput& in, Tolerance tol) {
  require_valid(validate_point_distribution(in.prior, tol), "prior");
  check_likelihoods(in.likelihoods, in.prior.outcomes());
  return normalize_or_conflict(column_weights(in.prior.probs, in.likelihoods),
                               "all hypotheses have zero posterior support");
}

PointDistribution fuse_general_point(const std::vector<PointDistribution>& dists, Tolerance tol) {
  if (dists.size() < 2) throw validation_error("general fusion needs at least 2 distributions");
  int m = dists[0].outcomes();
  std::vector<std::vector<double>> rows;
  rows.reserve(dists.size() - 1);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    require_valid(validate_point_distribution(dists[i], tol),
                  "input distribution " + std::to_string(i + 1));
    if (dists[i].outcomes() != m)
      throw validation_error("input distributions cover different outcome counts");
    if (i > 0) rows.push_back(dists[i].probs);
  }
  return normalize_or_conflict(column_weights(dists[0].probs, rows),
                               "total conflict: no common value possible");
}

PointDistribution fuse_sequential_context_point(const PointContextInput& in, Tolerance tol) {
  require_valid(validate_point_distribution(in.prior, tol), "prior");
  check_likelihoods(in.likelihoods, in.prior.outcomes());
  PointDistribution acc = in.prior;
  for (const auto& row : in.likelihoods)
    acc = fuse_context_specific_point({acc, {row}}, tol);
  return acc;
}

PointDistribution fuse_sequential_general_point(const std::vector<PointDistribution>& dists,
                                                Tolerance tol) {
  if (dists.empty()) throw validation_error("general fusion needs at least one distribution");
  PointDistribution acc = dists[0];
  require_valid(validate_point_distribution(acc, tol), "input distribution 1");
  for (std::size_t i = 1; i < dists.size(); ++i)
    acc = fuse_general_point({acc, dists[i]}, tol);
  return acc;
}

}  // namespace credal
