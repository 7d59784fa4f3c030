#ifndef CREDAL_POINT_FUSION_HPP
#define CREDAL_POINT_FUSION_HPP

#include <vector>

#include "credal/core.hpp"

namespace credal {

// Prior over H plus one row of point likelihoods Pr(O_i = o_i | H = j) per
// observation. Rows are not distributions.
struct PointContextInput {
  PointDistribution prior;
  std::vector<std::vector<double>> likelihoods;  // N x M, entries in [0,1]
};

// Bayes: posterior_j ∝ prior_j * prod_i likelihood(i, j).
// Throws conflict_error when every hypothesis gets zero posterior support.
PointDistribution fuse_context_specific_point(const PointContextInput& in, Tolerance tol = {});

// Conditions independent hypothesis copies on agreement:
// posterior_j ∝ prod_i p_i(j). Throws conflict_error on total conflict.
PointDistribution fuse_general_point(const std::vector<PointDistribution>& dists,
                                     Tolerance tol = {});

// Folds one observation row at a time; equals simultaneous fusion up to
// floating-point reordering.
PointDistribution fuse_sequential_context_point(const PointContextInput& in, Tolerance tol = {});

// Folds the distributions pairwise; a single input degenerates to identity.
PointDistribution fuse_sequential_general_point(const std::vector<PointDistribution>& dists,
                                                Tolerance tol = {});

}  // namespace credal

#endif
