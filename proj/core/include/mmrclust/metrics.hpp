#pragma once

#include "mmrclust/matrix.hpp"

#include <cstddef>
#include <vector>

namespace mmrclust {

/// Chance-corrected agreement between two partitions of the same points.
/// Returns 1 for identical partitions (also when both are trivial).
double adjusted_rand_index(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Mean of the rows assigned to each cluster. Throws EmptyCluster if a
/// cluster in [0, k) has no rows.
Matrix cluster_means(const Matrix& matrix, const std::vector<std::size_t>& labels, std::size_t k);

/// Number of distinct clusters, checking labels form 0..k-1 without gaps.
std::size_t count_clusters(const std::vector<std::size_t>& labels);

}  // namespace mmrclust
