#pragma once

#include "mmrclust/matrix.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mmrclust::hier {

enum class Linkage { Single, Complete, Average, Ward };

std::string_view to_string(Linkage linkage) noexcept;
Linkage parse_linkage(std::string_view name);

/// One agglomeration step. left < right are node ids: leaves are 0..n-1,
/// the cluster created by merge j gets id n + j.
struct Merge {
    std::size_t left;
    std::size_t right;
    double distance;
    std::size_t size;

    friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
    std::size_t leaf_count = 0;
    Linkage linkage = Linkage::Average;
    std::vector<Merge> merges;
};

/// Greedy agglomeration over a full distance matrix updated with the
/// Lance-Williams recurrence. Equal distances resolve to the smallest
/// (min id, max id) pair. Ward runs on squared Euclidean distances and
/// reports sqrt(2 * delta SSE), which equals the Euclidean distance for two
/// singletons.
Dendrogram agglomerate(const Matrix& matrix, Linkage linkage);

/// Flat clustering obtained by undoing the last k-1 merges. Clusters are
/// numbered in order of their smallest leaf id.
std::vector<std::size_t> cut(const Dendrogram& dendrogram, std::size_t k);

/// `left,right,distance,size` in merge order.
std::string to_csv(const Dendrogram& dendrogram);

}  // namespace mmrclust::hier
