#pragma once

#include "mmrclust/dataset.hpp"

#include <cstdint>
#include <vector>

namespace mmrclust::synthetic {

struct LabeledDataset {
    Dataset dataset;
    std::vector<std::size_t> truth;
};

/// Country i follows regime i % 3: 0 low and flat, 1 mid-level and
/// declining, 2 high and rising. Levels get a per-country jitter and each
/// year a few percent of noise.
LabeledDataset mmr_regimes(std::size_t countries, int year_start, int year_end, std::uint64_t seed);

/// Two declining countries at nearly the same level and two rising ones at
/// very different levels; noise is 5% of the yearly slope. After column
/// standardization the decliners pair up as similar and every
/// decliner/riser combination is opposite.
Dataset trend_pairs(int year_start, int year_end, std::uint64_t seed);

struct LabeledMatrix {
    Matrix points;
    std::vector<std::size_t> truth;
};

/// `per_blob` Gaussian points (isotropic sigma) around each center row.
LabeledMatrix gaussian_blobs(const Matrix& centers, std::size_t per_blob, double sigma, std::uint64_t seed);

}  // namespace mmrclust::synthetic
