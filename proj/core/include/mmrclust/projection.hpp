#pragma once

#include "mmrclust/dataset.hpp"

#include <string>
#include <vector>

namespace mmrclust {

struct Projection2D {
    std::vector<std::string> labels;
    Matrix coords;  // n x 2
    /// Share of total variance captured by the two directions.
    double explained_variance_fraction = 0.0;
    /// 2 x d principal directions (rows are unit vectors).
    Matrix components;
};

/// Top-two principal components by power iteration with deflation, started
/// from the first standard basis vector. Each direction is signed so that
/// its largest-magnitude entry is positive.
Projection2D pca_2d(const DataMatrix& matrix);

/// `country,x,y,cluster`
std::string projection_to_csv(const Projection2D& projection, const std::vector<std::size_t>& clusters);

}  // namespace mmrclust
