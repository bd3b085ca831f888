#pragma once

#include "mmrclust/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmrclust::kmeans {

inline constexpr std::size_t kDefaultMaxIter = 300;
inline constexpr double kDefaultTol = 1e-6;

/// Hard-assignment K-Means solution. inertia is the objective
/// J = sum_i ||x_i - mu_{label(i)}||^2 on the training matrix.
struct KMeansModel {
    std::size_t k = 0;
    Matrix centroids;
    std::vector<std::size_t> labels;
    double inertia = 0.0;
    std::size_t iterations_run = 0;
    std::uint64_t seed = 0;
    /// J after the seeding assignment and after every Lloyd iteration.
    std::vector<double> inertia_history;
};

/// k-means++ seeding. Deterministic in (matrix, k, seed); always picks k
/// distinct row indices.
Matrix kmeanspp_init(const Matrix& matrix, std::size_t k, std::uint64_t seed);

/// Lloyd iterations from k-means++ seeds. Stops once the relative change of
/// J falls to tol or after max_iter iterations. Empty clusters take over the
/// point farthest from its centroid.
KMeansModel fit(const Matrix& matrix, std::size_t k, std::uint64_t seed, std::size_t max_iter = kDefaultMaxIter,
                double tol = kDefaultTol);

/// Best (lowest J) of `restarts` fits seeded seed, seed+1, ...
KMeansModel fit_best(const Matrix& matrix, std::size_t k, std::uint64_t seed, std::size_t restarts,
                     std::size_t max_iter = kDefaultMaxIter, double tol = kDefaultTol);

double compute_inertia(const Matrix& matrix, const Matrix& centroids, const std::vector<std::size_t>& labels);

/// Nearest centroid per row; ties go to the lowest centroid index.
std::vector<std::size_t> assign(const Matrix& centroids, const Matrix& matrix);

struct ElbowPoint {
    std::size_t k;
    double inertia;
};

std::vector<ElbowPoint> elbow_scan(const Matrix& matrix, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                                   std::size_t restarts);

/// Mean silhouette coefficient with Euclidean distances. Points in singleton
/// clusters score 0, as do points with a = b = 0.
double silhouette(const Matrix& matrix, const std::vector<std::size_t>& labels);

}  // namespace mmrclust::kmeans
