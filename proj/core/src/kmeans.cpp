#include "mmrclust/kmeans.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/metrics.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mmrclust::kmeans {

namespace {

constexpr double kRelativeEpsilon = 1e-30;

void check_k(const Matrix& matrix, std::size_t k)
{
    if (k == 0) {
        throw Error(ErrorCode::KZero, "k must be at least 1");
    }
    if (k > matrix.rows()) {
        throw Error(ErrorCode::KTooLarge,
                    "k = " + std::to_string(k) + " exceeds row count " + std::to_string(matrix.rows()));
    }
}

/// Gives every empty cluster the point farthest from its own centroid,
/// taken only from clusters that keep at least one member.
void repair_empty_clusters(const Matrix& matrix, Matrix& centroids, std::vector<std::size_t>& labels)
{
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> counts(k, 0);
    for (auto l : labels) {
        ++counts[l];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) {
            continue;
        }
        std::size_t donor = matrix.rows();
        double worst = -1.0;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            if (counts[labels[i]] < 2) {
                continue;
            }
            const double d = squared_distance(matrix.row(i), centroids.row(labels[i]));
            if (d > worst) {
                worst = d;
                donor = i;
            }
        }
        --counts[labels[donor]];
        labels[donor] = c;
        counts[c] = 1;
        std::copy(matrix.row(donor).begin(), matrix.row(donor).end(), centroids.row(c).begin());
    }
}

}  // namespace

Matrix kmeanspp_init(const Matrix& matrix, std::size_t k, std::uint64_t seed)
{
    check_k(matrix, k);
    require_finite(matrix, "kmeanspp_init");
    const std::size_t n = matrix.rows();
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<bool> taken(n, false);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

    auto take = [&](std::size_t idx) {
        chosen.push_back(idx);
        taken[idx] = true;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(matrix.row(i), matrix.row(idx)));
        }
    };

    take(detail::uniform_index(gen, n));
    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!taken[i]) {
                total += nearest[i];
            }
        }
        const double u = detail::uniform01(gen);
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = u * total;
            double cumulative = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i] || nearest[i] <= 0.0) {
                    continue;
                }
                cumulative += nearest[i];
                pick = i;
                if (cumulative > target) {
                    break;
                }
            }
        }
        if (pick == n) {
            // every remaining row duplicates a chosen one: pick uniformly
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i]) {
                    rest.push_back(i);
                }
            }
            pick = rest[static_cast<std::size_t>(u * static_cast<double>(rest.size())) % rest.size()];
        }
        take(pick);
    }

    Matrix centroids(k, matrix.cols());
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(matrix.row(chosen[c]).begin(), matrix.row(chosen[c]).end(), centroids.row(c).begin());
    }
    return centroids;
}

std::vector<std::size_t> assign(const Matrix& centroids, const Matrix& matrix)
{
    if (centroids.cols() != matrix.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "centroids have " + std::to_string(centroids.cols()) +
                                                      " columns, data has " + std::to_string(matrix.cols()));
    }
    if (centroids.rows() == 0) {
        throw Error(ErrorCode::KZero, "no centroids");
    }
    std::vector<std::size_t> labels(matrix.rows(), 0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        double best = squared_distance(matrix.row(i), centroids.row(0));
        for (std::size_t c = 1; c < centroids.rows(); ++c) {
            const double d = squared_distance(matrix.row(i), centroids.row(c));
            if (d < best) {
                best = d;
                labels[i] = c;
            }
        }
    }
    return labels;
}

double compute_inertia(const Matrix& matrix, const Matrix& centroids, const std::vector<std::size_t>& labels)
{
    if (centroids.cols() != matrix.cols() || labels.size() != matrix.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix, centroids and labels disagree in shape");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        if (labels[i] >= centroids.rows()) {
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(labels[i]) + " at row " +
                                                        std::to_string(i) + " has no centroid");
        }
        total += squared_distance(matrix.row(i), centroids.row(labels[i]));
    }
    return total;
}

KMeansModel fit(const Matrix& matrix, std::size_t k, std::uint64_t seed, std::size_t max_iter, double tol)
{
    check_k(matrix, k);
    require_finite(matrix, "kmeans::fit");
    if (max_iter == 0) {
        throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
    }
    if (!(tol >= 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorCode::InvalidArgument, "tol must be a finite value >= 0");
    }

    KMeansModel model;
    model.k = k;
    model.seed = seed;
    model.centroids = kmeanspp_init(matrix, k, seed);
    model.labels = assign(model.centroids, matrix);
    repair_empty_clusters(matrix, model.centroids, model.labels);
    double inertia = compute_inertia(matrix, model.centroids, model.labels);
    model.inertia_history.push_back(inertia);

    std::vector<std::size_t> previous;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        previous = model.labels;
        model.centroids = cluster_means(matrix, model.labels, k);
        model.labels = assign(model.centroids, matrix);
        repair_empty_clusters(matrix, model.centroids, model.labels);
        const double next = compute_inertia(matrix, model.centroids, model.labels);
        model.inertia_history.push_back(next);
        model.iterations_run = it;
        const double change = std::abs(inertia - next) / std::max(inertia, kRelativeEpsilon);
        inertia = next;
        if (change <= tol) {
            break;
        }
    }
    if (model.labels != previous) {
        // stopped on tol or max_iter with labels still moving: make the
        // centroids the means of the labels we report
        model.centroids = cluster_means(matrix, model.labels, k);
        inertia = compute_inertia(matrix, model.centroids, model.labels);
        model.inertia_history.push_back(inertia);
    }
    model.inertia = inertia;
    return model;
}

KMeansModel fit_best(const Matrix& matrix, std::size_t k, std::uint64_t seed, std::size_t restarts,
                     std::size_t max_iter, double tol)
{
    if (restarts == 0) {
        throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
    }
    KMeansModel best = fit(matrix, k, seed, max_iter, tol);
    for (std::size_t r = 1; r < restarts; ++r) {
        KMeansModel candidate = fit(matrix, k, seed + r, max_iter, tol);
        if (candidate.inertia < best.inertia) {
            best = std::move(candidate);
        }
    }
    return best;
}

std::vector<ElbowPoint> elbow_scan(const Matrix& matrix, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                                   std::size_t restarts)
{
    if (k_min == 0) {
        throw Error(ErrorCode::KZero, "k_min must be at least 1");
    }
    if (k_min > k_max) {
        throw Error(ErrorCode::InvalidArgument, "k_min exceeds k_max");
    }
    check_k(matrix, k_max);
    std::vector<ElbowPoint> points;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        points.push_back({k, fit_best(matrix, k, seed, restarts).inertia});
    }
    return points;
}

double silhouette(const Matrix& matrix, const std::vector<std::size_t>& labels)
{
    if (labels.size() != matrix.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per row required");
    }
    if (matrix.rows() < 2) {
        throw Error(ErrorCode::TooFewRows, "silhouette needs at least two points");
    }
    const std::size_t k = count_clusters(labels);
    if (k < 2) {
        throw Error(ErrorCode::SingleCluster, "silhouette needs at least two clusters");
    }
    const std::size_t n = matrix.rows();
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) {
        ++sizes[l];
    }
    double total = 0.0;
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sums[labels[j]] += euclidean_distance(matrix.row(i), matrix.row(j));
            }
        }
        const std::size_t own = labels[i];
        if (sizes[own] == 1) {
            continue;
        }
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own) {
                b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
            }
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) {
            total += (b - a) / denom;
        }
    }
    return total / static_cast<double>(n);
}

}  // namespace mmrclust::kmeans
