#pragma once

#include "mmrclust/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mmrclust::affinity {

/// Message-passing schedule. An empty preference means "median of the
/// off-diagonal similarities" (lower median for even counts).
struct APConfig {
    double damping = 0.5;
    std::size_t max_iter = 200;
    std::size_t convergence_window = 15;
    std::optional<double> preference;

    /// Throws InvalidConfig unless damping is in [0.5, 1), max_iter >= 1 and
    /// 1 <= convergence_window <= max_iter.
    void validate() const;
};

struct APState {
    Matrix similarity;
    Matrix responsibility;
    Matrix availability;
    std::size_t iteration = 0;
};

struct APResult {
    std::vector<std::size_t> exemplar_indices;
    /// Index into exemplar_indices for every row.
    std::vector<std::size_t> labels;
    bool converged = false;
    std::size_t iterations_run = 0;
};

/// s(i, k) = -||x_i - x_k||^2 off the diagonal, the preference on it.
Matrix similarity_matrix(const Matrix& matrix, std::optional<double> preference);

/// r(i,k) <- s(i,k) - max_{k' != k} (a(i,k') + s(i,k')), blended as
/// damping * previous + (1 - damping) * raw. damping may be any value in [0, 1].
Matrix update_responsibility(const Matrix& similarity, const Matrix& availability, const Matrix& previous,
                             double damping);

/// a(k,k) <- sum_{i' != k} max(0, r(i',k));
/// a(i,k) <- min(0, r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k))), then damped.
Matrix update_availability(const Matrix& responsibility, const Matrix& previous, double damping);

/// c(i,k) = r(i,k) + a(i,k).
Matrix criterion(const Matrix& responsibility, const Matrix& availability);

/// Runs updates until the exemplar set {k : c(k,k) > 0} is non-empty and
/// unchanged for convergence_window iterations, or max_iter is reached.
APResult fit(const Matrix& matrix, const APConfig& config = {});

/// Same as fit, also returning the final message matrices.
APResult fit(const Matrix& matrix, const APConfig& config, APState& state);

}  // namespace mmrclust::affinity
