#include "mmrclust/affinity.hpp"

#include "mmrclust/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mmrclust::affinity {

namespace {

void require_square_pair(const Matrix& a, const Matrix& b, const char* what)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": matrices must be square and equal-sized");
    }
}

void check_damping(double damping)
{
    if (!(damping >= 0.0 && damping <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "damping must lie in [0, 1]");
    }
}

/// damping * previous + (1 - damping) * raw. A damping of 1 returns the
/// previous messages bit-for-bit.
Matrix damp(const Matrix& previous, Matrix raw, double damping)
{
    if (damping == 1.0) {
        return previous;
    }
    if (damping == 0.0) {
        return raw;
    }
    auto out = raw.data();
    const auto prev = previous.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = damping * prev[i] + (1.0 - damping) * out[i];
    }
    return raw;
}

std::vector<std::size_t> exemplars_of(const Matrix& crit)
{
    std::vector<std::size_t> ex;
    for (std::size_t k = 0; k < crit.rows(); ++k) {
        if (crit(k, k) > 0.0) {
            ex.push_back(k);
        }
    }
    return ex;
}

}  // namespace

void APConfig::validate() const
{
    if (!(damping >= 0.5 && damping < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "damping must lie in [0.5, 1)");
    }
    if (max_iter < 1) {
        throw Error(ErrorCode::InvalidConfig, "max_iter must be at least 1");
    }
    if (convergence_window < 1 || convergence_window > max_iter) {
        throw Error(ErrorCode::InvalidConfig, "convergence_window must lie in [1, max_iter]");
    }
    if (preference && !std::isfinite(*preference)) {
        throw Error(ErrorCode::InvalidConfig, "preference must be finite");
    }
}

Matrix similarity_matrix(const Matrix& matrix, std::optional<double> preference)
{
    require_finite(matrix, "similarity_matrix");
    const std::size_t n = matrix.rows();
    Matrix s(n, n);
    std::vector<double> off;
    off.reserve(n * (n - (n > 0 ? 1 : 0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i != k) {
                s(i, k) = -squared_distance(matrix.row(i), matrix.row(k));
                off.push_back(s(i, k));
            }
        }
    }
    double diag = 0.0;
    if (preference) {
        diag = *preference;
    } else if (!off.empty()) {
        const std::size_t mid = (off.size() - 1) / 2;
        std::nth_element(off.begin(), off.begin() + static_cast<std::ptrdiff_t>(mid), off.end());
        diag = off[mid];
    }
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = diag;
    }
    return s;
}

Matrix update_responsibility(const Matrix& similarity, const Matrix& availability, const Matrix& previous,
                             double damping)
{
    require_square_pair(similarity, availability, "update_responsibility");
    require_square_pair(similarity, previous, "update_responsibility");
    check_damping(damping);
    const std::size_t n = similarity.rows();
    Matrix raw(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        // top two of a(i,k') + s(i,k') over the row
        double first = -std::numeric_limits<double>::infinity();
        double second = -std::numeric_limits<double>::infinity();
        std::size_t first_at = n;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = availability(i, k) + similarity(i, k);
            if (v > first) {
                second = first;
                first = v;
                first_at = k;
            } else if (v > second) {
                second = v;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            double competitor = k == first_at ? second : first;
            if (n == 1) {
                competitor = 0.0;  // no k' != k exists
            }
            raw(i, k) = similarity(i, k) - competitor;
        }
    }
    return damp(previous, std::move(raw), damping);
}

Matrix update_availability(const Matrix& responsibility, const Matrix& previous, double damping)
{
    require_square_pair(responsibility, previous, "update_availability");
    check_damping(damping);
    const std::size_t n = responsibility.rows();
    std::vector<double> positive_sum(n, 0.0);  // sum_{i' != k} max(0, r(i',k))
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i != k) {
                positive_sum[k] += std::max(0.0, responsibility(i, k));
            }
        }
    }
    Matrix raw(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) {
                raw(k, k) = positive_sum[k];
            } else {
                const double others = positive_sum[k] - std::max(0.0, responsibility(i, k));
                raw(i, k) = std::min(0.0, responsibility(k, k) + others);
            }
        }
    }
    return damp(previous, std::move(raw), damping);
}

Matrix criterion(const Matrix& responsibility, const Matrix& availability)
{
    if (responsibility.rows() != availability.rows() || responsibility.cols() != availability.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "criterion: shapes differ");
    }
    Matrix c = responsibility;
    auto out = c.data();
    const auto a = availability.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += a[i];
    }
    return c;
}

APResult fit(const Matrix& matrix, const APConfig& config)
{
    APState state;
    return fit(matrix, config, state);
}

APResult fit(const Matrix& matrix, const APConfig& config, APState& state)
{
    config.validate();
    const std::size_t n = matrix.rows();
    if (n == 0) {
        throw Error(ErrorCode::TooFewRows, "affinity propagation needs at least one row");
    }
    state.similarity = similarity_matrix(matrix, config.preference);
    state.responsibility = Matrix(n, n);
    state.availability = Matrix(n, n);
    state.iteration = 0;

    APResult result;
    if (n == 1) {
        result.exemplar_indices = {0};
        result.labels = {0};
        result.converged = true;
        return result;
    }

    std::vector<std::size_t> exemplars;
    std::size_t stable = 0;
    for (std::size_t it = 1; it <= config.max_iter; ++it) {
        state.responsibility =
            update_responsibility(state.similarity, state.availability, state.responsibility, config.damping);
        state.availability = update_availability(state.responsibility, state.availability, config.damping);
        state.iteration = it;
        auto current = exemplars_of(criterion(state.responsibility, state.availability));
        stable = current == exemplars ? stable + 1 : 1;
        exemplars = std::move(current);
        if (!exemplars.empty() && stable >= config.convergence_window) {
            result.converged = true;
            break;
        }
    }
    result.iterations_run = state.iteration;

    const Matrix crit = criterion(state.responsibility, state.availability);
    if (exemplars.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (crit(k, k) > crit(best, best)) {
                best = k;
            }
        }
        exemplars = {best};
    }
    result.labels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t e = 1; e < exemplars.size(); ++e) {
            if (crit(i, exemplars[e]) > crit(i, exemplars[best])) {
                best = e;
            }
        }
        result.labels[i] = best;
    }
    for (std::size_t e = 0; e < exemplars.size(); ++e) {
        result.labels[exemplars[e]] = e;
    }
    result.exemplar_indices = std::move(exemplars);
    return result;
}

}  // namespace mmrclust::affinity
