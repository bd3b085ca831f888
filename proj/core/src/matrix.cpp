#include "mmrclust/matrix.hpp"

#include "mmrclust/error.hpp"

#include <cmath>
#include <string>

namespace mmrclust {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix buffer holds " + std::to_string(data_.size()) + " values, expected " +
                        std::to_string(rows_ * cols_));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty()) {
        return {};
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw Error(ErrorCode::DimensionMismatch, "ragged rows");
        }
        data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows)
{
    std::vector<std::vector<double>> nested;
    nested.reserve(rows.size());
    for (const auto& r : rows) {
        nested.emplace_back(r);
    }
    return from_rows(nested);
}

bool Matrix::all_finite() const noexcept
{
    for (double v : data_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    return std::sqrt(squared_distance(a, b));
}

void require_finite(const Matrix& m, const char* context)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(m(i, j))) {
                throw Error(ErrorCode::NonFiniteCell, std::string(context) + ": cell (" + std::to_string(i) +
                                                          ", " + std::to_string(j) + ") is not finite");
            }
        }
    }
}

}  // namespace mmrclust
