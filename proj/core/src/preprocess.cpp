#include "mmrclust/preprocess.hpp"

#include "mmrclust/error.hpp"

#include <cmath>
#include <optional>

namespace mmrclust {

std::string_view to_string(ImputeStrategy strategy) noexcept
{
    switch (strategy) {
    case ImputeStrategy::MeanColumn: return "mean";
    case ImputeStrategy::LinearInterpolate: return "linear";
    case ImputeStrategy::ForwardFill: return "ffill";
    }
    return "unknown";
}

std::string_view to_string(ScalerKind kind) noexcept
{
    switch (kind) {
    case ScalerKind::Standard: return "standard";
    case ScalerKind::MinMax: return "minmax";
    }
    return "unknown";
}

ImputeStrategy parse_impute_strategy(std::string_view name)
{
    for (auto s : {ImputeStrategy::MeanColumn, ImputeStrategy::LinearInterpolate, ImputeStrategy::ForwardFill}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown impute strategy '" + std::string(name) + "'");
}

ScalerKind parse_scaler_kind(std::string_view name)
{
    for (auto k : {ScalerKind::Standard, ScalerKind::MinMax}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown scaler '" + std::string(name) + "'");
}

FittedScaler::FittedScaler(ScalerKind kind, std::vector<std::pair<double, double>> params)
    : kind_(kind), params_(std::move(params))
{
    for (const auto& [a, b] : params_) {
        if (!std::isfinite(a) || !std::isfinite(b)) {
            throw Error(ErrorCode::InvariantViolation, "scaler parameters must be finite");
        }
        if (kind_ == ScalerKind::Standard && b < 0.0) {
            throw Error(ErrorCode::InvariantViolation, "standard deviation must be >= 0");
        }
        if (kind_ == ScalerKind::MinMax && b < a) {
            throw Error(ErrorCode::InvariantViolation, "max must be >= min");
        }
    }
}

std::size_t LabelCodebook::code_of(const std::string& label) const
{
    const auto it = codes_.find(label);
    if (it == codes_.end()) {
        throw Error(ErrorCode::InvalidArgument, "label '" + label + "' not in codebook");
    }
    return it->second;
}

namespace {

void fill_row_linear(std::span<double> row)
{
    std::optional<std::size_t> prev;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (is_missing(row[j])) {
            continue;
        }
        if (!prev) {
            for (std::size_t g = 0; g < j; ++g) {
                row[g] = row[j];
            }
        } else if (j > *prev + 1) {
            const double lo = row[*prev];
            const double hi = row[j];
            const double span = static_cast<double>(j - *prev);
            for (std::size_t g = *prev + 1; g < j; ++g) {
                const double t = static_cast<double>(g - *prev) / span;
                row[g] = lo + t * (hi - lo);
            }
        }
        prev = j;
    }
    for (std::size_t g = *prev + 1; g < row.size(); ++g) {
        row[g] = row[*prev];
    }
}

void fill_row_forward(std::span<double> row)
{
    std::optional<double> last;
    for (auto& v : row) {
        if (is_missing(v)) {
            if (last) {
                v = *last;
            }
        } else {
            last = v;
        }
    }
    // leading gap: nearest later value
    std::optional<double> next;
    for (std::size_t j = row.size(); j-- > 0;) {
        if (is_missing(row[j])) {
            row[j] = *next;
        } else {
            next = row[j];
        }
    }
}

void require_complete(const DataMatrix& matrix)
{
    for (std::size_t i = 0; i < matrix.cells.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cells.cols(); ++j) {
            const double v = matrix.cells(i, j);
            if (is_missing(v)) {
                throw Error(ErrorCode::MissingCellsPresent,
                            "row '" + matrix.labels[i] + "' still has missing cells; impute first");
            }
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::NonFiniteCell, "row '" + matrix.labels[i] + "' holds an infinite value");
            }
        }
    }
}

}  // namespace

DataMatrix impute(const DataMatrix& matrix, ImputeStrategy strategy)
{
    DataMatrix out = matrix;
    Matrix& m = out.cells;
    if (strategy == ImputeStrategy::MeanColumn) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double sum = 0.0;
            std::size_t present = 0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (!is_missing(m(i, j))) {
                    sum += m(i, j);
                    ++present;
                }
            }
            if (present == 0) {
                throw Error(ErrorCode::AllMissingColumn, "column " + std::to_string(out.years.at(j)) +
                                                             " has no observations");
            }
            const double mean = sum / static_cast<double>(present);
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (is_missing(m(i, j))) {
                    m(i, j) = mean;
                }
            }
        }
        return out;
    }

    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        bool any_present = false;
        bool any_missing = false;
        for (double v : row) {
            (is_missing(v) ? any_missing : any_present) = true;
        }
        if (!any_missing) {
            continue;
        }
        if (!any_present) {
            throw Error(ErrorCode::AllMissingRow, "country '" + out.labels.at(i) + "' has no observations");
        }
        if (strategy == ImputeStrategy::LinearInterpolate) {
            fill_row_linear(row);
        } else {
            fill_row_forward(row);
        }
    }
    return out;
}

FittedScaler fit_scaler(const DataMatrix& matrix, ScalerKind kind)
{
    require_complete(matrix);
    const Matrix& m = matrix.cells;
    if (m.rows() == 0) {
        throw Error(ErrorCode::EmptyDataset, "cannot fit a scaler on zero rows");
    }
    const double n = static_cast<double>(m.rows());
    std::vector<std::pair<double, double>> params;
    params.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (kind == ScalerKind::Standard) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                sum += m(i, j);
            }
            const double mean = sum / n;
            double ss = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                const double d = m(i, j) - mean;
                ss += d * d;
            }
            params.emplace_back(mean, std::sqrt(ss / n));
        } else {
            double lo = m(0, j);
            double hi = m(0, j);
            for (std::size_t i = 1; i < m.rows(); ++i) {
                lo = std::min(lo, m(i, j));
                hi = std::max(hi, m(i, j));
            }
            params.emplace_back(lo, hi);
        }
    }
    return FittedScaler(kind, std::move(params));
}

DataMatrix apply_scaler(const FittedScaler& scaler, const DataMatrix& matrix)
{
    if (matrix.cells.cols() != scaler.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "scaler expects " + std::to_string(scaler.dimension()) +
                                                      " columns, matrix has " +
                                                      std::to_string(matrix.cells.cols()));
    }
    require_complete(matrix);
    DataMatrix out = matrix;
    Matrix& m = out.cells;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto [a, b] = scaler.params()[j];
        // Standard: (x - mean) / std. MinMax: (x - min) / (max - min).
        const double offset = a;
        const double spread = scaler.kind() == ScalerKind::Standard ? b : b - a;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            m(i, j) = spread > 0.0 ? (m(i, j) - offset) / spread : 0.0;
        }
    }
    return out;
}

LabelCodebook encode_labels(const std::vector<std::string>& labels)
{
    if (labels.empty()) {
        throw Error(ErrorCode::EmptyInput, "no labels to encode");
    }
    LabelCodebook book;
    for (const auto& label : labels) {
        if (book.codes_.try_emplace(label, book.labels_.size()).second) {
            book.labels_.push_back(label);
        }
    }
    return book;
}

std::vector<OutlierCell> flag_outliers(const DataMatrix& standardized, double threshold)
{
    std::vector<OutlierCell> cells;
    const Matrix& m = standardized.cells;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j)) > threshold) {
                cells.push_back({i, j, m(i, j)});
            }
        }
    }
    return cells;
}

PreprocessResult preprocess(const DataMatrix& raw, ImputeStrategy strategy, ScalerKind kind)
{
    DataMatrix imputed = impute(raw, strategy);
    FittedScaler scaler = fit_scaler(imputed, kind);
    DataMatrix scaled = apply_scaler(scaler, imputed);
    return {std::move(scaled), std::move(scaler)};
}

}  // namespace mmrclust
