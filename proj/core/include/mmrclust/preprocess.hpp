#pragma once

#include "mmrclust/dataset.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mmrclust {

enum class ImputeStrategy { MeanColumn, LinearInterpolate, ForwardFill };

enum class ScalerKind { Standard, MinMax };

std::string_view to_string(ImputeStrategy strategy) noexcept;
std::string_view to_string(ScalerKind kind) noexcept;
/// Accepts the names produced by to_string; throws InvalidArgument otherwise.
ImputeStrategy parse_impute_strategy(std::string_view name);
ScalerKind parse_scaler_kind(std::string_view name);

/// Per-column affine parameters. For Standard each pair is (mean, std); for
/// MinMax it is (min, max).
class FittedScaler {
public:
    FittedScaler(ScalerKind kind, std::vector<std::pair<double, double>> params);

    ScalerKind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return params_.size(); }
    const std::vector<std::pair<double, double>>& params() const noexcept { return params_; }

    friend bool operator==(const FittedScaler&, const FittedScaler&) = default;

private:
    ScalerKind kind_;
    std::vector<std::pair<double, double>> params_;
};

/// Maps labels to consecutive codes in first-occurrence order.
class LabelCodebook {
public:
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Throws InvalidArgument for an unknown label.
    std::size_t code_of(const std::string& label) const;
    bool contains(const std::string& label) const { return codes_.contains(label); }

private:
    friend LabelCodebook encode_labels(const std::vector<std::string>& labels);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> codes_;
};

DataMatrix impute(const DataMatrix& matrix, ImputeStrategy strategy);

/// Population (1/n) standard deviation for Standard.
FittedScaler fit_scaler(const DataMatrix& matrix, ScalerKind kind);

/// Zero-spread columns map to 0 under either kind.
DataMatrix apply_scaler(const FittedScaler& scaler, const DataMatrix& matrix);

LabelCodebook encode_labels(const std::vector<std::string>& labels);

struct OutlierCell {
    std::size_t row;
    std::size_t col;
    double z;
};

/// Lists cells of an already standardized matrix whose magnitude exceeds
/// the threshold. Nothing is modified.
std::vector<OutlierCell> flag_outliers(const DataMatrix& standardized, double threshold = 4.0);

struct PreprocessResult {
    DataMatrix scaled;
    FittedScaler scaler;
};

/// impute, then fit and apply a scaler on the imputed data.
PreprocessResult preprocess(const DataMatrix& raw,
                            ImputeStrategy strategy = ImputeStrategy::LinearInterpolate,
                            ScalerKind kind = ScalerKind::Standard);

}  // namespace mmrclust
