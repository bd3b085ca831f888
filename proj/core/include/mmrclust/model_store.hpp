#pragma once

#include "mmrclust/dataset.hpp"
#include "mmrclust/preprocess.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mmrclust {

inline constexpr int kSchemaVersion = 1;

enum class Method { KMeans, Hier, AffinityPropagation };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

/// A fitted pipeline: the preprocessing parameters plus one reference point
/// per cluster (centroids, exemplar rows or cut means, depending on method).
struct ClusterModel {
    Method method = Method::KMeans;
    Matrix reference_points;
    FittedScaler scaler{ScalerKind::Standard, {}};
    ImputeStrategy impute_strategy = ImputeStrategy::LinearInterpolate;
    int year_start = 0;
    int year_end = 0;
    std::uint64_t seed = 0;
    std::string created_at;
    std::string library_version;

    std::size_t k() const noexcept { return reference_points.rows(); }

    friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

/// Throws InvariantViolation describing the first broken invariant.
void validate(const ClusterModel& model);

/// Canonical JSON document; fields always appear in the same order.
std::string to_json(const ClusterModel& model);
ClusterModel from_json(std::string_view document);

void save(const ClusterModel& model, const std::filesystem::path& destination);
ClusterModel load(const std::filesystem::path& source);

struct Prediction {
    std::vector<std::string> countries;
    std::vector<std::size_t> labels;
    /// Euclidean distance (in scaled space) to the chosen reference point.
    std::vector<double> distances;
};

/// Imputes with the stored strategy, applies the stored scaler as-is and
/// labels each country with its nearest reference point.
Prediction predict(const ClusterModel& model, const Dataset& dataset);

/// `country,cluster`
std::string labels_to_csv(const std::vector<std::string>& countries, const std::vector<std::size_t>& labels);

}  // namespace mmrclust
