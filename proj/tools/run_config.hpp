#pragma once

#include "mmrclust/hier.hpp"
#include "mmrclust/model_store.hpp"
#include "mmrclust/pairing.hpp"
#include "mmrclust/preprocess.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mmrclust::cli {

/// Bad or inconsistent arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InputFormat { Wide, Long };

struct InputSpec {
    std::string path;
    InputFormat format = InputFormat::Wide;
};

struct ClusterConfig {
    InputSpec input;
    Method method = Method::KMeans;
    std::optional<std::size_t> k;
    hier::Linkage linkage = hier::Linkage::Average;
    double damping = 0.5;
    std::optional<double> preference;  // empty: median
    std::uint64_t seed = 42;
    std::size_t restarts = 10;
    std::optional<std::size_t> max_iter;
    ImputeStrategy impute = ImputeStrategy::LinearInterpolate;
    ScalerKind scale = ScalerKind::Standard;
    std::optional<std::size_t> elbow_max;

    /// Throws UsageError when method parameters do not fit the method.
    void validate() const;
};

struct PairConfig {
    InputSpec input;
    ImputeStrategy impute = ImputeStrategy::LinearInterpolate;
    ScalerKind scale = ScalerKind::Standard;
    pairing::PairingConfig pairing;
};

struct PredictConfig {
    InputSpec input;
    std::string model_path;
};

InputFormat parse_format(const std::string& name);
std::string to_string(InputFormat format);

nlohmann::ordered_json to_json(const ClusterConfig& c);
nlohmann::ordered_json to_json(const PairConfig& c);
nlohmann::ordered_json to_json(const PredictConfig& c);

ClusterConfig cluster_config_from_json(const nlohmann::ordered_json& j);
PairConfig pair_config_from_json(const nlohmann::ordered_json& j);
PredictConfig predict_config_from_json(const nlohmann::ordered_json& j);

}  // namespace mmrclust::cli
