#include "run_config.hpp"

#include "mmrclust/error.hpp"

namespace mmrclust::cli {

using nlohmann::ordered_json;

void ClusterConfig::validate() const
{
    if (method == Method::AffinityPropagation) {
        if (k) {
            throw UsageError("--k is not accepted for method ap; the cluster count is found automatically");
        }
    } else if (!k) {
        throw UsageError("--k is required for method " + std::string(mmrclust::to_string(method)));
    }
    if (k && *k == 0) {
        throw UsageError("--k must be at least 1");
    }
    if (restarts == 0) {
        throw UsageError("--restarts must be at least 1");
    }
    if (max_iter && *max_iter == 0) {
        throw UsageError("--max-iter must be at least 1");
    }
    if (elbow_max && *elbow_max == 0) {
        throw UsageError("--elbow-max must be at least 1");
    }
}

InputFormat parse_format(const std::string& name)
{
    if (name == "wide") {
        return InputFormat::Wide;
    }
    if (name == "long") {
        return InputFormat::Long;
    }
    throw UsageError("unknown format '" + name + "'");
}

std::string to_string(InputFormat format) { return format == InputFormat::Wide ? "wide" : "long"; }

namespace {

template <typename T>
ordered_json optional_json(const std::optional<T>& v)
{
    return v ? ordered_json(*v) : ordered_json();
}

template <typename T>
std::optional<T> optional_from(const ordered_json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

ordered_json input_json(const InputSpec& in) { return {{"path", in.path}, {"format", to_string(in.format)}}; }

InputSpec input_from(const ordered_json& j)
{
    return {j.at("path").get<std::string>(), parse_format(j.at("format").get<std::string>())};
}

}  // namespace

ordered_json to_json(const ClusterConfig& c)
{
    ordered_json j;
    j["input"] = input_json(c.input);
    j["method"] = mmrclust::to_string(c.method);
    j["k"] = optional_json(c.k);
    j["linkage"] = hier::to_string(c.linkage);
    j["damping"] = c.damping;
    j["preference"] = c.preference ? ordered_json(*c.preference) : ordered_json("median");
    j["seed"] = c.seed;
    j["restarts"] = c.restarts;
    j["max_iter"] = optional_json(c.max_iter);
    j["impute"] = mmrclust::to_string(c.impute);
    j["scale"] = mmrclust::to_string(c.scale);
    j["elbow_max"] = optional_json(c.elbow_max);
    return j;
}

ordered_json to_json(const PairConfig& c)
{
    ordered_json j;
    j["input"] = input_json(c.input);
    j["impute"] = mmrclust::to_string(c.impute);
    j["scale"] = mmrclust::to_string(c.scale);
    j["similar_r"] = c.pairing.similar_r_min;
    j["opposite_r"] = c.pairing.opposite_r_max;
    j["alpha"] = c.pairing.alpha;
    j["level_max"] = c.pairing.level_distance_max;
    j["mode"] = pairing::to_string(c.pairing.mode);
    j["include_neither"] = c.pairing.include_neither;
    return j;
}

ordered_json to_json(const PredictConfig& c)
{
    ordered_json j;
    j["input"] = input_json(c.input);
    j["model"] = c.model_path;
    return j;
}

ClusterConfig cluster_config_from_json(const ordered_json& j)
{
    ClusterConfig c;
    c.input = input_from(j.at("input"));
    c.method = parse_method(j.at("method").get<std::string>());
    c.k = optional_from<std::size_t>(j, "k");
    c.linkage = hier::parse_linkage(j.at("linkage").get<std::string>());
    c.damping = j.at("damping").get<double>();
    const auto& pref = j.at("preference");
    if (!pref.is_string()) {
        c.preference = pref.get<double>();
    }
    c.seed = j.at("seed").get<std::uint64_t>();
    c.restarts = j.at("restarts").get<std::size_t>();
    c.max_iter = optional_from<std::size_t>(j, "max_iter");
    c.impute = parse_impute_strategy(j.at("impute").get<std::string>());
    c.scale = parse_scaler_kind(j.at("scale").get<std::string>());
    c.elbow_max = optional_from<std::size_t>(j, "elbow_max");
    return c;
}

PairConfig pair_config_from_json(const ordered_json& j)
{
    PairConfig c;
    c.input = input_from(j.at("input"));
    c.impute = parse_impute_strategy(j.at("impute").get<std::string>());
    c.scale = parse_scaler_kind(j.at("scale").get<std::string>());
    c.pairing.similar_r_min = j.at("similar_r").get<double>();
    c.pairing.opposite_r_max = j.at("opposite_r").get<double>();
    c.pairing.alpha = j.at("alpha").get<double>();
    c.pairing.level_distance_max = j.at("level_max").get<double>();
    c.pairing.mode = pairing::parse_mode(j.at("mode").get<std::string>());
    c.pairing.include_neither = j.at("include_neither").get<bool>();
    return c;
}

PredictConfig predict_config_from_json(const ordered_json& j)
{
    return {input_from(j.at("input")), j.at("model").get<std::string>()};
}

}  // namespace mmrclust::cli
