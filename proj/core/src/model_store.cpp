#include "mmrclust/model_store.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"
#include "mmrclust/kmeans.hpp"

#include <json.hpp>

#include <cmath>

namespace mmrclust {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::KMeans: return "kmeans";
    case Method::Hier: return "hier";
    case Method::AffinityPropagation: return "ap";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (auto m : {Method::KMeans, Method::Hier, Method::AffinityPropagation}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

void validate(const ClusterModel& model)
{
    if (model.k() < 1) {
        throw Error(ErrorCode::InvariantViolation, "model has no reference points");
    }
    if (model.year_end <= model.year_start) {
        throw Error(ErrorCode::InvariantViolation, "year range must span at least two years");
    }
    const auto span = static_cast<std::size_t>(model.year_end - model.year_start + 1);
    if (model.reference_points.cols() != span || model.scaler.dimension() != span) {
        throw Error(ErrorCode::InvariantViolation, "reference points, scaler and year range disagree in width");
    }
    if (!model.reference_points.all_finite()) {
        throw Error(ErrorCode::InvariantViolation, "reference points must be finite");
    }
}

std::string to_json(const ClusterModel& model)
{
    validate(model);
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["method"] = to_string(model.method);
    doc["k"] = model.k();
    doc["year_start"] = model.year_start;
    doc["year_end"] = model.year_end;
    doc["impute_strategy"] = to_string(model.impute_strategy);
    ordered_json params = ordered_json::array();
    for (const auto& [a, b] : model.scaler.params()) {
        params.push_back({a, b});
    }
    doc["scaler"] = {{"kind", to_string(model.scaler.kind())}, {"params", std::move(params)}};
    ordered_json points = ordered_json::array();
    for (std::size_t c = 0; c < model.k(); ++c) {
        const auto row = model.reference_points.row(c);
        points.push_back(ordered_json(std::vector<double>(row.begin(), row.end())));
    }
    doc["reference_points"] = std::move(points);
    doc["seed"] = model.seed;
    doc["library_version"] = model.library_version;
    doc["created_at"] = model.created_at;
    return doc.dump(2) + '\n';
}

ClusterModel from_json(std::string_view document)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptDocument, e.what());
    }
    if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        throw Error(ErrorCode::CorruptDocument, "missing integer schema_version");
    }
    if (doc["schema_version"].get<long long>() != kSchemaVersion) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "schema_version " + doc["schema_version"].dump() + " is not supported");
    }

    ClusterModel model;
    std::size_t k = 0;
    try {
        model.method = parse_method(doc.at("method").get<std::string>());
        k = doc.at("k").get<std::size_t>();
        model.year_start = doc.at("year_start").get<int>();
        model.year_end = doc.at("year_end").get<int>();
        model.impute_strategy = parse_impute_strategy(doc.at("impute_strategy").get<std::string>());
        const auto& scaler = doc.at("scaler");
        const ScalerKind kind = parse_scaler_kind(scaler.at("kind").get<std::string>());
        std::vector<std::pair<double, double>> params;
        for (const auto& p : scaler.at("params")) {
            if (!p.is_array() || p.size() != 2) {
                throw Error(ErrorCode::CorruptDocument, "scaler params must be pairs");
            }
            params.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        }
        model.scaler = FittedScaler(kind, std::move(params));
        std::vector<std::vector<double>> rows;
        for (const auto& r : doc.at("reference_points")) {
            rows.push_back(r.get<std::vector<double>>());
        }
        model.reference_points = Matrix::from_rows(rows);
        model.seed = doc.at("seed").get<std::uint64_t>();
        model.library_version = doc.value("library_version", std::string{});
        model.created_at = doc.at("created_at").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptDocument, e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) {
            throw Error(ErrorCode::CorruptDocument, e.what());
        }
        if (e.code() == ErrorCode::DimensionMismatch) {
            throw Error(ErrorCode::InvariantViolation, e.what());
        }
        throw;
    }
    if (k != model.k()) {
        throw Error(ErrorCode::InvariantViolation,
                    "k = " + std::to_string(k) + " but " + std::to_string(model.k()) + " reference points stored");
    }
    validate(model);
    return model;
}

void save(const ClusterModel& model, const std::filesystem::path& destination)
{
    write_text_file(destination, to_json(model));
}

ClusterModel load(const std::filesystem::path& source)
{
    return from_json(read_text_file(source));
}

Prediction predict(const ClusterModel& model, const Dataset& dataset)
{
    validate(model);
    if (dataset.year_start != model.year_start || dataset.year_end != model.year_end) {
        throw Error(ErrorCode::YearRangeMismatch,
                    "data covers " + std::to_string(dataset.year_start) + "-" + std::to_string(dataset.year_end) +
                        ", model expects " + std::to_string(model.year_start) + "-" +
                        std::to_string(model.year_end));
    }
    const DataMatrix raw = to_matrix(dataset);
    const DataMatrix scaled = apply_scaler(model.scaler, impute(raw, model.impute_strategy));

    Prediction out;
    out.countries = scaled.labels;
    out.labels = kmeans::assign(model.reference_points, scaled.cells);
    out.distances.reserve(out.labels.size());
    for (std::size_t i = 0; i < out.labels.size(); ++i) {
        out.distances.push_back(euclidean_distance(scaled.cells.row(i), model.reference_points.row(out.labels[i])));
    }
    return out;
}

std::string labels_to_csv(const std::vector<std::string>& countries, const std::vector<std::size_t>& labels)
{
    if (countries.size() != labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per country required");
    }
    std::string out = "country,cluster\n";
    for (std::size_t i = 0; i < countries.size(); ++i) {
        out += countries[i] + ',' + std::to_string(labels[i]) + '\n';
    }
    return out;
}

}  // namespace mmrclust
