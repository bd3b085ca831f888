#include "commands.hpp"

#include "sha256.hpp"

#include "mmrclust/affinity.hpp"
#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"
#include "mmrclust/kmeans.hpp"
#include "mmrclust/metrics.hpp"
#include "mmrclust/projection.hpp"
#include "mmrclust/version.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

namespace mmrclust::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct LoadedInput {
    Dataset dataset;
    std::string sha256;
};

LoadedInput load_input(const InputSpec& input)
{
    const std::string text = read_text_file(input.path);
    LoadedInput loaded;
    loaded.sha256 = sha256_hex(text);
    loaded.dataset = input.format == InputFormat::Wide ? parse_wide_csv(text) : parse_long_csv(text);
    return loaded;
}

/// Writes files into the output directory and remembers their names.
class OutputWriter {
public:
    explicit OutputWriter(fs::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw Error(ErrorCode::IOFailure, "cannot create " + dir_.string() + ": " + ec.message());
        }
    }

    void write(const std::string& name, std::string_view contents)
    {
        write_text_file(dir_ / name, contents);
        outputs_.files.push_back(name);
    }

    void save_model(const std::string& name, const ClusterModel& model)
    {
        save(model, dir_ / name);
        outputs_.files.push_back(name);
    }

    /// The manifest lists every file written before it.
    RunOutputs finish(const std::string& command, ordered_json config, const std::string& input_sha,
                      ordered_json extra = ordered_json::object())
    {
        ordered_json manifest;
        manifest["command"] = command;
        manifest["config"] = std::move(config);
        manifest["input_sha256"] = input_sha;
        for (auto& [key, value] : extra.items()) {
            manifest[key] = value;
        }
        manifest["outputs"] = outputs_.files;
        manifest["library_version"] = kVersion;
        manifest["created_at"] = timestamp_now();
        write("run_manifest.json", manifest.dump(2) + '\n');
        return outputs_;
    }

private:
    fs::path dir_;
    RunOutputs outputs_;
};

std::string outliers_csv(const DataMatrix& scaled)
{
    std::string out = "country,year,z\n";
    for (const auto& cell : flag_outliers(scaled)) {
        out += scaled.labels[cell.row] + ',' + std::to_string(scaled.years[cell.col]) + ',' + format_double(cell.z) +
               '\n';
    }
    return out;
}

}  // namespace

std::string timestamp_now()
{
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

RunOutputs run_cluster(const ClusterConfig& config, const fs::path& out_dir, std::ostream& log)
{
    config.validate();
    const LoadedInput input = load_input(config.input);
    const DataMatrix raw = to_matrix(input.dataset);
    const PreprocessResult prep = preprocess(raw, config.impute, config.scale);
    const Matrix& x = prep.scaled.cells;
    const std::size_t n = x.rows();

    OutputWriter writer(out_dir);
    std::vector<std::size_t> labels;
    Matrix reference;
    std::vector<std::string> notes;
    switch (config.method) {
    case Method::KMeans: {
        const auto model = kmeans::fit_best(x, *config.k, config.seed, config.restarts,
                                            config.max_iter.value_or(kmeans::kDefaultMaxIter));
        labels = model.labels;
        reference = model.centroids;
        log << "kmeans: k=" << model.k << " inertia=" << format_double(model.inertia) << '\n';
        break;
    }
    case Method::Hier: {
        if (n < 2) {
            throw Error(ErrorCode::TooFewRows, "hierarchical clustering needs at least two countries");
        }
        const auto dendrogram = hier::agglomerate(x, config.linkage);
        labels = hier::cut(dendrogram, *config.k);
        reference = cluster_means(x, labels, *config.k);
        std::string csv = to_csv(dendrogram);
        if (config.linkage == hier::Linkage::Ward) {
            csv = "# ward distances are sqrt(2 * increase in within-cluster sum of squares)\n" + csv;
        }
        writer.write("dendrogram.csv", csv);
        log << "hier: linkage=" << hier::to_string(config.linkage) << " k=" << *config.k << '\n';
        break;
    }
    case Method::AffinityPropagation: {
        affinity::APConfig ap;
        ap.damping = config.damping;
        ap.preference = config.preference;
        if (config.max_iter) {
            ap.max_iter = *config.max_iter;
            ap.convergence_window = std::min(ap.convergence_window, ap.max_iter);
        }
        const auto result = affinity::fit(x, ap);
        labels = result.labels;
        reference = Matrix(result.exemplar_indices.size(), x.cols());
        std::string exemplars = "cluster,country\n";
        for (std::size_t e = 0; e < result.exemplar_indices.size(); ++e) {
            const auto row = x.row(result.exemplar_indices[e]);
            std::copy(row.begin(), row.end(), reference.row(e).begin());
            exemplars += std::to_string(e) + ',' + prep.scaled.labels[result.exemplar_indices[e]] + '\n';
        }
        writer.write("exemplars.csv", exemplars);
        log << "ap: exemplars=" << result.exemplar_indices.size() << " iterations=" << result.iterations_run
            << (result.converged ? "" : " (not converged)") << '\n';
        break;
    }
    }

    writer.write("labels.csv", labels_to_csv(prep.scaled.labels, labels));

    ClusterModel model;
    model.method = config.method;
    model.reference_points = std::move(reference);
    model.scaler = prep.scaler;
    model.impute_strategy = config.impute;
    model.year_start = input.dataset.year_start;
    model.year_end = input.dataset.year_end;
    model.seed = config.seed;
    model.library_version = kVersion;
    model.created_at = timestamp_now();
    writer.save_model("model.json", model);

    if (n >= 2) {
        writer.write("projection.csv", projection_to_csv(pca_2d(prep.scaled), labels));
    }

    const std::size_t clusters = count_clusters(labels);
    if (clusters >= 2 && n >= 2) {
        writer.write("silhouette.txt", format_double(kmeans::silhouette(x, labels)) + '\n');
    } else {
        writer.write("silhouette.txt", "undefined (single cluster)\n");
    }

    if (config.elbow_max) {
        const std::size_t k_max = std::min(*config.elbow_max, n);
        std::string csv = "k,inertia\n";
        for (const auto& p : kmeans::elbow_scan(x, 1, k_max, config.seed, config.restarts)) {
            csv += std::to_string(p.k) + ',' + format_double(p.inertia) + '\n';
        }
        writer.write("elbow.csv", csv);
    }

    if (config.scale == ScalerKind::Standard) {
        writer.write("outliers.csv", outliers_csv(prep.scaled));
    }

    return writer.finish("cluster", to_json(config), input.sha256);
}

RunOutputs run_pair(const PairConfig& config, const fs::path& out_dir, std::ostream& log)
{
    config.pairing.validate();
    const LoadedInput input = load_input(config.input);
    const DataMatrix raw = to_matrix(input.dataset);
    if (raw.cells.rows() < 2) {
        throw Error(ErrorCode::TooFewCountries, "pairing needs at least two countries");
    }
    const PreprocessResult prep = preprocess(raw, config.impute, config.scale);
    const auto report = pairing::find_pairs(prep.scaled, config.pairing);
    for (const auto& w : report.warnings) {
        log << "warning: " << w << '\n';
    }

    std::vector<pairing::PairScore> similar;
    std::vector<pairing::PairScore> opposite;
    for (const auto& p : report.pairs) {
        if (p.verdict == pairing::Verdict::Similar) {
            similar.push_back(p);
        } else if (p.verdict == pairing::Verdict::Opposite) {
            opposite.push_back(p);
        }
    }
    OutputWriter writer(out_dir);
    writer.write("pairs_similar.csv", pairing::to_csv(similar));
    writer.write("pairs_opposite.csv", pairing::to_csv(opposite));
    writer.write("pairs.json", pairing::to_json(report.pairs));
    log << "pairs: similar=" << similar.size() << " opposite=" << opposite.size() << '\n';
    return writer.finish("pair", to_json(config), input.sha256);
}

RunOutputs run_predict(const PredictConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const std::string model_text = read_text_file(config.model_path);
    const ClusterModel model = from_json(model_text);
    const LoadedInput input = load_input(config.input);
    const Prediction prediction = predict(model, input.dataset);

    OutputWriter writer(out_dir);
    writer.write("predicted_labels.csv", labels_to_csv(prediction.countries, prediction.labels));
    log << "predict: " << prediction.labels.size() << " countries labelled with a "
        << mmrclust::to_string(model.method) << " model (k=" << model.k() << ")\n";
    return writer.finish("predict", to_json(config), input.sha256, {{"model_sha256", sha256_hex(model_text)}});
}

RunOutputs run_manifest(const fs::path& manifest_path, const fs::path& out_dir, std::ostream& log)
{
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(read_text_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptDocument, std::string("manifest: ") + e.what());
    }
    try {
        const std::string command = manifest.at("command").get<std::string>();
        const auto& config = manifest.at("config");
        const std::string recorded = manifest.at("input_sha256").get<std::string>();
        const std::string current = sha256_hex(read_text_file(config.at("input").at("path").get<std::string>()));
        if (current != recorded) {
            throw Error(ErrorCode::InvariantViolation, "input file changed since the manifest was written");
        }
        if (command == "cluster") {
            return run_cluster(cluster_config_from_json(config), out_dir, log);
        }
        if (command == "pair") {
            return run_pair(pair_config_from_json(config), out_dir, log);
        }
        if (command == "predict") {
            return run_predict(predict_config_from_json(config), out_dir, log);
        }
        throw Error(ErrorCode::CorruptDocument, "manifest names unknown command '" + command + "'");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptDocument, std::string("manifest: ") + e.what());
    } catch (const UsageError& e) {
        throw Error(ErrorCode::CorruptDocument, std::string("manifest config: ") + e.what());
    }
}

}  // namespace mmrclust::cli
