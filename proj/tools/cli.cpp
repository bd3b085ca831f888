#include "cli.hpp"

#include "commands.hpp"
#include "run_config.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"
#include "mmrclust/synthetic.hpp"
#include "mmrclust/version.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <functional>

namespace mmrclust::cli {

namespace {

std::optional<double> parse_preference(const std::string& text)
{
    if (text == "median") {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw UsageError("--preference must be 'median' or a number, got '" + text + "'");
    }
    return value;
}

template <typename Enum, typename Parser>
Enum parse_enum(const std::string& flag, const std::string& value, Parser parser)
{
    try {
        return parser(value);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

struct InputArgs {
    std::string path;
    std::string format = "wide";

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--input", path, "CSV file with per-country MMR series")->required();
        cmd.add_option("--format", format, "wide (country,<years>...) or long (country,year,mmr)")
            ->check(CLI::IsMember({"wide", "long"}));
    }

    InputSpec spec() const { return {path, parse_format(format)}; }
};

struct PrepArgs {
    std::string impute = "linear";
    std::string scale = "standard";

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--impute", impute, "missing-value strategy")->check(CLI::IsMember({"linear", "mean", "ffill"}));
        cmd.add_option("--scale", scale, "feature scaling")->check(CLI::IsMember({"standard", "minmax"}));
    }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cluster and pair per-country maternal mortality time series"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::function<void()> action;

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Fit a clustering model and write labels and diagnostics");
    InputArgs cluster_in;
    PrepArgs cluster_prep;
    std::string method = "kmeans";
    std::size_t k = 0;
    std::string linkage = "average";
    double damping = 0.5;
    std::string preference = "median";
    std::uint64_t seed = 42;
    std::size_t restarts = 10;
    std::size_t max_iter = 0;
    std::size_t elbow_max = 0;
    std::string cluster_out;
    cluster_in.add_to(*cluster);
    cluster_prep.add_to(*cluster);
    cluster->add_option("--method", method, "kmeans, hier or ap")->check(CLI::IsMember({"kmeans", "hier", "ap"}));
    auto* k_opt = cluster->add_option("--k", k, "cluster count (kmeans, hier)");
    auto* linkage_opt = cluster->add_option("--linkage", linkage, "hier linkage")
                            ->check(CLI::IsMember({"single", "complete", "average", "ward"}));
    auto* damping_opt = cluster->add_option("--damping", damping, "ap damping in [0.5, 1)");
    auto* pref_opt = cluster->add_option("--preference", preference, "ap preference: 'median' or a number");
    cluster->add_option("--seed", seed, "seed for every random choice");
    auto* restarts_opt = cluster->add_option("--restarts", restarts, "kmeans restarts (best inertia kept)");
    auto* max_iter_opt = cluster->add_option("--max-iter", max_iter, "iteration cap (kmeans, ap)");
    auto* elbow_opt = cluster->add_option("--elbow-max", elbow_max, "also write elbow.csv for k = 1..N");
    cluster->add_option("--out", cluster_out, "output directory")->required();
    cluster->callback([&] {
        ClusterConfig c;
        c.input = cluster_in.spec();
        c.method = parse_method(method);
        if (k_opt->count() > 0) {
            c.k = k;
        }
        if (linkage_opt->count() > 0 && c.method != Method::Hier) {
            throw UsageError("--linkage only applies to method hier");
        }
        if ((damping_opt->count() > 0 || pref_opt->count() > 0) && c.method != Method::AffinityPropagation) {
            throw UsageError("--damping and --preference only apply to method ap");
        }
        if (restarts_opt->count() > 0 && c.method != Method::KMeans && elbow_opt->count() == 0) {
            throw UsageError("--restarts only applies to method kmeans or with --elbow-max");
        }
        c.linkage = hier::parse_linkage(linkage);
        c.damping = damping;
        if (!(damping >= 0.5 && damping < 1.0)) {
            throw UsageError("--damping must lie in [0.5, 1)");
        }
        c.preference = parse_preference(preference);
        c.seed = seed;
        c.restarts = restarts;
        if (max_iter_opt->count() > 0) {
            if (c.method == Method::Hier) {
                throw UsageError("--max-iter does not apply to method hier");
            }
            c.max_iter = max_iter;
        }
        if (elbow_opt->count() > 0) {
            c.elbow_max = elbow_max;
        }
        c.impute = parse_enum<ImputeStrategy>("--impute", cluster_prep.impute, parse_impute_strategy);
        c.scale = parse_enum<ScalerKind>("--scale", cluster_prep.scale, parse_scaler_kind);
        c.validate();
        action = [c, &cluster_out, &err] { run_cluster(c, cluster_out, err); };
    });

    // pair
    auto* pair = app.add_subcommand("pair", "Find similar and opposite country pairs");
    InputArgs pair_in;
    PrepArgs pair_prep;
    pairing::PairingConfig pairing_cfg;
    std::string mode = "level_and_trend";
    std::string pair_out;
    pair_in.add_to(*pair);
    pair_prep.add_to(*pair);
    pair->add_option("--similar-r", pairing_cfg.similar_r_min, "minimum r for a similar pair");
    pair->add_option("--opposite-r", pairing_cfg.opposite_r_max, "maximum r for an opposite pair");
    pair->add_option("--alpha", pairing_cfg.alpha, "significance level of the correlation test");
    pair->add_option("--level-max", pairing_cfg.level_distance_max, "maximum RMS gap for similar pairs");
    pair->add_option("--mode", mode, "trend or level_and_trend")->check(CLI::IsMember({"trend", "level_and_trend"}));
    pair->add_flag("--include-neither", pairing_cfg.include_neither, "keep unremarkable pairs in pairs.json");
    pair->add_option("--out", pair_out, "output directory")->required();
    pair->callback([&] {
        PairConfig c;
        c.input = pair_in.spec();
        c.impute = parse_enum<ImputeStrategy>("--impute", pair_prep.impute, parse_impute_strategy);
        c.scale = parse_enum<ScalerKind>("--scale", pair_prep.scale, parse_scaler_kind);
        c.pairing = pairing_cfg;
        c.pairing.mode = pairing::parse_mode(mode);
        try {
            c.pairing.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        action = [c, &pair_out, &err] { run_pair(c, pair_out, err); };
    });

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Label unseen data with a saved model");
    InputArgs predict_in;
    std::string model_path;
    std::string predict_out;
    predict_in.add_to(*predict_cmd);
    predict_cmd->add_option("--model", model_path, "model.json written by cluster")->required();
    predict_cmd->add_option("--out", predict_out, "output directory")->required();
    predict_cmd->callback([&] {
        PredictConfig c{predict_in.spec(), model_path};
        action = [c, &predict_out, &err] { run_predict(c, predict_out, err); };
    });

    // rerun
    auto* rerun = app.add_subcommand("rerun", "Repeat a run recorded in run_manifest.json");
    std::string manifest_path;
    std::string rerun_out;
    rerun->add_option("--manifest", manifest_path, "run_manifest.json from an earlier run")->required();
    rerun->add_option("--out", rerun_out, "output directory")->required();
    rerun->callback([&] { action = [&] { run_manifest(manifest_path, rerun_out, err); }; });

    // synth
    auto* synth = app.add_subcommand("synth", "Write a synthetic wide CSV for demos and tests");
    std::string synth_kind = "regimes";
    std::size_t countries = 20;
    int year_start = 1990;
    int year_end = 2015;
    std::uint64_t synth_seed = 42;
    std::string synth_out;
    synth->add_option("--kind", synth_kind, "regimes or trend-pairs")
        ->check(CLI::IsMember({"regimes", "trend-pairs"}));
    synth->add_option("--countries", countries, "country count (regimes)")->check(CLI::PositiveNumber);
    synth->add_option("--year-start", year_start, "first year");
    synth->add_option("--year-end", year_end, "last year");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--out", synth_out, "CSV file to write")->required();
    synth->callback([&] {
        if (year_end <= year_start) {
            throw UsageError("--year-end must be after --year-start");
        }
        action = [&] {
            const Dataset d = synth_kind == "regimes"
                                  ? synthetic::mmr_regimes(countries, year_start, year_end, synth_seed).dataset
                                  : synthetic::trend_pairs(year_start, year_end, synth_seed);
            write_text_file(synth_out, to_wide_csv(d));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPipelineError;
    }
    return kExitOk;
}

}  // namespace mmrclust::cli
