#include "mmrclust/error.hpp"
#include "mmrclust/kmeans.hpp"
#include "mmrclust/model_store.hpp"
#include "mmrclust/synthetic.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace mmrclust;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an mmrclust::Error";
    return ErrorCode::InvalidArgument;
}

ClusterModel random_model(std::mt19937_64& gen, Method method)
{
    std::uniform_int_distribution<std::size_t> kd(1, 6);
    std::uniform_int_distribution<int> yd(2, 30);
    std::normal_distribution<double> g(0, 1e3);
    std::uniform_real_distribution<double> pos(1e-6, 1e4);
    const std::size_t k = kd(gen);
    const int years = yd(gen);
    ClusterModel m;
    m.method = method;
    m.year_start = 1990;
    m.year_end = 1990 + years - 1;
    m.reference_points = Matrix(k, static_cast<std::size_t>(years));
    for (auto& v : m.reference_points.data()) {
        v = g(gen) / 7.0;
    }
    std::vector<std::pair<double, double>> params;
    const bool standard = gen() % 2 == 0;
    for (int j = 0; j < years; ++j) {
        const double a = g(gen) / 3.0;
        params.emplace_back(a, standard ? pos(gen) : a + pos(gen));
    }
    m.scaler = FittedScaler(standard ? ScalerKind::Standard : ScalerKind::MinMax, std::move(params));
    m.impute_strategy = static_cast<ImputeStrategy>(gen() % 3);
    m.seed = gen();
    m.created_at = "2024-01-01T00:00:00Z";
    m.library_version = "0.1.0";
    return m;
}

fs::path temp_dir()
{
    const auto dir = fs::temp_directory_path() / ("mmrclust_store_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                  ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(ModelStore, RoundTripRandomModels)
{
    std::mt19937_64 gen(5);
    const auto dir = temp_dir();
    for (auto method : {Method::KMeans, Method::Hier, Method::AffinityPropagation}) {
        for (int trial = 0; trial < 20; ++trial) {
            const ClusterModel m = random_model(gen, method);
            const auto path = dir / "model.json";
            save(m, path);
            const ClusterModel back = load(path);
            EXPECT_EQ(back, m);
            EXPECT_EQ(to_json(back), to_json(m));
        }
    }
    fs::remove_all(dir);
}

TEST(ModelStore, FieldOrderIsFixed)
{
    std::mt19937_64 gen(6);
    const std::string doc = to_json(random_model(gen, Method::Hier));
    std::size_t last = 0;
    for (const char* key : {"schema_version", "method", "k", "year_start", "year_end", "impute_strategy", "scaler",
                            "reference_points", "seed", "library_version", "created_at"}) {
        const auto at = doc.find(std::string("\"") + key + "\"");
        ASSERT_NE(at, std::string::npos) << key;
        EXPECT_GT(at, last) << key;
        last = at;
    }
    EXPECT_NE(doc.find("\"method\": \"hier\""), std::string::npos);
}

TEST(ModelStore, SavesAreByteIdentical)
{
    std::mt19937_64 gen(8);
    const auto dir = temp_dir();
    const ClusterModel m = random_model(gen, Method::KMeans);
    save(m, dir / "a.json");
    save(m, dir / "b.json");
    std::ifstream a(dir / "a.json", std::ios::binary);
    std::ifstream b(dir / "b.json", std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(sa, sb);
    EXPECT_FALSE(sa.empty());
    fs::remove_all(dir);
}

TEST(ModelStore, RejectsBadModelsAndDocuments)
{
    std::mt19937_64 gen(9);
    ClusterModel m = random_model(gen, Method::KMeans);
    ClusterModel empty = m;
    empty.reference_points = Matrix(0, m.reference_points.cols());
    EXPECT_EQ(code_of([&] { save(empty, fs::temp_directory_path() / "never.json"); }), ErrorCode::InvariantViolation);

    const std::string doc = to_json(m);
    EXPECT_EQ(code_of([&] { from_json(doc.substr(0, doc.size() / 2)); }), ErrorCode::CorruptDocument);
    EXPECT_EQ(code_of([] { from_json("[]"); }), ErrorCode::CorruptDocument);

    std::string future = doc;
    future.replace(future.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
    EXPECT_EQ(code_of([&] { from_json(future); }), ErrorCode::SchemaVersionMismatch);

    std::string wrong_k = doc;
    const auto kpos = wrong_k.find("\"k\": ");
    wrong_k.replace(kpos, 6, "\"k\": 9");
    EXPECT_EQ(code_of([&] { from_json(wrong_k); }), ErrorCode::InvariantViolation);

    std::string zero_k = doc;
    zero_k.replace(kpos, 6, "\"k\": 0");
    EXPECT_EQ(code_of([&] { from_json(zero_k); }), ErrorCode::InvariantViolation);

    std::string bad_method = doc;
    bad_method.replace(bad_method.find("\"kmeans\""), 8, "\"dbscan\"");
    EXPECT_EQ(code_of([&] { from_json(bad_method); }), ErrorCode::CorruptDocument);
}

TEST(ModelStore, IoFailures)
{
    std::mt19937_64 gen(10);
    const ClusterModel m = random_model(gen, Method::KMeans);
    EXPECT_EQ(code_of([&] { save(m, "/nonexistent-dir/sub/model.json"); }), ErrorCode::IOFailure);
    EXPECT_EQ(code_of([] { load("/nonexistent-dir/model.json"); }), ErrorCode::IOFailure);
}

TEST(Predict, ReproducesTrainingLabelsAndKeepsScaler)
{
    const auto data = synthetic::mmr_regimes(24, 1990, 2015, 4);
    const DataMatrix raw = to_matrix(data.dataset);
    const auto prep = preprocess(raw);
    const auto fit = kmeans::fit_best(prep.scaled.cells, 3, 4, 5);

    ClusterModel model;
    model.method = Method::KMeans;
    model.reference_points = fit.centroids;
    model.scaler = prep.scaler;
    model.impute_strategy = ImputeStrategy::LinearInterpolate;
    model.year_start = 1990;
    model.year_end = 2015;
    model.seed = 4;
    const auto before = model.scaler;

    const auto pred = predict(model, data.dataset);
    EXPECT_EQ(pred.labels, fit.labels);
    EXPECT_EQ(pred.countries, raw.labels);
    EXPECT_EQ(model.scaler, before);
    for (double d : pred.distances) {
        EXPECT_GE(d, 0.0);
    }

    // a subset is scaled with the stored parameters, not refitted
    Dataset subset = data.dataset;
    subset.series.resize(2);
    const auto sub = predict(model, subset);
    EXPECT_EQ(sub.labels[0], fit.labels[0]);
    EXPECT_EQ(sub.labels[1], fit.labels[1]);
    EXPECT_EQ(sub.distances[0], pred.distances[0]);

    Dataset shifted = data.dataset;
    shifted.year_start += 1;
    shifted.year_end += 1;
    for (auto& s : shifted.series) {
        s.year_start += 1;
    }
    EXPECT_EQ(code_of([&] { predict(model, shifted); }), ErrorCode::YearRangeMismatch);
}

TEST(Predict, SingleCentroidLabelsEverythingZero)
{
    const auto data = synthetic::mmr_regimes(6, 2000, 2004, 2);
    const auto prep = preprocess(to_matrix(data.dataset));
    ClusterModel model;
    model.reference_points = Matrix(1, 5);
    model.scaler = prep.scaler;
    model.year_start = 2000;
    model.year_end = 2004;
    const auto pred = predict(model, data.dataset);
    EXPECT_EQ(pred.labels, std::vector<std::size_t>(6, 0));
}

TEST(LabelsCsv, Format)
{
    EXPECT_EQ(labels_to_csv({"A", "B"}, {1, 0}), "country,cluster\nA,1\nB,0\n");
    EXPECT_THROW(labels_to_csv({"A"}, {1, 0}), Error);
    EXPECT_EQ(parse_method("ap"), Method::AffinityPropagation);
    EXPECT_THROW(parse_method("AP"), Error);
}
