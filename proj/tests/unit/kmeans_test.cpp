#include "mmrclust/error.hpp"
#include "mmrclust/kmeans.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace mmrclust;

namespace {

Matrix column(std::initializer_list<double> values)
{
    Matrix m(values.size(), 1);
    std::size_t i = 0;
    for (double v : values) {
        m(i++, 0) = v;
    }
    return m;
}

Matrix random_matrix(std::mt19937_64& gen, std::size_t n, std::size_t d)
{
    std::normal_distribution<double> g(0.0, 3.0);
    Matrix m(n, d);
    for (auto& v : m.data()) {
        v = g(gen);
    }
    return m;
}

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

}  // namespace

TEST(KMeansInit, ExhaustsRowsWhenKEqualsN)
{
    const Matrix x = column({3, 1, 4, 1.5, 9, 2.6});
    const Matrix c = kmeans::kmeanspp_init(x, 6, 5);
    std::multiset<double> chosen(c.data().begin(), c.data().end());
    std::multiset<double> rows(x.data().begin(), x.data().end());
    EXPECT_EQ(chosen, rows);
}

TEST(KMeansInit, SingleCenterIsARow)
{
    const Matrix x = column({3, 1, 4});
    const Matrix c = kmeans::kmeanspp_init(x, 1, 99);
    EXPECT_TRUE(c(0, 0) == 3 || c(0, 0) == 1 || c(0, 0) == 4);
}

TEST(KMeansInit, DeterministicAndDistinctOnDuplicates)
{
    const Matrix x = column({1, 1, 1, 1, 5});
    EXPECT_EQ(kmeans::kmeanspp_init(x, 3, 7), kmeans::kmeanspp_init(x, 3, 7));
    const Matrix all = kmeans::kmeanspp_init(x, 5, 7);
    std::multiset<double> chosen(all.data().begin(), all.data().end());
    EXPECT_EQ(chosen, (std::multiset<double>{1, 1, 1, 1, 5}));
}

TEST(KMeansInit, Errors)
{
    const Matrix x = column({1, 2});
    EXPECT_EQ(code_of([&] { kmeans::kmeanspp_init(x, 0, 1); }), ErrorCode::KZero);
    EXPECT_EQ(code_of([&] { kmeans::kmeanspp_init(x, 3, 1); }), ErrorCode::KTooLarge);
}

TEST(KMeansFit, TwoTriples)
{
    const Matrix x = column({0, 1, 2, 10, 11, 12});
    const auto oracle_best = oracle::exhaustive_kmeans(x, 2);
    EXPECT_DOUBLE_EQ(oracle_best.cost, 4.0);

    const auto model = kmeans::fit_best(x, 2, 42, 8);
    EXPECT_DOUBLE_EQ(model.inertia, 4.0);
    std::vector<double> centroids{model.centroids(0, 0), model.centroids(1, 0)};
    std::sort(centroids.begin(), centroids.end());
    EXPECT_DOUBLE_EQ(centroids[0], 1.0);
    EXPECT_DOUBLE_EQ(centroids[1], 11.0);
    EXPECT_EQ(model.labels[0], model.labels[1]);
    EXPECT_EQ(model.labels[1], model.labels[2]);
    EXPECT_EQ(model.labels[3], model.labels[4]);
    EXPECT_NE(model.labels[0], model.labels[3]);
}

TEST(KMeansFit, KEqualsNGivesZero)
{
    const Matrix x = column({5, -1, 3, 8});
    const auto model = kmeans::fit(x, 4, 1);
    EXPECT_EQ(model.inertia, 0.0);
}

TEST(KMeansFit, CoincidentPairs)
{
    const Matrix x = Matrix::from_rows({{1, 1}, {1, 1}, {7, 2}, {7, 2}});
    EXPECT_EQ(kmeans::fit(x, 2, 3).inertia, 0.0);
}

TEST(KMeansFit, Errors)
{
    const Matrix x = column({1, 2, 3});
    EXPECT_EQ(code_of([&] { kmeans::fit(x, 4, 1); }), ErrorCode::KTooLarge);
    EXPECT_EQ(code_of([&] { kmeans::fit(column({1, std::nan(""), 3}), 2, 1); }), ErrorCode::NonFiniteCell);
    EXPECT_EQ(code_of([&] { kmeans::fit(x, 2, 1, 0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { kmeans::fit(x, 2, 1, 10, -1.0); }), ErrorCode::InvalidArgument);
}

TEST(KMeansFit, ModelInvariants)
{
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 5 + trial % 30;
        const std::size_t d = 1 + trial % 5;
        const Matrix x = random_matrix(gen, n, d);
        const std::size_t k = 1 + trial % std::min<std::size_t>(n, 7);
        const auto model = kmeans::fit(x, k, static_cast<std::uint64_t>(trial));

        EXPECT_EQ(model.k, k);
        EXPECT_DOUBLE_EQ(model.inertia, kmeans::compute_inertia(x, model.centroids, model.labels));
        std::vector<std::size_t> counts(k, 0);
        for (auto l : model.labels) {
            ASSERT_LT(l, k);
            ++counts[l];
        }
        for (auto c : counts) {
            EXPECT_GT(c, 0u);
        }
        for (std::size_t t = 1; t < model.inertia_history.size(); ++t) {
            EXPECT_LE(model.inertia_history[t], model.inertia_history[t - 1] * (1 + 1e-12) + 1e-12);
        }
        // centroids are the means of their members
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t j = 0; j < d; ++j) {
                double sum = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (model.labels[i] == c) {
                        sum += x(i, j);
                    }
                }
                EXPECT_NEAR(model.centroids(c, j), sum / static_cast<double>(counts[c]), 1e-12);
            }
        }
        // determinism
        const auto again = kmeans::fit(x, k, static_cast<std::uint64_t>(trial));
        EXPECT_EQ(again.labels, model.labels);
        EXPECT_EQ(again.centroids, model.centroids);
        EXPECT_EQ(again.inertia, model.inertia);
    }
}

TEST(KMeansFit, BestOfRestartsMatchesExhaustiveOptimum)
{
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const Matrix x = random_matrix(gen, n, 1 + trial % 3);
        const std::size_t k = 1 + trial % (n - 1);
        const auto best = kmeans::fit_best(x, k, 1000, 64);
        const auto exact = oracle::exhaustive_kmeans(x, k);
        EXPECT_NEAR(best.inertia, exact.cost, 1e-9 * std::max(1.0, exact.cost)) << "trial " << trial;
    }
}

TEST(ComputeInertia, Cases)
{
    const Matrix x = Matrix::from_rows({{0, 0}});
    EXPECT_EQ(kmeans::compute_inertia(x, Matrix::from_rows({{3, 4}}), {0}), 25.0);
    EXPECT_EQ(kmeans::compute_inertia(x, Matrix::from_rows({{0, 0}}), {0}), 0.0);
    EXPECT_EQ(code_of([&] { kmeans::compute_inertia(x, Matrix::from_rows({{0, 0}}), {1}); }),
              ErrorCode::LabelOutOfRange);
    EXPECT_EQ(code_of([&] { kmeans::compute_inertia(x, Matrix::from_rows({{0, 0, 0}}), {0}); }),
              ErrorCode::DimensionMismatch);
    const Matrix triples = column({0, 1, 2, 10, 11, 12});
    EXPECT_EQ(kmeans::compute_inertia(triples, column({1, 11}), {0, 0, 0, 1, 1, 1}), 4.0);
}

TEST(Assign, NearestWithLowestIndexTies)
{
    const Matrix centroids = column({0, 2, 5});
    EXPECT_EQ(kmeans::assign(centroids, column({5})), std::vector<std::size_t>{2});
    EXPECT_EQ(kmeans::assign(column({0, 2}), column({1})), std::vector<std::size_t>{0});
    EXPECT_EQ(kmeans::assign(column({1, 11}), column({2})), std::vector<std::size_t>{0});
    EXPECT_EQ(code_of([&] { kmeans::assign(centroids, Matrix::from_rows({{1, 2}})); }),
              ErrorCode::DimensionMismatch);
}

TEST(Assign, IdempotentAndInvariantUnderSimilarityTransforms)
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> shift(-50, 50);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix x = random_matrix(gen, 25, 4);
        const Matrix c = random_matrix(gen, 4, 4);
        const auto labels = kmeans::assign(c, x);
        EXPECT_EQ(labels, kmeans::assign(c, x));
        // same positive scale on every column plus per-column offsets
        const double scale = 0.25 + trial;
        std::vector<double> offset(4);
        for (auto& o : offset) {
            o = shift(gen);
        }
        Matrix xt = x;
        Matrix ct = c;
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t i = 0; i < xt.rows(); ++i) {
                xt(i, j) = scale * xt(i, j) + offset[j];
            }
            for (std::size_t i = 0; i < ct.rows(); ++i) {
                ct(i, j) = scale * ct(i, j) + offset[j];
            }
        }
        EXPECT_EQ(kmeans::assign(ct, xt), labels);
    }
}

TEST(Elbow, ClosedFormsAndMonotone)
{
    const Matrix x = column({0, 1, 2, 10, 11, 12});
    const auto scan = kmeans::elbow_scan(x, 1, 6, 42, 4);
    ASSERT_EQ(scan.size(), 6u);
    EXPECT_EQ(scan.back().k, 6u);
    EXPECT_EQ(scan.back().inertia, 0.0);
    // k = 1: total squared deviation from the mean 6
    EXPECT_DOUBLE_EQ(scan.front().inertia, 36 + 25 + 16 + 16 + 25 + 36);
    const auto single = kmeans::elbow_scan(x, 1, 1, 42, 1);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_DOUBLE_EQ(single[0].inertia, 154.0);
    EXPECT_THROW(kmeans::elbow_scan(x, 3, 2, 1, 1), Error);
    EXPECT_THROW(kmeans::elbow_scan(x, 1, 7, 1, 1), Error);
    EXPECT_THROW(kmeans::elbow_scan(x, 1, 2, 1, 0), Error);
}

TEST(Elbow, NonIncreasingInK)
{
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + trial % 9;
        const Matrix x = random_matrix(gen, n, 1 + trial % 3);
        const auto scan = kmeans::elbow_scan(x, 1, n, static_cast<std::uint64_t>(trial), 16);
        for (std::size_t i = 1; i < scan.size(); ++i) {
            EXPECT_LE(scan[i].inertia, scan[i - 1].inertia * (1 + 1e-12) + 1e-12) << "trial " << trial;
        }
    }
}

TEST(Silhouette, Cases)
{
    const Matrix far = Matrix::from_rows({{0, 0}, {0, 0}, {50, 50}, {50, 50}});
    EXPECT_DOUBLE_EQ(kmeans::silhouette(far, {0, 0, 1, 1}), 1.0);

    // per point: 9/11, 7/9, 7/9, 9/11 -> mean 79/99
    EXPECT_NEAR(kmeans::silhouette(column({0, 1, 5, 6}), {0, 0, 1, 1}), 79.0 / 99.0, 1e-15);

    EXPECT_EQ(kmeans::silhouette(column({3, 3, 3, 3}), {0, 1, 0, 1}), 0.0);
    // singleton clusters score 0
    EXPECT_NEAR(kmeans::silhouette(column({0, 1, 10}), {0, 0, 1}), (0.9 + 8.0 / 9.0) / 3.0, 1e-15);

    EXPECT_EQ(code_of([] { kmeans::silhouette(column({1, 2}), {0, 0}); }), ErrorCode::SingleCluster);
    EXPECT_EQ(code_of([] { kmeans::silhouette(column({1, 2}), {0, 2}); }), ErrorCode::EmptyCluster);
}

TEST(Silhouette, AlwaysWithinUnitInterval)
{
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 20;
        const Matrix x = random_matrix(gen, n, 2);
        std::vector<std::size_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = i % 2;
        }
        const double s = kmeans::silhouette(x, labels);
        EXPECT_GE(s, -1.0);
        EXPECT_LE(s, 1.0);
    }
}
