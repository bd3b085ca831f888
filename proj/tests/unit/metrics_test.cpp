#include "mmrclust/error.hpp"
#include "mmrclust/metrics.hpp"

#include <gtest/gtest.h>

using namespace mmrclust;

TEST(AdjustedRandIndex, ReferenceValues)
{
    // values from sklearn.metrics.adjusted_rand_score
    EXPECT_NEAR(adjusted_rand_index({0, 0, 1, 1}, {0, 0, 1, 2}), 0.5714285714285714, 1e-15);
    EXPECT_NEAR(adjusted_rand_index({0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2}), 0.24242424242424243, 1e-15);
    EXPECT_NEAR(adjusted_rand_index({0, 1, 2, 0, 1, 2, 0, 1}, {1, 1, 0, 0, 2, 2, 1, 0}), -0.14285714285714285, 1e-15);
    EXPECT_NEAR(adjusted_rand_index({0, 0, 1, 1}, {0, 1, 0, 1}), -0.5, 1e-15);
}

TEST(AdjustedRandIndex, PermutationAndTrivialCases)
{
    EXPECT_EQ(adjusted_rand_index({0, 0, 1, 2, 2}, {2, 2, 0, 1, 1}), 1.0);
    EXPECT_EQ(adjusted_rand_index({0, 0, 0}, {5, 5, 5}), 1.0);
    EXPECT_EQ(adjusted_rand_index({0, 1, 2}, {2, 1, 0}), 1.0);
    EXPECT_EQ(adjusted_rand_index({}, {}), 1.0);
    EXPECT_THROW(adjusted_rand_index({0, 1}, {0}), Error);
}

TEST(ClusterMeans, Basic)
{
    const Matrix x = Matrix::from_rows({{0, 0}, {2, 4}, {10, 10}});
    EXPECT_EQ(cluster_means(x, {0, 0, 1}, 2), Matrix::from_rows({{1, 2}, {10, 10}}));
    EXPECT_THROW(cluster_means(x, {0, 0, 2}, 2), Error);
    EXPECT_THROW(cluster_means(x, {0, 0, 0}, 2), Error);
    EXPECT_THROW(cluster_means(x, {0, 0}, 2), Error);
}

TEST(CountClusters, Basic)
{
    EXPECT_EQ(count_clusters({0, 1, 1, 2}), 3u);
    EXPECT_EQ(count_clusters({}), 0u);
    EXPECT_THROW(count_clusters({0, 2}), Error);
}
