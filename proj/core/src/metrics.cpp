#include "mmrclust/metrics.hpp"

#include "mmrclust/error.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace mmrclust {

namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "partitions cover different point counts");
    }
    std::map<std::pair<std::size_t, std::size_t>, double> contingency;
    std::map<std::size_t, double> row_sums;
    std::map<std::size_t, double> col_sums;
    for (std::size_t i = 0; i < a.size(); ++i) {
        contingency[{a[i], b[i]}] += 1.0;
        row_sums[a[i]] += 1.0;
        col_sums[b[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& [cell, count] : contingency) {
        index += choose2(count);
    }
    double sum_a = 0.0;
    for (const auto& [label, count] : row_sums) {
        sum_a += choose2(count);
    }
    double sum_b = 0.0;
    for (const auto& [label, count] : col_sums) {
        sum_b += choose2(count);
    }
    const double total = choose2(static_cast<double>(a.size()));
    const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) {
        // both partitions trivial in the same way (all singletons or one block)
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

Matrix cluster_means(const Matrix& matrix, const std::vector<std::size_t>& labels, std::size_t k)
{
    if (labels.size() != matrix.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per row required");
    }
    Matrix means(k, matrix.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        if (labels[i] >= k) {
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(labels[i]) + " >= k");
        }
        ++counts[labels[i]];
        auto dst = means.row(labels[i]);
        const auto src = matrix.row(i);
        for (std::size_t j = 0; j < src.size(); ++j) {
            dst[j] += src[j];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(c) + " has no members");
        }
        for (double& v : means.row(c)) {
            v /= static_cast<double>(counts[c]);
        }
    }
    return means;
}

std::size_t count_clusters(const std::vector<std::size_t>& labels)
{
    if (labels.empty()) {
        return 0;
    }
    const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<bool> seen(k, false);
    for (auto l : labels) {
        seen[l] = true;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (!seen[c]) {
            throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(c) + " has no members");
        }
    }
    return k;
}

}  // namespace mmrclust
