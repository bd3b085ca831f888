#pragma once

#include "mmrclust/dataset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmrclust::pairing {

enum class Verdict { Similar, Opposite, Neither };

/// Trend: correlation alone decides SIMILAR. LevelAndTrend: SIMILAR also
/// needs the standardized trajectories to be close in level.
enum class Mode { Trend, LevelAndTrend };

std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view name);

struct PairingConfig {
    double similar_r_min = 0.9;
    double opposite_r_max = -0.5;
    double alpha = 0.05;
    /// Per-year RMS gap between standardized series.
    double level_distance_max = 0.5;
    Mode mode = Mode::LevelAndTrend;
    /// Keep NEITHER pairs (after the others) instead of dropping them.
    bool include_neither = false;

    void validate() const;
};

struct PairScore {
    std::string country_a;  // country_a < country_b
    std::string country_b;
    double r = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    double level_distance = 0.0;
    Verdict verdict = Verdict::Neither;
    /// |r| == 1: t is infinite and p is reported as 0.
    bool perfect = false;
};

struct CorrelationTest {
    double t_stat;
    double p_value;
    bool perfect;
};

struct PairReport {
    std::vector<PairScore> pairs;
    /// One entry per skipped constant row.
    std::vector<std::string> warnings;
};

/// Sample Pearson correlation, clamped to [-1, 1].
double pearson_r(std::span<const double> x, std::span<const double> y);

/// Two-sided t-test of r against 0 with n - 2 degrees of freedom.
CorrelationTest correlation_test(double r, std::size_t n);

/// Scores every unordered pair of rows of a standardized matrix.
PairReport find_pairs(const DataMatrix& standardized, const PairingConfig& config = {});

/// `country_a,country_b,r,t_stat,p_value,level_distance,verdict`
std::string to_csv(std::span<const PairScore> pairs);

/// JSON array mirroring the CSV records plus the `perfect` flag. Infinite
/// t statistics are written as null.
std::string to_json(std::span<const PairScore> pairs);

}  // namespace mmrclust::pairing
