#include "mmrclust/pairing.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"
#include "mmrclust/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace mmrclust::pairing {

std::string_view to_string(Verdict verdict) noexcept
{
    switch (verdict) {
    case Verdict::Similar: return "similar";
    case Verdict::Opposite: return "opposite";
    case Verdict::Neither: return "neither";
    }
    return "unknown";
}

std::string_view to_string(Mode mode) noexcept
{
    switch (mode) {
    case Mode::Trend: return "trend";
    case Mode::LevelAndTrend: return "level_and_trend";
    }
    return "unknown";
}

Mode parse_mode(std::string_view name)
{
    for (auto m : {Mode::Trend, Mode::LevelAndTrend}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown pairing mode '" + std::string(name) + "'");
}

void PairingConfig::validate() const
{
    if (!(opposite_r_max >= -1.0 && opposite_r_max < similar_r_min && similar_r_min <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "need -1 <= opposite_r_max < similar_r_min <= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    }
    if (!(level_distance_max >= 0.0) || !std::isfinite(level_distance_max)) {
        throw Error(ErrorCode::InvalidConfig, "level_distance_max must be finite and >= 0");
    }
}

double pearson_r(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "series lengths differ");
    }
    if (x.size() < 3) {
        throw Error(ErrorCode::TooShort, "correlation needs at least 3 observations");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(ErrorCode::ConstantSeries, "correlation is undefined for a constant series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationTest correlation_test(double r, std::size_t n)
{
    if (n < 3) {
        throw Error(ErrorCode::TooShort, "correlation test needs n >= 3");
    }
    if (!(std::abs(r) <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "r must lie in [-1, 1]");
    }
    if (std::abs(r) == 1.0) {
        return {std::copysign(std::numeric_limits<double>::infinity(), r), 0.0, true};
    }
    const double dof = static_cast<double>(n - 2);
    const double t = r * std::sqrt(dof) / std::sqrt(1.0 - r * r);
    return {t, stats::student_t_two_sided_p(t, dof), false};
}

namespace {

bool is_constant(std::span<const double> row)
{
    return std::all_of(row.begin(), row.end(), [&](double v) { return v == row.front(); });
}

int verdict_rank(Verdict v)
{
    switch (v) {
    case Verdict::Similar: return 0;
    case Verdict::Opposite: return 1;
    case Verdict::Neither: return 2;
    }
    return 3;
}

bool report_order(const PairScore& lhs, const PairScore& rhs)
{
    const int lr = verdict_rank(lhs.verdict);
    const int rr = verdict_rank(rhs.verdict);
    if (lr != rr) {
        return lr < rr;
    }
    if (lhs.verdict == Verdict::Similar && lhs.r != rhs.r) {
        return lhs.r > rhs.r;
    }
    if (lhs.verdict == Verdict::Opposite && lhs.r != rhs.r) {
        return lhs.r < rhs.r;
    }
    return std::tie(lhs.country_a, lhs.country_b) < std::tie(rhs.country_a, rhs.country_b);
}

}  // namespace

PairReport find_pairs(const DataMatrix& standardized, const PairingConfig& config)
{
    config.validate();
    const Matrix& m = standardized.cells;
    if (m.rows() < 2) {
        throw Error(ErrorCode::TooFewCountries, "pairing needs at least two countries");
    }
    if (m.cols() < 3) {
        throw Error(ErrorCode::TooFewYears, "pairing needs at least three years");
    }
    if (standardized.labels.size() != m.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per row required");
    }
    require_finite(m, "find_pairs");

    PairReport report;
    std::vector<bool> usable(m.rows(), true);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (is_constant(m.row(i))) {
            usable[i] = false;
            report.warnings.push_back("skipping '" + standardized.labels[i] + "': constant series");
        }
    }

    const double root_d = std::sqrt(static_cast<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            if (!usable[i] || !usable[j]) {
                continue;
            }
            // evaluate in canonical (a < b) order so results do not depend on row order
            std::size_t a = i;
            std::size_t b = j;
            if (standardized.labels[b] < standardized.labels[a]) {
                std::swap(a, b);
            }
            if (standardized.labels[a] == standardized.labels[b]) {
                throw Error(ErrorCode::DuplicateCountry, "country '" + standardized.labels[a] + "' appears twice");
            }
            PairScore score;
            score.country_a = standardized.labels[a];
            score.country_b = standardized.labels[b];
            score.r = pearson_r(m.row(a), m.row(b));
            const auto test = correlation_test(score.r, m.cols());
            score.t_stat = test.t_stat;
            score.p_value = test.p_value;
            score.perfect = test.perfect;
            score.level_distance = euclidean_distance(m.row(a), m.row(b)) / root_d;

            const bool significant = score.p_value < config.alpha;
            const bool level_ok =
                config.mode == Mode::Trend || score.level_distance <= config.level_distance_max;
            if (score.r >= config.similar_r_min && significant && level_ok) {
                score.verdict = Verdict::Similar;
            } else if (score.r <= config.opposite_r_max && significant) {
                score.verdict = Verdict::Opposite;
            } else {
                score.verdict = Verdict::Neither;
            }
            if (score.verdict != Verdict::Neither || config.include_neither) {
                report.pairs.push_back(std::move(score));
            }
        }
    }
    std::sort(report.pairs.begin(), report.pairs.end(), report_order);
    return report;
}

std::string to_csv(std::span<const PairScore> pairs)
{
    std::string out = "country_a,country_b,r,t_stat,p_value,level_distance,verdict\n";
    for (const auto& p : pairs) {
        out += p.country_a + ',' + p.country_b + ',' + format_double(p.r) + ',' + format_double(p.t_stat) + ',' +
               format_double(p.p_value) + ',' + format_double(p.level_distance) + ',' +
               std::string(to_string(p.verdict)) + '\n';
    }
    return out;
}

std::string to_json(std::span<const PairScore> pairs)
{
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        nlohmann::ordered_json rec;
        rec["country_a"] = p.country_a;
        rec["country_b"] = p.country_b;
        rec["r"] = p.r;
        rec["t_stat"] = std::isfinite(p.t_stat) ? nlohmann::ordered_json(p.t_stat) : nlohmann::ordered_json();
        rec["p_value"] = p.p_value;
        rec["level_distance"] = p.level_distance;
        rec["verdict"] = to_string(p.verdict);
        rec["perfect"] = p.perfect;
        records.push_back(std::move(rec));
    }
    return records.dump(2) + '\n';
}

}  // namespace mmrclust::pairing
