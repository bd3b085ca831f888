#include "mmrclust/synthetic.hpp"

#include "mmrclust/error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace mmrclust::synthetic {

namespace {

/// Box-Muller on the portable uniform source.
double normal(std::mt19937_64& gen)
{
    double u1 = detail::uniform01(gen);
    while (u1 <= 0.0) {
        u1 = detail::uniform01(gen);
    }
    const double u2 = detail::uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string country_name(std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "Country%03zu", i + 1);
    return buf;
}

void check_years(int year_start, int year_end)
{
    if (year_end <= year_start) {
        throw Error(ErrorCode::TooFewYears, "synthetic data needs at least two years");
    }
}

}  // namespace

LabeledDataset mmr_regimes(std::size_t countries, int year_start, int year_end, std::uint64_t seed)
{
    check_years(year_start, year_end);
    std::mt19937_64 gen(seed);
    const auto years = static_cast<std::size_t>(year_end - year_start + 1);
    const double last = static_cast<double>(years - 1);

    LabeledDataset out;
    out.dataset.year_start = year_start;
    out.dataset.year_end = year_end;
    for (std::size_t c = 0; c < countries; ++c) {
        const std::size_t regime = c % 3;
        const double jitter = 1.0 + 0.1 * normal(gen);
        CountrySeries s{country_name(c), year_start, {}};
        for (std::size_t y = 0; y < years; ++y) {
            const double t = static_cast<double>(y) / last;
            double level = 0.0;
            switch (regime) {
            case 0: level = 15.0; break;
            case 1: level = 450.0 - 300.0 * t; break;
            default: level = 600.0 + 300.0 * t; break;
            }
            level *= jitter;
            const double value = level * (1.0 + 0.03 * normal(gen));
            s.values.emplace_back(std::max(value, 0.0));
        }
        out.dataset.series.push_back(std::move(s));
        out.truth.push_back(regime);
    }
    return out;
}

Dataset trend_pairs(int year_start, int year_end, std::uint64_t seed)
{
    check_years(year_start, year_end);
    std::mt19937_64 gen(seed);
    constexpr double slope = 10.0;
    struct Shape {
        const char* name;
        double intercept;
        double slope;
    };
    const Shape shapes[] = {
        {"DeclineA", 500.0, -slope},
        {"DeclineB", 505.0, -slope},
        {"RiseA", 100.0, slope},
        {"RiseB", 700.0, slope},
    };
    Dataset out;
    out.year_start = year_start;
    out.year_end = year_end;
    const auto years = static_cast<std::size_t>(year_end - year_start + 1);
    for (const auto& shape : shapes) {
        CountrySeries s{shape.name, year_start, {}};
        for (std::size_t y = 0; y < years; ++y) {
            const double value = shape.intercept + shape.slope * static_cast<double>(y) + 0.05 * slope * normal(gen);
            s.values.emplace_back(std::max(value, 0.0));
        }
        out.series.push_back(std::move(s));
    }
    return out;
}

LabeledMatrix gaussian_blobs(const Matrix& centers, std::size_t per_blob, double sigma, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    LabeledMatrix out;
    out.points = Matrix(centers.rows() * per_blob, centers.cols());
    std::size_t row = 0;
    for (std::size_t c = 0; c < centers.rows(); ++c) {
        for (std::size_t p = 0; p < per_blob; ++p, ++row) {
            for (std::size_t j = 0; j < centers.cols(); ++j) {
                out.points(row, j) = centers(c, j) + sigma * normal(gen);
            }
            out.truth.push_back(c);
        }
    }
    return out;
}

}  // namespace mmrclust::synthetic
