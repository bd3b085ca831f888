#pragma once

#include "mmrclust/matrix.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmrclust {

/// Marker stored in DataMatrix cells that have no observation.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing(double v) noexcept;

/// One country's MMR trajectory; values[i] belongs to year_start + i.
struct CountrySeries {
    std::string name;
    int year_start = 0;
    std::vector<std::optional<double>> values;

    int year_end() const noexcept { return year_start + static_cast<int>(values.size()) - 1; }
};

/// Series sharing one contiguous year range.
struct Dataset {
    int year_start = 0;
    int year_end = 0;
    std::vector<CountrySeries> series;

    std::size_t year_count() const noexcept { return static_cast<std::size_t>(year_end - year_start + 1); }
};

/// Numeric matrix with country row labels and year column labels. Missing
/// cells hold kMissing until imputation.
struct DataMatrix {
    std::vector<std::string> labels;
    std::vector<int> years;
    Matrix cells;
};

/// Checks every Dataset/CountrySeries invariant, throwing the matching error.
void validate(const Dataset& dataset);

/// Wide layout: `country,<year>,<year>,...` header, one row per country.
Dataset parse_wide_csv(std::string_view text);

/// Long layout: `country,year,mmr` header, one row per observation.
Dataset parse_long_csv(std::string_view text);

/// Inverse of parse_wide_csv; missing values are written as `NA`.
std::string to_wide_csv(const Dataset& dataset);

DataMatrix to_matrix(const Dataset& dataset);

}  // namespace mmrclust
