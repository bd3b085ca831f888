#include "mmrclust/dataset.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace mmrclust {

namespace {

std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool is_na_token(std::string_view cell) noexcept
{
    return cell.size() == 2 && (cell[0] == 'N' || cell[0] == 'n') && (cell[1] == 'A' || cell[1] == 'a');
}

struct Line {
    std::size_t number;  // 1-based, for diagnostics
    std::vector<std::string_view> cells;
};

/// Splits into non-blank lines of trimmed comma-separated cells.
std::vector<Line> tokenize(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (trim(raw).empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        Line line{number, {}};
        std::size_t cell_start = 0;
        while (true) {
            const auto comma = raw.find(',', cell_start);
            if (comma == std::string_view::npos) {
                line.cells.push_back(trim(raw.substr(cell_start)));
                break;
            }
            line.cells.push_back(trim(raw.substr(cell_start, comma - cell_start)));
            cell_start = comma + 1;
        }
        lines.push_back(std::move(line));
        if (end == text.size()) {
            break;
        }
    }
    return lines;
}

std::string where(const Line& line) { return "line " + std::to_string(line.number); }

std::optional<int> parse_int(std::string_view cell) noexcept
{
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        return std::nullopt;
    }
    return value;
}

/// Empty and NA are missing; anything else must be a finite, non-negative real.
std::optional<double> parse_value(std::string_view cell, const Line& line)
{
    if (cell.empty() || is_na_token(cell)) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::NonNumericCell, where(line) + ": cannot parse '" + std::string(cell) + "'");
    }
    if (value < 0.0) {
        throw Error(ErrorCode::NegativeValue, where(line) + ": negative value '" + std::string(cell) + "'");
    }
    return value;
}

void check_name(std::string_view name, const Line& line)
{
    if (name.empty()) {
        throw Error(ErrorCode::InvalidCountryName, where(line) + ": empty country name");
    }
}

}  // namespace

bool is_missing(double v) noexcept { return std::isnan(v); }

void validate(const Dataset& dataset)
{
    if (dataset.year_end - dataset.year_start + 1 < 2) {
        throw Error(ErrorCode::TooFewYears, "a dataset needs at least two years");
    }
    const std::size_t span = dataset.year_count();
    std::unordered_set<std::string_view> seen;
    for (const auto& s : dataset.series) {
        if (s.name.empty()) {
            throw Error(ErrorCode::InvalidCountryName, "empty country name");
        }
        if (!seen.insert(s.name).second) {
            throw Error(ErrorCode::DuplicateCountry, "country '" + s.name + "' appears twice");
        }
        if (s.year_start != dataset.year_start || s.values.size() != span) {
            throw Error(ErrorCode::DimensionMismatch, "series '" + s.name + "' does not cover the dataset years");
        }
        for (const auto& v : s.values) {
            if (v && !std::isfinite(*v)) {
                throw Error(ErrorCode::NonFiniteCell, "series '" + s.name + "' holds a non-finite value");
            }
            if (v && *v < 0.0) {
                throw Error(ErrorCode::NegativeValue, "series '" + s.name + "' holds a negative value");
            }
        }
    }
}

Dataset parse_wide_csv(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyInput, "no rows");
    }
    const Line& header = lines.front();
    if (header.cells.front() != "country") {
        throw Error(ErrorCode::HeaderMalformed, "first header cell must be 'country'");
    }
    if (header.cells.size() < 3) {
        throw Error(ErrorCode::HeaderMalformed, "header must list at least two years");
    }
    std::vector<int> years;
    for (std::size_t c = 1; c < header.cells.size(); ++c) {
        const auto year = parse_int(header.cells[c]);
        if (!year) {
            throw Error(ErrorCode::HeaderMalformed, "column '" + std::string(header.cells[c]) + "' is not a year");
        }
        if (!years.empty() && *year != years.back() + 1) {
            throw Error(ErrorCode::HeaderMalformed,
                        "years must increase by one per column; got " + std::to_string(years.back()) + " then " +
                            std::to_string(*year));
        }
        years.push_back(*year);
    }

    Dataset dataset;
    dataset.year_start = years.front();
    dataset.year_end = years.back();
    std::unordered_set<std::string> names;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const Line& line = lines[l];
        if (line.cells.size() != header.cells.size()) {
            throw Error(ErrorCode::RowArity, where(line) + ": expected " + std::to_string(header.cells.size()) +
                                                 " cells, got " + std::to_string(line.cells.size()));
        }
        check_name(line.cells.front(), line);
        CountrySeries series{std::string(line.cells.front()), dataset.year_start, {}};
        if (!names.insert(series.name).second) {
            throw Error(ErrorCode::DuplicateCountry, where(line) + ": country '" + series.name + "' repeated");
        }
        series.values.reserve(years.size());
        for (std::size_t c = 1; c < line.cells.size(); ++c) {
            series.values.push_back(parse_value(line.cells[c], line));
        }
        dataset.series.push_back(std::move(series));
    }
    return dataset;
}

Dataset parse_long_csv(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyInput, "no rows");
    }
    const Line& header = lines.front();
    if (header.cells.size() != 3 || header.cells[0] != "country" || header.cells[1] != "year" ||
        header.cells[2] != "mmr") {
        throw Error(ErrorCode::HeaderMalformed, "header must be exactly 'country,year,mmr'");
    }

    std::vector<std::string> order;
    std::unordered_map<std::string, std::map<int, std::optional<double>>> observations;
    std::optional<int> min_year;
    std::optional<int> max_year;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const Line& line = lines[l];
        if (line.cells.size() != 3) {
            throw Error(ErrorCode::RowArity, where(line) + ": expected 3 cells, got " +
                                                 std::to_string(line.cells.size()));
        }
        check_name(line.cells[0], line);
        const auto year = parse_int(line.cells[1]);
        if (!year) {
            throw Error(ErrorCode::NonNumericCell, where(line) + ": year '" + std::string(line.cells[1]) +
                                                       "' is not an integer");
        }
        std::string name(line.cells[0]);
        auto [it, inserted] = observations.try_emplace(name);
        if (inserted) {
            order.push_back(name);
        }
        if (!it->second.emplace(*year, parse_value(line.cells[2], line)).second) {
            throw Error(ErrorCode::DuplicateObservation,
                        where(line) + ": (" + name + ", " + std::to_string(*year) + ") already observed");
        }
        min_year = std::min(min_year.value_or(*year), *year);
        max_year = std::max(max_year.value_or(*year), *year);
    }

    Dataset dataset;
    if (!min_year) {
        return dataset;
    }
    dataset.year_start = *min_year;
    dataset.year_end = *max_year;
    if (dataset.year_end == dataset.year_start) {
        throw Error(ErrorCode::TooFewYears, "observations cover a single year");
    }
    for (const auto& name : order) {
        const auto& obs = observations.at(name);
        CountrySeries series{name, dataset.year_start, {}};
        series.values.resize(dataset.year_count());
        for (const auto& [year, value] : obs) {
            series.values[static_cast<std::size_t>(year - dataset.year_start)] = value;
        }
        dataset.series.push_back(std::move(series));
    }
    return dataset;
}

std::string to_wide_csv(const Dataset& dataset)
{
    std::string out = "country";
    for (int y = dataset.year_start; y <= dataset.year_end; ++y) {
        out += ',';
        out += std::to_string(y);
    }
    out += '\n';
    for (const auto& s : dataset.series) {
        out += s.name;
        for (const auto& v : s.values) {
            out += ',';
            out += v ? format_double(*v) : std::string("NA");
        }
        out += '\n';
    }
    return out;
}

DataMatrix to_matrix(const Dataset& dataset)
{
    if (dataset.series.empty()) {
        throw Error(ErrorCode::EmptyDataset, "dataset has no countries");
    }
    validate(dataset);
    DataMatrix m;
    m.cells = Matrix(dataset.series.size(), dataset.year_count());
    for (int y = dataset.year_start; y <= dataset.year_end; ++y) {
        m.years.push_back(y);
    }
    for (std::size_t i = 0; i < dataset.series.size(); ++i) {
        const auto& s = dataset.series[i];
        m.labels.push_back(s.name);
        for (std::size_t j = 0; j < s.values.size(); ++j) {
            m.cells(i, j) = s.values[j].value_or(kMissing);
        }
    }
    return m;
}

}  // namespace mmrclust
