#include "mmrclust/error.hpp"
#include "mmrclust/preprocess.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mmrclust;

namespace {

DataMatrix make(std::vector<std::vector<double>> rows)
{
    DataMatrix m;
    m.cells = Matrix::from_rows(rows);
    for (std::size_t i = 0; i < m.cells.rows(); ++i) {
        m.labels.push_back("R" + std::to_string(i));
    }
    for (std::size_t j = 0; j < m.cells.cols(); ++j) {
        m.years.push_back(2000 + static_cast<int>(j));
    }
    return m;
}

const double M = kMissing;

}  // namespace

TEST(Impute, LinearMidpoint)
{
    const auto out = impute(make({{1, M, 3}}), ImputeStrategy::LinearInterpolate);
    EXPECT_DOUBLE_EQ(out.cells(0, 1), 2.0);
}

TEST(Impute, LinearBoundariesUseNearestPresent)
{
    const auto out = impute(make({{M, M, 4, M, 10, M}}), ImputeStrategy::LinearInterpolate);
    const std::vector<double> expected{4, 4, 4, 7, 10, 10};
    for (std::size_t j = 0; j < expected.size(); ++j) {
        EXPECT_DOUBLE_EQ(out.cells(0, j), expected[j]);
    }
}

TEST(Impute, MeanColumn)
{
    const auto out = impute(make({{2}, {M}, {4}}), ImputeStrategy::MeanColumn);
    EXPECT_DOUBLE_EQ(out.cells(1, 0), 3.0);
}

TEST(Impute, ForwardFillBoundary)
{
    const auto out = impute(make({{M, 5, M}}), ImputeStrategy::ForwardFill);
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(out.cells(0, j), 5.0);
    }
}

TEST(Impute, ForwardFillPrefersEarlier)
{
    const auto out = impute(make({{1, M, 3}}), ImputeStrategy::ForwardFill);
    EXPECT_EQ(out.cells(0, 1), 1.0);
}

TEST(Impute, AllMissingErrors)
{
    try {
        impute(make({{M, 1}, {M, 2}}), ImputeStrategy::MeanColumn);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AllMissingColumn);
    }
    for (auto s : {ImputeStrategy::LinearInterpolate, ImputeStrategy::ForwardFill}) {
        try {
            impute(make({{M, M}, {1, 2}}), s);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::AllMissingRow);
        }
    }
}

TEST(Impute, IdempotentAndKeepsPresentCells)
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 100);
    for (auto strategy :
         {ImputeStrategy::MeanColumn, ImputeStrategy::LinearInterpolate, ImputeStrategy::ForwardFill}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::vector<double>> rows(6, std::vector<double>(8));
            for (auto& r : rows) {
                for (auto& v : r) {
                    v = u(gen) < 30 ? M : u(gen);
                }
                r[trial % 8] = u(gen);  // every row keeps a value
            }
            for (std::size_t j = 0; j < 8; ++j) {
                rows[j % 6][j] = u(gen);  // and every column
            }
            const DataMatrix src = make(rows);
            const DataMatrix once = impute(src, strategy);
            const DataMatrix twice = impute(once, strategy);
            EXPECT_EQ(once.cells, twice.cells);
            for (std::size_t i = 0; i < src.cells.rows(); ++i) {
                for (std::size_t j = 0; j < src.cells.cols(); ++j) {
                    EXPECT_FALSE(is_missing(once.cells(i, j)));
                    if (!is_missing(src.cells(i, j))) {
                        EXPECT_EQ(once.cells(i, j), src.cells(i, j));
                    }
                }
            }
        }
    }
}

TEST(Scaler, StandardUsesPopulationStd)
{
    const auto scaler = fit_scaler(make({{0}, {5}, {10}}), ScalerKind::Standard);
    EXPECT_DOUBLE_EQ(scaler.params()[0].first, 5.0);
    EXPECT_NEAR(scaler.params()[0].second, std::sqrt(50.0 / 3.0), 1e-12);
    EXPECT_NEAR(scaler.params()[0].second, 4.0825, 1e-4);
}

TEST(Scaler, MinMaxParams)
{
    const auto scaler = fit_scaler(make({{0}, {5}, {10}}), ScalerKind::MinMax);
    EXPECT_EQ(scaler.params()[0], std::make_pair(0.0, 10.0));
}

TEST(Scaler, ConstantColumn)
{
    const auto data = make({{7}, {7}});
    const auto scaler = fit_scaler(data, ScalerKind::Standard);
    EXPECT_EQ(scaler.params()[0], std::make_pair(7.0, 0.0));
    const auto out = apply_scaler(scaler, data);
    EXPECT_EQ(out.cells(0, 0), 0.0);
    EXPECT_EQ(out.cells(1, 0), 0.0);
    const auto mm = apply_scaler(fit_scaler(data, ScalerKind::MinMax), data);
    EXPECT_EQ(mm.cells(1, 0), 0.0);
}

TEST(Scaler, ApplyStandardAndMinMax)
{
    const auto data = make({{0}, {5}, {10}});
    const auto z = apply_scaler(fit_scaler(data, ScalerKind::Standard), data);
    // (x - 5) / sqrt(50/3)
    EXPECT_NEAR(z.cells(0, 0), -1.224744871391589, 1e-12);
    EXPECT_EQ(z.cells(1, 0), 0.0);
    EXPECT_NEAR(z.cells(2, 0), 1.224744871391589, 1e-12);
    const auto mm = apply_scaler(fit_scaler(data, ScalerKind::MinMax), data);
    EXPECT_EQ(mm.cells(0, 0), 0.0);
    EXPECT_EQ(mm.cells(1, 0), 0.5);
    EXPECT_EQ(mm.cells(2, 0), 1.0);
}

TEST(Scaler, Errors)
{
    try {
        fit_scaler(make({{1, M}}), ScalerKind::Standard);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingCellsPresent);
    }
    const auto scaler = fit_scaler(make({{1, 2}, {3, 4}}), ScalerKind::Standard);
    try {
        apply_scaler(scaler, make({{1, 2, 3}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Scaler, StandardizedColumnsHaveZeroMeanUnitStd)
{
    std::mt19937_64 gen(11);
    std::normal_distribution<double> g(300, 120);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> rows(15, std::vector<double>(6));
        for (auto& r : rows) {
            for (auto& v : r) {
                v = g(gen);
            }
            r[5] = 42.0;  // constant column
        }
        const auto data = make(rows);
        const auto z = apply_scaler(fit_scaler(data, ScalerKind::Standard), data);
        const auto mm = apply_scaler(fit_scaler(data, ScalerKind::MinMax), data);
        for (std::size_t j = 0; j < 6; ++j) {
            double mean = 0;
            double sq = 0;
            for (std::size_t i = 0; i < 15; ++i) {
                mean += z.cells(i, j);
                EXPECT_GE(mm.cells(i, j), 0.0);
                EXPECT_LE(mm.cells(i, j), 1.0);
            }
            mean /= 15;
            for (std::size_t i = 0; i < 15; ++i) {
                sq += (z.cells(i, j) - mean) * (z.cells(i, j) - mean);
            }
            EXPECT_LT(std::abs(mean), 1e-9);
            if (j < 5) {
                EXPECT_NEAR(std::sqrt(sq / 15), 1.0, 1e-12);
            }
        }
    }
}

TEST(EncodeLabels, FirstOccurrenceOrder)
{
    const auto book = encode_labels({"Albania", "Benin", "Albania"});
    EXPECT_EQ(book.size(), 2u);
    EXPECT_EQ(book.code_of("Albania"), 0u);
    EXPECT_EQ(book.code_of("Benin"), 1u);
    EXPECT_EQ(encode_labels({"X"}).code_of("X"), 0u);
    const auto ba = encode_labels({"B", "A"});
    EXPECT_EQ(ba.code_of("B"), 0u);
    EXPECT_EQ(ba.code_of("A"), 1u);
    EXPECT_THROW(encode_labels({}), Error);
    EXPECT_THROW(ba.code_of("C"), Error);
}

TEST(Outliers, FlagsLargeZOnly)
{
    const auto cells = flag_outliers(make({{0.5, -4.5}, {4.0, 6.0}}));
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0].row, 0u);
    EXPECT_EQ(cells[0].col, 1u);
    EXPECT_EQ(cells[1].z, 6.0);
}
