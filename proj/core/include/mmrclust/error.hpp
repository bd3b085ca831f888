#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmrclust {

enum class ErrorCode {
    // ingestion
    EmptyInput,
    HeaderMalformed,
    RowArity,
    DuplicateCountry,
    DuplicateObservation,
    NonNumericCell,
    NegativeValue,
    InvalidCountryName,
    EmptyDataset,
    // preprocessing
    AllMissingColumn,
    AllMissingRow,
    MissingCellsPresent,
    // shared numeric
    NonFiniteCell,
    DimensionMismatch,
    InvalidArgument,
    // clustering
    KZero,
    KTooLarge,
    KOutOfRange,
    LabelOutOfRange,
    SingleCluster,
    EmptyCluster,
    TooFewRows,
    InvalidConfig,
    // pairing
    LengthMismatch,
    ConstantSeries,
    TooShort,
    TooFewCountries,
    TooFewYears,
    // persistence / prediction
    IOFailure,
    SchemaVersionMismatch,
    CorruptDocument,
    InvariantViolation,
    YearRangeMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every mmrclust operation. The code is the
/// machine-readable reason; what() carries a human-readable diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mmrclust
