#include "mmrclust/error.hpp"

namespace mmrclust {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::HeaderMalformed: return "HeaderMalformed";
    case ErrorCode::RowArity: return "RowArity";
    case ErrorCode::DuplicateCountry: return "DuplicateCountry";
    case ErrorCode::DuplicateObservation: return "DuplicateObservation";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::InvalidCountryName: return "InvalidCountryName";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::AllMissingColumn: return "AllMissingColumn";
    case ErrorCode::AllMissingRow: return "AllMissingRow";
    case ErrorCode::MissingCellsPresent: return "MissingCellsPresent";
    case ErrorCode::NonFiniteCell: return "NonFiniteCell";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::KZero: return "KZero";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::SingleCluster: return "SingleCluster";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::TooFewCountries: return "TooFewCountries";
    case ErrorCode::TooFewYears: return "TooFewYears";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::CorruptDocument: return "CorruptDocument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::YearRangeMismatch: return "YearRangeMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

}  // namespace mmrclust
