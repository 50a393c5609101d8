#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcdm {

/// Machine-readable category for every failure the library reports.
enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    LengthMismatch,
    AllZeroColumn,
    ConstantColumn,
    ZeroColumnSum,
    AllColumnsUniform,
    NonPositiveEntry,
    NonPositiveCostEntry,
    NegativeEntry,
    NotReciprocal,
    NonConvergence,
    UnsupportedDimension,
    Infeasible,
    SolverFailure,
    Unbounded,
    BlockCountMismatch,
    NonSquareBlock,
    UnknownCriterionLabel,
    ParseError,
    UnknownMethod,
    TooManyEvents,
    NoRootInUnitInterval,
    ModeDimensionMismatch,
    TooFewAxes,
    InsufficientPoints,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mcdm
