#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modal {

enum class ErrorCode {
    NotSelfAdjoint,
    NotProjection,
    NoConvergence,
    DimensionMismatch,
    ChainNotStrict,
    CapExceeded,
    NotDensityOperator,
    AllComponentsZero,
    InvalidXForm,
    NotInD,
    AtomNotResolved,
    TooLarge,
    IdealInvalid,
    OracleDisagreement,
    NotInExtension,
    MultipleOnes,
    NoOnes,
    SequenceNotConvergent,
    IdealMismatch,
    NotCommuting,
    NotDisjoint,
    PreconditionViolated,
    PairsNotDistinct,
    InvalidLattice,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace modal
