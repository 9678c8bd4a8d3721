#include "modal/error.hpp"

namespace modal {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
        case ErrorCode::NotProjection: return "NotProjection";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ChainNotStrict: return "ChainNotStrict";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotDensityOperator: return "NotDensityOperator";
        case ErrorCode::AllComponentsZero: return "AllComponentsZero";
        case ErrorCode::InvalidXForm: return "InvalidXForm";
        case ErrorCode::NotInD: return "NotInD";
        case ErrorCode::AtomNotResolved: return "AtomNotResolved";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::IdealInvalid: return "IdealInvalid";
        case ErrorCode::OracleDisagreement: return "OracleDisagreement";
        case ErrorCode::NotInExtension: return "NotInExtension";
        case ErrorCode::MultipleOnes: return "MultipleOnes";
        case ErrorCode::NoOnes: return "NoOnes";
        case ErrorCode::SequenceNotConvergent: return "SequenceNotConvergent";
        case ErrorCode::IdealMismatch: return "IdealMismatch";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::NotDisjoint: return "NotDisjoint";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::PairsNotDistinct: return "PairsNotDistinct";
        case ErrorCode::InvalidLattice: return "InvalidLattice";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace modal
