#include "cde/errors.hpp"

namespace cde {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::ZeroInverse: return "ZeroInverse";
        case Errc::Singular: return "Singular";
        case Errc::Inconsistent: return "Inconsistent";
        case Errc::DegenerateKernel: return "DegenerateKernel";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::WidthMismatch: return "WidthMismatch";
        case Errc::WeightTooLow: return "WeightTooLow";
        case Errc::InvalidInstance: return "InvalidInstance";
        case Errc::MissingWeights: return "MissingWeights";
        case Errc::MissingGroups: return "MissingGroups";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::InvalidField: return "InvalidField";
        case Errc::ConstructionFailed: return "ConstructionFailed";
        case Errc::InsufficientKnowledge: return "InsufficientKnowledge";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::TooLarge: return "TooLarge";
        case Errc::InvalidBasis: return "InvalidBasis";
        case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace cde
