#include "ballpoly/error.hpp"

namespace ballpoly {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CollinearCenters: return "CollinearCenters";
        case ErrorKind::CoplanarPoints: return "CoplanarPoints";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NotCongruent: return "NotCongruent";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::DuplicateCenters: return "DuplicateCenters";
        case ErrorKind::DegenerateTies: return "DegenerateTies";
        case ErrorKind::CoplanarInput: return "CoplanarInput";
        case ErrorKind::AmbiguousCosphericity: return "AmbiguousCosphericity";
        case ErrorKind::EmptyIntersection: return "EmptyIntersection";
        case ErrorKind::EmptyInterior: return "EmptyInterior";
        case ErrorKind::NotReduced: return "NotReduced";
        case ErrorKind::DegenerateVertex: return "DegenerateVertex";
        case ErrorKind::TooFewVertices: return "TooFewVertices";
        case ErrorKind::NotStandard: return "NotStandard";
        case ErrorKind::CoplanarCenters: return "CoplanarCenters";
        case ErrorKind::DisagreementBug: return "DisagreementBug";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::GeneratorExhausted: return "GeneratorExhausted";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::SideLengthMismatch: return "SideLengthMismatch";
        case ErrorKind::NotConvex: return "NotConvex";
        case ErrorKind::NotHemispherical: return "NotHemispherical";
        case ErrorKind::NotSimple: return "NotSimple";
        case ErrorKind::NotPlane: return "NotPlane";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace ballpoly
