#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ballpoly {

enum class ErrorKind {
    CollinearCenters,
    CoplanarPoints,
    OutOfRange,
    NotCongruent,
    DegenerateInput,
    DuplicateCenters,
    DegenerateTies,
    CoplanarInput,
    AmbiguousCosphericity,
    EmptyIntersection,
    EmptyInterior,
    NotReduced,
    DegenerateVertex,
    TooFewVertices,
    NotStandard,
    CoplanarCenters,
    DisagreementBug,
    NotNormal,
    GeneratorExhausted,
    PreconditionFailed,
    SideLengthMismatch,
    NotConvex,
    NotHemispherical,
    NotSimple,
    NotPlane,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ballpoly
