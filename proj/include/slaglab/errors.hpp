#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slaglab {

// Common base so callers can catch every library error in one handler.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constructor/precondition contract violations that have no more specific type.
struct InvalidArgument : Error {
    using Error::Error;
};

// ---- linear algebra ----
struct SingularMatrix : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DegenerateFrame : Error {
    using Error::Error;
};

// ---- exact integer algebra ----
struct Overflow : Error {
    using Error::Error;
};
struct ElementShapeMismatch : Error {
    using Error::Error;
};

// ---- manifold expressions ----
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};
struct UnknownAtom : ParseError {
    using ParseError::ParseError;
};
struct NoRingModel : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct NonOrientable : Error {
    using Error::Error;
};

// ---- numerical geometry ----
struct NotClosed : Error {
    using Error::Error;
};
struct NotLagrangian : Error {
    using Error::Error;
};
struct NotOnSphere : Error {
    using Error::Error;
};
struct RefinementExhausted : Error {
    using Error::Error;
};

// ---- cones ----
struct InvalidParameter : Error {
    using Error::Error;
};
struct NoBranchSolution : Error {
    using Error::Error;
};
struct InsufficientRange : Error {
    using Error::Error;
};

// ---- boundary-problem engine ----
struct MissingField : Error {
    using Error::Error;
};
struct NotExact : Error {
    using Error::Error;
};
struct NotOrientable : Error {
    using Error::Error;
};
struct UnsupportedDimension : Error {
    using Error::Error;
};

}  // namespace slaglab
