#pragma once

#include <stdexcept>
#include <string>

namespace qfc {

// Error taxonomy. The CLI maps these onto exit codes: spec/validation
// problems -> 2, capacity limits -> 3; everything else is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different field specs.
struct SpecMismatchError : Error {
    using Error::Error;
};

// Mathematically undefined request (e.g. inverse of zero).
struct DomainError : Error {
    using Error::Error;
};

// An enumeration bound was exceeded.
struct CapacityError : Error {
    using Error::Error;
};

// A self-check failed; indicates an arithmetic bug, not bad input.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

// A Classification that cannot exist (rank/standard-type mismatch, zero form
// where a nonzero one is required).
struct InvalidClassificationError : Error {
    using Error::Error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

// Malformed or unresolvable form-spec input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qfc
