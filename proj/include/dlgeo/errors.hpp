#pragma once

#include <stdexcept>
#include <string>

namespace dlgeo {

/// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller-supplied value is malformed (bad order, bad text form, ...).
struct InvalidInputError : Error {
    using Error::Error;
};

/// A multiplication table violates a group axiom. The message names the
/// axiom and a witness.
struct NotAGroupError : Error {
    using Error::Error;
};

/// Operands live over different groups or graph parameters.
struct IncompatibleError : Error {
    using Error::Error;
};

/// An enumeration or ball would exceed the configured resource limit.
struct CapacityError : Error {
    using Error::Error;
};

/// An arithmetic hypothesis required by a construction does not hold.
struct HypothesisError : Error {
    using Error::Error;
};

} // namespace dlgeo
