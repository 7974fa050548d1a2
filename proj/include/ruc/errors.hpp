#pragma once

#include <stdexcept>
#include <string>

namespace ruc {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched qubit counts or operator dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// A requested size exceeds a configured or hard cap.
struct CapacityError : Error {
  using Error::Error;
};

// Invalid argument value (out of range, malformed text form, ...).
struct ArgumentError : Error {
  using Error::Error;
};

// Malformed input text; message carries position information.
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that violates a semantic constraint.
struct ValidationError : Error {
  using Error::Error;
};

// A gate not representable on the selected backend.
struct UnsupportedGateError : Error {
  using Error::Error;
};

// Nonlinear fit failed to converge or had too little data.
struct FitError : Error {
  using Error::Error;
};

// Parameter outside the mathematical domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace ruc
