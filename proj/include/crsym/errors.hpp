#pragma once

#include <stdexcept>
#include <string>

namespace crsym {

/// Base for all input-validation failures (CLI exit code 1).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : ValidationError {
  using ValidationError::ValidationError;
};

struct DegenerateLeviForm : ValidationError {
  using ValidationError::ValidationError;
};

struct NotSelfAdjoint : ValidationError {
  using ValidationError::ValidationError;
};

struct NotTwoNondegenerate : ValidationError {
  using ValidationError::ValidationError;
};

struct MalformedInput : ValidationError {
  using ValidationError::ValidationError;
};

/// The symbol is valid but not regular; classification and prolongation of
/// normal forms do not apply (CLI exit code 2).
struct NotRegular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed after a computation that was supposed
/// to be self-verifying (CLI exit code 3).  Always a bug, never user error.
struct InternalVerification : std::logic_error {
  using std::logic_error::logic_error;
};

/// An element referenced a component absent from the algebra it was used with.
struct ComponentMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

/// A normal-form family tag with inconsistent or unsupported parameters.
struct MalformedTag : ValidationError {
  using ValidationError::ValidationError;
};

/// Unknown golden-model name or invalid model parameters.
struct MalformedName : ValidationError {
  using ValidationError::ValidationError;
};

/// Classification requested for kernel rank other than 1.
struct KernelRankUnsupported : ValidationError {
  using ValidationError::ValidationError;
};

}  // namespace crsym
