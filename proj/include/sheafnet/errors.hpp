#pragma once

#include <stdexcept>
#include <string>

namespace sheafnet {

// Error taxonomy. InputError covers malformed or out-of-contract inputs
// (CLI exit code 1); ModelError covers inputs that parse fine but admit no
// consistent model state (CLI exit code 2).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct ModelError : Error {
  using Error::Error;
};

struct InvalidCellError : InputError {
  using InputError::InputError;
};

struct UnknownCellError : InputError {
  using InputError::InputError;
};

struct InvalidIncidenceError : InputError {
  using InputError::InputError;
};

struct InvalidValueError : InputError {
  using InputError::InputError;
};

struct NotAFacetError : InputError {
  using InputError::InputError;
};

struct EmptyActiveRegionError : InputError {
  using InputError::InputError;
};

struct OutOfWindowError : InputError {
  using InputError::InputError;
};

struct NonlinearProtocolError : InputError {
  using InputError::InputError;
};

struct UnknownProtocolError : InputError {
  using InputError::InputError;
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct NotASectionError : ModelError {
  using ModelError::ModelError;
};

struct InconsistentScheduleError : ModelError {
  using ModelError::ModelError;
};

struct InjectionConflictError : ModelError {
  using ModelError::ModelError;
};

}  // namespace sheafnet
