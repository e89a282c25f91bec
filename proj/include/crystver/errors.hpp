#pragma once

#include <stdexcept>
#include <string>

namespace crystver {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (dimension mismatch,
/// unknown generator, order mismatch, ...).
struct InputError : Error {
  using Error::Error;
};

/// Malformed input text (JSON or word syntax); message carries a location.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid input that violates the file schema; message names
/// the offending field.
struct SchemaError : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

/// Closure exceeded its element cap: non-finite or oversized input.
struct GroupTooLarge : Error {
  using Error::Error;
};

struct NotFiniteOrder : Error {
  using Error::Error;
};

struct InvalidCocycle : Error {
  using Error::Error;
};

struct MismatchedTable : Error {
  using Error::Error;
};

/// Character table data fails an internal consistency requirement that
/// loading could not see (bad power map, non-integral central character).
struct CorruptTable : Error {
  using Error::Error;
};

}  // namespace crystver
