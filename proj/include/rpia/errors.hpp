#pragma once

#include <stdexcept>
#include <string>

namespace rpia {

// Error taxonomy shared by the library and the CLI (which maps each
// category to a distinct exit code).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid sizes, ids, or orderings supplied by the caller.
struct ArgumentError : Error {
  using Error::Error;
};

// Evaluation request outside the parametric domain [0,1].
struct DomainError : Error {
  using Error::Error;
};

// Input data that breaks the fitting protocol (zero chord lengths,
// exact initial fit, ...).
struct DegenerateDataError : Error {
  using Error::Error;
};

// Problem configurations rejected before iterating (rank deficiency,
// incompatible m/n/tau, unsupported method for the input kind).
struct ConfigError : Error {
  using Error::Error;
};

// Malformed CSV/JSON input.
struct ParseError : Error {
  using Error::Error;
};

// Filesystem failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace rpia
