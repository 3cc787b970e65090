#pragma once

#include <stdexcept>
#include <string>

namespace bap {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed graphs, matchings, files or arguments.
struct InvalidInput : Error {
  using Error::Error;
};

// A solver cannot produce a result on an otherwise well-formed input,
// e.g. not every task can be matched.
struct SolverError : Error {
  using Error::Error;
};

// The communication topology does not connect all agents.
struct DisconnectedTopology : Error {
  using Error::Error;
};

// Instance too large for an exhaustive routine.
struct EnumerationCapExceeded : InvalidInput {
  using InvalidInput::InvalidInput;
};

}  // namespace bap
