#pragma once

#include <stdexcept>
#include <string>

namespace mptpp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON shape, unknown keys, bad types).
struct ParseError : Error {
  using Error::Error;
};

// Input parsed but breaks an invariant; message lists every violation.
struct ValidationError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of a function.
struct DomainError : Error {
  using Error::Error;
};

// Constructor could not produce a feasible schedule.
struct ConstructionError : Error {
  using Error::Error;
};

// Exact solver refused an instance beyond its configured limits.
struct LimitError : Error {
  using Error::Error;
};

} // namespace mptpp
