#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spreadnet {

using NodeId = std::uint32_t;

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries a 1-based line number when one is known.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_number(0) {}

  std::size_t line_number;
};

/// A caller-supplied value violates a precondition (bad generator parameters,
/// empty seed set, fraction out of range, ...).
struct ParameterError : Error {
  using Error::Error;
};

/// Input for which the requested statistic is undefined (zero-variance
/// vectors, too few pairs, every metric row degenerate, ...).
struct DegenerateInput : Error {
  using Error::Error;
};

/// The request is valid but exceeds a hard resource bound kept to protect
/// exact (exponential) computations.
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace spreadnet
