#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkgl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `position` is the 0-based character offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

struct UnknownIdentifier : ParseError {
  UnknownIdentifier(const std::string& name, std::size_t position)
      : ParseError("unknown identifier '" + name + "'", position), name(name) {}
  std::string name;
};

struct UnsupportedDerivative : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct InvariantViolation : Error {
  using Error::Error;
};

struct UnknownProblem : Error {
  using Error::Error;
};

struct MissingExactSolution : Error {
  using Error::Error;
};

struct NonFiniteSolution : Error {
  NonFiniteSolution(std::size_t node, double x)
      : Error("non-finite solution at node " + std::to_string(node) +
              " (x = " + std::to_string(x) + ")"),
        node(node) {}
  std::size_t node;
};

struct InsufficientData : Error {
  using Error::Error;
};

/// Raised by order fitting when an error sample is zero (exact integration).
struct NonPositiveError : Error {
  using Error::Error;
};

}  // namespace rkgl
