#pragma once

#include <stdexcept>
#include <string>

namespace kclust {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input matrix is not positive semidefinite within tolerance.
struct NotPsdError : Error {
  explicit NotPsdError(const std::string& msg) : Error(msg) {}
};

/// A centered matrix was required but the input is not centered.
struct NotCenteredError : Error {
  explicit NotCenteredError(const std::string& msg) : Error(msg) {}
};

/// An iterative solver exhausted its iteration budget.
struct SolverError : Error {
  explicit SolverError(const std::string& msg) : Error(msg) {}
};

/// Exhaustive enumeration would exceed the configured limit.
struct TooLargeError : Error {
  explicit TooLargeError(const std::string& msg) : Error(msg) {}
};

/// An operation received an empty point/vector set.
struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& msg) : Error(msg) {}
};

/// Geometrically degenerate input (e.g. all comparison vectors coincide).
struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

/// Malformed or non-finite data in an input file.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Argument outside the documented domain.
struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

}  // namespace kclust
