#pragma once

#include <stdexcept>
#include <string>

namespace eprgames {

/// A stated precondition of an operation does not hold for the given input.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough observations to form the requested estimate.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// An equation has no solution for the given input (e.g. empty preimage).
class NoSolutionError : public std::runtime_error {
 public:
  explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eprgames
