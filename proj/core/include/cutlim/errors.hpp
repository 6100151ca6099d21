#pragma once

#include <stdexcept>
#include <string>

namespace cutlim {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad index, asymmetric matrix, shape mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation, e.g. a graphon
/// with values outside [0,1] passed to the sampler.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A modelling constraint is violated, e.g. the noise bound K exceeds the
/// distance of the pattern entries from {0,1}.
class ConstraintError : public InputError {
 public:
  using InputError::InputError;
};

/// An enumeration guard would be exceeded. `guard()` names the limit.
class ResourceError : public Error {
 public:
  ResourceError(std::string guard, const std::string& what)
      : Error(what), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

/// The admissible set of an optimization problem is empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace cutlim
