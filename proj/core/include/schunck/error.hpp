#pragma once

#include <stdexcept>
#include <string>

namespace schunck {

/// Malformed or inconsistent input (bad file, mismatched fields, non-ideal
/// passed where an ideal is required).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algebra or module failed structural validation (Jacobi, associativity,
/// solvability, representation property).
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

/// An operation's hypotheses do not hold for the given arguments.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exhaustive enumeration would exceed a configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search terminated without finding a witness. Never a
/// counterexample, only an inconclusive result.
class BoundedSearchError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// An internal consistency assertion failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_internal(bool condition, const std::string& what) {
  if (!condition) throw InternalError(what);
}

}  // namespace schunck
