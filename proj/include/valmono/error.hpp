#pragma once

#include <stdexcept>
#include <string>

namespace valmono {

/// Raised when an operation's precondition or an internal invariant fails.
/// The message is the stable, user-facing error string (e.g. "group mismatch").
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed input files (wrong shape, bad rational literal, ...).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace valmono
