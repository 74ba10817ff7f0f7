#pragma once

#include <stdexcept>
#include <string>

namespace heegner {

/// Input that violates a documented precondition or type invariant.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside the range a driver or oracle can handle.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state that the underlying mathematics rules out; reaching it is a bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace heegner
