// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hoggar {

/// Precondition violated by the caller (bad dimension, empty input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside what the operation is defined for.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Effects do not resolve the identity.
class InvalidPovm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Measured block structure is not a design; carries the offending pair.
class NotADesign : public std::runtime_error {
 public:
  NotADesign(const std::string& what, int first, int second)
      : std::runtime_error(what), first_(first), second_(second) {}
  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

}  // namespace hoggar
