#pragma once

#include <stdexcept>
#include <string>

namespace grouplaw {

// Caller-supplied data violates an operation's preconditions: malformed
// files, degree mismatches, elements outside the stated group, and so on.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap was hit (enumeration size, oracle size, word
// expansion length). The message names the cap and how to proceed.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. This is an engine bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace grouplaw
