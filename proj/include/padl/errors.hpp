#pragma once

#include <stdexcept>
#include <string>

namespace padl {

// Thrown for malformed invocations or unparsable input.  CLI exit code 1.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an input violates a documented mathematical precondition
// (wrong domain, failed assumption, unattainable gate).  CLI exit code 2.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a requested precision certificate cannot be met, including
// division by an element indistinguishable from zero.  CLI exit code 3.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace padl
