#pragma once

#include <stdexcept>
#include <string>

namespace tcspan {

// Malformed input or a violated precondition (maps to CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size/effort guard was exceeded (maps to CLI exit code 2).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tcspan
