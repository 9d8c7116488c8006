#pragma once

#include <stdexcept>
#include <string>

namespace mindeg {

// Raised when an operation would exceed an explicit resource budget
// (element enumeration, lattice class count, search nodes). Callers that can
// degrade gracefully catch this; everything else propagates it to the CLI,
// which maps it to exit code 2.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input: cycle notation, group spec strings, report files.
// Maps to CLI exit code 3.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace mindeg
