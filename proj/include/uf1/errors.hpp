#pragma once

#include <stdexcept>
#include <string>

namespace uf1 {

// Input could not be parsed. Carries a 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line), col(col) {}
  int line;
  int col;
};

// A caller violated an operation's precondition (bad vocabulary, free
// variables where a sentence is required, counting quantifier where none
// is allowed, ...).
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant was breached. This is always a bug, never a
// recoverable condition; the CLI maps it to exit code 70.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace uf1
