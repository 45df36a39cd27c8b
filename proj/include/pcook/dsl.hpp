#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcook/ast.hpp"

namespace pcook {

// Base of every error raised while reading program text. Line and column
// are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SyntaxError : public ParseError {
  using ParseError::ParseError;
};

class ArityError : public ParseError {
  using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
  using ParseError::ParseError;
};

// Raised by parse_program when the parsed program fails validate().
class ValidationError : public ParseError {
  using ParseError::ParseError;
};

struct Diagnostic {
  std::string message;
  std::string where;  // statement path, e.g. "body[0].parallel[1][0]"
};

// Reads indentation-structured program text. Accepts an optional
// `def main():` header; `if`/`If`, `while`, `else:`, `parallel:` with numbered
// sub-blocks (`1:` or `1.`, optionally followed by an inline statement),
// `repeat:` and `repeat(n):`. Conditions may be wrapped in parentheses and
// use either bracket or call syntax for their argument.
//
// Normalizations applied while reading:
//   - `PutOffFire()` reads as PutOutFire().
//   - A bare ingredient in a query (`is_ordered(Onion)`) reads as its chopped
//     item.
//   - Serve of an unplated chopped item reads as Serve of the plated dish.
//
// Throws SyntaxError, ArityError, UnknownIdentifier, or ValidationError.
Program parse_program(std::string_view text);

// Same as parse_program but returns semantically invalid programs instead of
// throwing ValidationError.
Program parse_program_unchecked(std::string_view text);

// Canonical text: four-space indentation, no `def main():` header.
std::string format_program(const Program& p);

std::vector<Diagnostic> validate(const Program& p);

}  // namespace pcook
