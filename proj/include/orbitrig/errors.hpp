#pragma once

#include <stdexcept>
#include <string>

namespace orbitrig {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments or domain-rule violations caught at construction time.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Document syntax or structure error with a source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Integer ranks disagreed across random placements.
class GenericityError : public Error {
 public:
  using Error::Error;
};

// Vertex permutations passed as a group action fail to compose.
class ActionError : public Error {
 public:
  using Error::Error;
};

// A combinatorial rank prediction contradicted the numeric rank.
class TheoremMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitrig
