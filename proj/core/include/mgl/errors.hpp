#pragma once

#include <stdexcept>
#include <string>

namespace mgl {

// Mixed-instance operands or vector length mismatch in grade arithmetic.
class SemiringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical failure; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        bare_(msg) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  int line_;
  int column_;
  std::string bare_;
};

// A derivation, term, or goal that does not satisfy its rule. `path` lists
// child indices from the root, e.g. "root/1/0".
class CheckError : public std::runtime_error {
 public:
  CheckError(const std::string& msg, std::string path = "root")
      : std::runtime_error(path + ": " + msg), path_(std::move(path)), bare_(msg) {}
  const std::string& path() const { return path_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string path_;
  std::string bare_;
};

// Broken invariant inside a transformation (cut elimination, translation).
// Signals an implementation bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mgl
