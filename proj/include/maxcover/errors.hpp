#pragma once

#include <stdexcept>
#include <string>

namespace mkc {

// Bad caller input: invalid ids, malformed files, infeasible parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal guarantee violated; indicates a bug rather than bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& msg)
      : InputError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace mkc
