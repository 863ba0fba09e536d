#ifndef MGS_CORE_ERRORS_HPP
#define MGS_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mgs {

// Input text could not be tokenized or parsed. Carries a 1-based position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, int line, int column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line), column_(column) {}
  explicit ParseError(const std::string &what)
      : std::runtime_error(what), line_(0), column_(0) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// A term is ill-sorted: unbound symbol, arity mismatch, operand sort mismatch.
class SortError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: unsupported logic, oversize train count, shape mismatch,
// matrix/benchmark incompatibility.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The environment failed us: missing solver binary, spawn failure, unwritable
// output directory. Distinct from "unsolved" so searches abort loudly.
class InfrastructureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mgs

#endif
