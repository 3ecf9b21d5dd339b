#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carnot {

// Caller violated a precondition (mismatched algebras, zero element where a
// nonzero one is required, bad configuration values).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. `where` names the location: a character offset for
// expressions, a JSON path for definition files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string where)
      : std::runtime_error(message + " (at " + where + ")"),
        where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A configured resource bound (degree limit) was exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure in the dynamics layer: Newton non-convergence, escape to
// non-finite values, a point off the generic stratum.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace carnot
