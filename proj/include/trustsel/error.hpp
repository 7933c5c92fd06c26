#pragma once

#include <stdexcept>
#include <string>

namespace trustsel {

// Base of every error the library throws. Infeasibility of a plan is data
// (see ValidationReport), never an exception.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input data (non-finite entries, size mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

// Knob values outside their domain, or a budget/rate pair that admits no plan.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Text that cannot be read as one of the file schemas. Carries the line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Problem too large for an exact method.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace trustsel
