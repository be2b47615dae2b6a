#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace buyhold {

// Caller-side contract violations: bad parameters, mismatched lengths.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class LengthMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failures inside a solver.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The closed-form game route does not apply; fall back to the LP route.
class PreconditionViolated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivisionByZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Problems with user-supplied data files. The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& reason)
      : DataError("row " + std::to_string(row) + ", column " +
                  std::to_string(column) + ": " + reason),
        row_(row),
        column_(column),
        reason_(reason) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t row_;
  std::size_t column_;
  std::string reason_;
};

class NonPositivePrice : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonPositiveEntry : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateDate : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace buyhold
