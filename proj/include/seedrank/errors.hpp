#pragma once

#include <stdexcept>
#include <string>

namespace seedrank {

// Root of every library error. The CLI maps the three families below onto
// exit codes 2 (validation), 3 (numeric) and 4 (I/O).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised by the exponential-cost test oracle when its size guard trips.
class RefusalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class DegenerateMomentsError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateParameterError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NearSingularEstimatorError : public NumericError {
 public:
  NearSingularEstimatorError(const std::string& what, double denominator)
      : NumericError(what), denominator_(denominator) {}
  double denominator() const { return denominator_; }

 private:
  double denominator_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace seedrank
