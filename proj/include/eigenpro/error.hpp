#pragma once

#include <stdexcept>
#include <string>

namespace eigenpro {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data could not be read, parsed, or contained non-finite values.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (degenerate input, divergence, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivergenceError : public NumericError {
 public:
  DivergenceError(double eta, double loss, double initial_loss)
      : NumericError("iteration diverged with step size eta=" + std::to_string(eta) +
                     " (loss " + std::to_string(loss) + " vs initial " +
                     std::to_string(initial_loss) + ")"),
        eta_(eta) {}

  double eta() const { return eta_; }

 private:
  double eta_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace eigenpro
