#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace driftreg {

// Bad arguments: mismatched dimensions, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t got)
      : InvalidArgument(what + ": expected dimension " + std::to_string(expected) +
                        ", got " + std::to_string(got)) {}
};

// Malformed or non-finite input data (files, samples).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures: factorization of a matrix that is not SPD, divergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace driftreg
