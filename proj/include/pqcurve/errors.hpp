#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqcurve {

/// Malformed or out-of-domain user input. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDenominator : public InputError {
 public:
  ZeroDenominator() : InputError("denominator is identically zero") {}
  explicit ZeroDenominator(std::size_t offset)
      : InputError("division by an identically zero expression at offset " +
                   std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_ = 0;
};

class DegreeZero : public InputError {
 public:
  DegreeZero() : InputError("rational function is constant (degree 0)") {}
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t offset, std::string expected)
      : InputError("syntax error at offset " + std::to_string(offset) +
                   ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// A numeric or consistency failure. Retried at a higher precision before
/// surfacing as CLI exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Precision in bits at which the failure surfaced (0 if not recorded).
  int precision_bits() const { return precision_bits_; }
  void set_precision_bits(int bits) { precision_bits_ = bits; }

 private:
  int precision_bits_ = 0;
};

class NumericallyCoincidentValues : public NumericError {
 public:
  using NumericError::NumericError;
};

class PathJumpSuspected : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConsistencyFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonIntegerGenus : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptyCriticalSet : public NumericError {
 public:
  EmptyCriticalSet() : NumericError("critical value set is empty") {}
};

}  // namespace pqcurve
