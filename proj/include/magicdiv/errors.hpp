#ifndef MAGICDIV_ERRORS_HPP
#define MAGICDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "magicdiv/wide.hpp"

namespace magicdiv {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation (zero divisor,
/// width outside [2, 64], and the like).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value or shift amount outside the permitted range for its register width.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Two registers of different widths were combined.
class WidthMismatchError : public Error {
 public:
  using Error::Error;
};

/// An N-bit addition whose exact sum does not fit the register.
/// Carries the exact sum so observers can inspect the overflow event.
class OverflowError : public Error {
 public:
  OverflowError(u128 exact_sum, int bits)
      : Error("overflow: sum " + dec_string(exact_sum) + " does not fit in " +
              std::to_string(bits) + " bits"),
        exact_sum_(exact_sum) {}

  u128 exact_sum() const { return exact_sum_; }

 private:
  u128 exact_sum_;
};

/// An N-bit subtraction a - b with b > a. Carries the deficit b - a.
class UnderflowError : public Error {
 public:
  explicit UnderflowError(uint64_t deficit)
      : Error("underflow: subtrahend exceeds minuend by " + dec_string(deficit)),
        deficit_(deficit) {}

  uint64_t deficit() const { return deficit_; }

 private:
  uint64_t deficit_;
};

/// The bounded fast path was invoked with a dividend at or above 2^(N-1).
class BoundError : public Error {
 public:
  using Error::Error;
};

/// An invalid verification sweep plan (empty divisor range, missing seed, ...).
class PlanError : public Error {
 public:
  using Error::Error;
};

/// A timing flavor paired with an incompatible workload.
class FlavorError : public Error {
 public:
  using Error::Error;
};

}  // namespace magicdiv

#endif  // MAGICDIV_ERRORS_HPP
