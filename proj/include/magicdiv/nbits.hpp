#ifndef MAGICDIV_NBITS_HPP
#define MAGICDIV_NBITS_HPP

#include <bit>
#include <cstdint>
#include <string>

#include "magicdiv/errors.hpp"
#include "magicdiv/wide.hpp"

namespace magicdiv {

/// A register width N in bits. Widths 2 through 64 are supported; everything
/// in the library is parametric in this value.
class BitWidth {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 64;

  explicit BitWidth(int bits) : bits_(bits) {
    if (bits < kMin || bits > kMax) {
      throw DomainError("bit width must be in [2, 64], got " + std::to_string(bits));
    }
  }

  int bits() const { return bits_; }

  /// 2^N - 1. Valid for all supported widths including 64.
  uint64_t mask() const {
    return bits_ == 64 ? ~uint64_t{0} : (uint64_t{1} << bits_) - 1;
  }

  /// 2^N as an exact value.
  u128 capacity() const { return static_cast<u128>(1) << bits_; }

  /// 2^(N-1), the bounded-path dividend limit.
  uint64_t half_capacity() const { return uint64_t{1} << (bits_ - 1); }

  friend bool operator==(BitWidth a, BitWidth b) { return a.bits_ == b.bits_; }
  friend bool operator!=(BitWidth a, BitWidth b) { return a.bits_ != b.bits_; }

 private:
  int bits_;
};

/// An unsigned value tagged with its register width. Construction and every
/// operation enforce membership in [0, 2^N), so an out-of-range result is an
/// observable error rather than silent wraparound.
class RegisterValue {
 public:
  RegisterValue(BitWidth width, uint64_t value) : width_(width), value_(value) {
    if (value > width.mask()) {
      throw RangeError("value " + dec_string(value) + " does not fit in " +
                       std::to_string(width.bits()) + " bits");
    }
  }

  BitWidth width() const { return width_; }
  uint64_t value() const { return value_; }

  friend bool operator==(const RegisterValue& a, const RegisterValue& b) {
    return a.width_ == b.width_ && a.value_ == b.value_;
  }
  friend bool operator!=(const RegisterValue& a, const RegisterValue& b) {
    return !(a == b);
  }

 private:
  BitWidth width_;
  uint64_t value_;
};

namespace detail {
inline void require_same_width(const RegisterValue& a, const RegisterValue& b,
                               const char* op) {
  if (a.width() != b.width()) {
    throw WidthMismatchError(std::string(op) + ": widths differ (" +
                             std::to_string(a.width().bits()) + " vs " +
                             std::to_string(b.width().bits()) + ")");
  }
}
}  // namespace detail

/// a + b in N bits. Throws OverflowError carrying the exact sum when the sum
/// reaches 2^N.
inline RegisterValue checked_add(const RegisterValue& a, const RegisterValue& b) {
  detail::require_same_width(a, b, "checked_add");
  const u128 sum = static_cast<u128>(a.value()) + b.value();
  if (sum > a.width().mask()) {
    throw OverflowError(sum, a.width().bits());
  }
  return {a.width(), static_cast<uint64_t>(sum)};
}

/// a - b in N bits. Throws UnderflowError when b > a.
inline RegisterValue checked_sub(const RegisterValue& a, const RegisterValue& b) {
  detail::require_same_width(a, b, "checked_sub");
  if (b.value() > a.value()) {
    throw UnderflowError(b.value() - a.value());
  }
  return {a.width(), a.value() - b.value()};
}

/// Logical right shift: floor(a / 2^k). Shift amounts 0 through N inclusive
/// are allowed; shifting by the full width yields 0.
inline RegisterValue shr(const RegisterValue& a, int k) {
  const int n = a.width().bits();
  if (k < 0 || k > n) {
    throw RangeError("shift amount " + std::to_string(k) + " outside [0, " +
                     std::to_string(n) + "]");
  }
  // k == 64 would be undefined behavior on the underlying u64.
  const uint64_t v = k >= 64 ? 0 : a.value() >> k;
  return {a.width(), v & a.width().mask()};
}

/// High N-bit word of the 2N-bit product: floor(a*b / 2^N). The product of
/// two N-bit values is below 2^2N, so the result always fits N bits.
inline RegisterValue mulhi(const RegisterValue& a, const RegisterValue& b) {
  detail::require_same_width(a, b, "mulhi");
  const u128 prod = static_cast<u128>(a.value()) * b.value();
  return {a.width(), static_cast<uint64_t>(prod >> a.width().bits())};
}

/// Minimal B such that x*y < 2^B. A zero product has width 0.
inline int product_bit_width(uint64_t x, uint64_t y) {
  return bit_width_u128(static_cast<u128>(x) * y);
}

/// Exact scalar holding up-to-(2N+1)-bit products such as m*n.
using WideProduct = Uint192;

}  // namespace magicdiv

#endif  // MAGICDIV_NBITS_HPP
