#ifndef MAGICDIV_WIDE_HPP
#define MAGICDIV_WIDE_HPP

#include <cassert>
#include <cstdint>
#include <string>

namespace magicdiv {

using u128 = unsigned __int128;

/// Bit width of a 128-bit value (0 for 0).
inline int bit_width_u128(u128 v) {
  auto hi = static_cast<uint64_t>(v >> 64);
  if (hi != 0) {
    return 128 - __builtin_clzll(hi);
  }
  auto lo = static_cast<uint64_t>(v);
  return lo == 0 ? 0 : 64 - __builtin_clzll(lo);
}

/// Decimal rendering for 128-bit values (iostreams cannot print __int128).
inline std::string dec_string(u128 v) {
  if (v == 0) {
    return "0";
  }
  std::string out;
  while (v != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return out;
}

inline std::string dec_string(uint64_t v) { return dec_string(static_cast<u128>(v)); }

/// Exact 192-bit unsigned integer.
///
/// Intermediates of the division algorithms reach 2N+1 bits; at the maximum
/// register width of 64 that is 129 bits, one past what __int128 can hold.
/// This type provides the handful of exact operations the library needs at
/// that size: addition, subtraction, the 128x64 product, comparison, bit
/// width, and decimal rendering. Values are three little-endian 64-bit limbs.
class Uint192 {
 public:
  constexpr Uint192() = default;
  constexpr Uint192(u128 v)  // NOLINT(google-explicit-constructor): numeric widening
      : limbs_{static_cast<uint64_t>(v), static_cast<uint64_t>(v >> 64), 0} {}

  /// 2^k for k in [0, 191].
  static constexpr Uint192 pow2(int k) {
    assert(k >= 0 && k < 192);
    Uint192 r;
    r.limbs_[k / 64] = uint64_t{1} << (k % 64);
    return r;
  }

  /// Exact product of a 128-bit and a 64-bit value (never overflows 192 bits).
  static Uint192 mul(u128 a, uint64_t b) {
    const u128 lo = static_cast<u128>(static_cast<uint64_t>(a)) * b;
    const u128 hi = static_cast<u128>(static_cast<uint64_t>(a >> 64)) * b;
    Uint192 r;
    r.limbs_[0] = static_cast<uint64_t>(lo);
    const u128 mid = (lo >> 64) + static_cast<uint64_t>(hi);
    r.limbs_[1] = static_cast<uint64_t>(mid);
    r.limbs_[2] = static_cast<uint64_t>(hi >> 64) + static_cast<uint64_t>(mid >> 64);
    return r;
  }

  friend Uint192 operator+(const Uint192& a, const Uint192& b) {
    Uint192 r;
    u128 carry = 0;
    for (int i = 0; i < 3; ++i) {
      const u128 s = static_cast<u128>(a.limbs_[i]) + b.limbs_[i] + carry;
      r.limbs_[i] = static_cast<uint64_t>(s);
      carry = s >> 64;
    }
    assert(carry == 0);
    return r;
  }

  friend Uint192 operator-(const Uint192& a, const Uint192& b) {
    assert(!(a < b));
    Uint192 r;
    uint64_t borrow = 0;
    for (int i = 0; i < 3; ++i) {
      const uint64_t ai = a.limbs_[i];
      const uint64_t bi = b.limbs_[i];
      const uint64_t d = ai - bi - borrow;
      borrow = (ai < bi + static_cast<u128>(borrow)) ? 1 : 0;
      r.limbs_[i] = d;
    }
    return r;
  }

  friend bool operator==(const Uint192& a, const Uint192& b) = default;

  friend bool operator<(const Uint192& a, const Uint192& b) {
    for (int i = 2; i >= 0; --i) {
      if (a.limbs_[i] != b.limbs_[i]) {
        return a.limbs_[i] < b.limbs_[i];
      }
    }
    return false;
  }
  friend bool operator<=(const Uint192& a, const Uint192& b) { return !(b < a); }
  friend bool operator>(const Uint192& a, const Uint192& b) { return b < a; }
  friend bool operator>=(const Uint192& a, const Uint192& b) { return !(a < b); }

  /// Minimal B with value < 2^B (0 maps to 0).
  int bit_width() const {
    if (limbs_[2] != 0) return 192 - __builtin_clzll(limbs_[2]);
    if (limbs_[1] != 0) return 128 - __builtin_clzll(limbs_[1]);
    if (limbs_[0] != 0) return 64 - __builtin_clzll(limbs_[0]);
    return 0;
  }

  /// Low 128 bits; caller must know the value fits.
  u128 to_u128() const {
    assert(limbs_[2] == 0);
    return (static_cast<u128>(limbs_[1]) << 64) | limbs_[0];
  }

  uint64_t limb(int i) const {
    assert(i >= 0 && i < 3);
    return limbs_[i];
  }

  std::string str() const {
    Uint192 v = *this;
    if (v == Uint192{}) {
      return "0";
    }
    std::string out;
    while (!(v == Uint192{})) {
      uint64_t rem = 0;
      Uint192 q;
      for (int i = 2; i >= 0; --i) {
        const u128 cur = (static_cast<u128>(rem) << 64) | v.limbs_[i];
        q.limbs_[i] = static_cast<uint64_t>(cur / 10);
        rem = static_cast<uint64_t>(cur % 10);
      }
      out.insert(out.begin(), static_cast<char>('0' + rem));
      v = q;
    }
    return out;
  }

 private:
  uint64_t limbs_[3] = {0, 0, 0};
};

}  // namespace magicdiv

#endif  // MAGICDIV_WIDE_HPP
