#ifndef MAGICDIV_MAGIC_HPP
#define MAGICDIV_MAGIC_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "magicdiv/nbits.hpp"

namespace magicdiv {

/// Shift offset p = ceil(log2 d), computed from the bit length of d - 1 so
/// the result is exact for every 64-bit divisor (floating-point log2
/// misrounds near large powers of two). p = 0 for d = 1, otherwise
/// 2^(p-1) < d <= 2^p.
inline int ceil_log2(const RegisterValue& d) {
  if (d.value() == 0) {
    throw DomainError("ceil_log2: divisor is zero");
  }
  return std::bit_width(d.value() - 1);
}

inline bool is_power_of_two(const RegisterValue& d) {
  if (d.value() == 0) {
    throw DomainError("is_power_of_two: divisor is zero");
  }
  return std::has_single_bit(d.value());
}

/// Full magic number m = ceil(2^(N+p) / d), always exactly N+1 bits wide.
/// Computed as floor((2^(N+p) - 1) / d) + 1, which is the same ceiling in
/// exact integer arithmetic and keeps the numerator inside 128 bits even at
/// N = p = 64.
inline WideProduct full_magic(BitWidth width, const RegisterValue& d) {
  if (d.value() == 0) {
    throw DomainError("full_magic: divisor is zero");
  }
  if (d.width() != width) {
    throw WidthMismatchError("full_magic: divisor width " +
                             std::to_string(d.width().bits()) +
                             " does not match requested width " +
                             std::to_string(width.bits()));
  }
  const int k = width.bits() + ceil_log2(d);
  const u128 numerator =  // 2^k - 1; k can be 128
      k == 128 ? ~static_cast<u128>(0) : (static_cast<u128>(1) << k) - 1;
  return WideProduct{numerator / d.value() + 1};
}

/// Precomputed parameters for dividing N-bit values by a fixed divisor d:
/// the shift offset p and the N-bit magic number m_lo (the low N bits of the
/// full magic number, equal to m - 2^N).
struct MagicParams {
  BitWidth width;
  RegisterValue divisor;
  int shift_offset;
  RegisterValue magic_lo;
};

inline MagicParams precompute_magic(BitWidth width, const RegisterValue& d) {
  const WideProduct m = full_magic(width, d);
  const int p = ceil_log2(d);
  const uint64_t m_lo = static_cast<uint64_t>(m.to_u128()) & width.mask();
  return MagicParams{width, d, p, RegisterValue{width, m_lo}};
}

inline MagicParams precompute_magic(BitWidth width, uint64_t d) {
  return precompute_magic(width, RegisterValue{width, d});
}

/// One recorded register operation: name, operand values, result value.
struct TraceStep {
  std::string op;
  std::vector<uint64_t> operands;
  uint64_t result;
};

/// Full record of one general-path division: the estimate q, the shift guard
/// h = min(p, 1), the quotient, and every intermediate register value.
struct DivisionTrace {
  RegisterValue dividend;
  RegisterValue q_estimate;
  int shift_guard;
  RegisterValue quotient;
  std::vector<TraceStep> steps;
};

namespace detail {

inline void require_param_width(const MagicParams& params, const RegisterValue& n,
                                const char* op) {
  if (n.width() != params.width) {
    throw WidthMismatchError(std::string(op) + ": dividend width " +
                             std::to_string(n.width().bits()) +
                             " does not match parameter width " +
                             std::to_string(params.width.bits()));
  }
}

// Shared body of the traced and untraced general path. Recorder is called as
// recorder(name, operands, result) after each register operation.
template <typename Recorder>
RegisterValue run_general(const MagicParams& params, const RegisterValue& n,
                          DivisionTrace* trace, Recorder&& record) {
  const int p = params.shift_offset;
  const RegisterValue q = mulhi(params.magic_lo, n);
  record("mulhi", {params.magic_lo.value(), n.value()}, q.value());
  const int h = std::min(p, 1);  // h = 0 iff d = 1
  const RegisterValue diff = checked_sub(n, q);
  record("sub", {n.value(), q.value()}, diff.value());
  const RegisterValue halved = shr(diff, h);
  record("shr", {diff.value(), static_cast<uint64_t>(h)}, halved.value());
  const RegisterValue summed = checked_add(halved, q);
  record("add", {halved.value(), q.value()}, summed.value());
  const RegisterValue quotient = shr(summed, p - h);
  record("shr", {summed.value(), static_cast<uint64_t>(p - h)}, quotient.value());
  if (trace != nullptr) {
    trace->q_estimate = q;
    trace->shift_guard = h;
    trace->quotient = quotient;
  }
  return quotient;
}

}  // namespace detail

/// Overflow-safe general path: the five-step sequence
///   q = mulhi(m_lo, n); h = min(p, 1); t = (n - q) >> h; t = t + q;
///   t = t >> (p - h)
/// over checked N-bit registers. Correct for every N-bit dividend and every
/// non-zero divisor, d = 1 included; the checked operations never raise, so
/// any OverflowError or UnderflowError escaping here is a defect.
inline RegisterValue divide_general(const MagicParams& params, const RegisterValue& n) {
  detail::require_param_width(params, n, "divide_general");
  return detail::run_general(params, n, nullptr,
                             [](const char*, std::initializer_list<uint64_t>, uint64_t) {});
}

/// divide_general with a full per-step record, for the verifier and for docs.
inline DivisionTrace divide_general_traced(const MagicParams& params,
                                           const RegisterValue& n) {
  detail::require_param_width(params, n, "divide_general_traced");
  DivisionTrace trace{n, RegisterValue{params.width, 0}, 0, RegisterValue{params.width, 0}, {}};
  detail::run_general(params, n, &trace,
                      [&trace](const char* op, std::initializer_list<uint64_t> operands,
                               uint64_t result) {
                        trace.steps.push_back(TraceStep{op, operands, result});
                      });
  return trace;
}

/// Two-step fast path, valid only for dividends below 2^(N-1):
///   q = mulhi(m_lo, n); t = (n + q) >> p
/// The addition n + q can exceed the register for larger dividends, so the
/// precondition is enforced up front instead of risking a wrong quotient.
inline RegisterValue divide_bounded(const MagicParams& params, const RegisterValue& n) {
  detail::require_param_width(params, n, "divide_bounded");
  if (n.value() >= params.width.half_capacity()) {
    throw BoundError("divide_bounded: dividend " + dec_string(n.value()) +
                     " is not below 2^" + std::to_string(params.width.bits() - 1));
  }
  const RegisterValue q = mulhi(params.magic_lo, n);
  return shr(checked_add(n, q), params.shift_offset);
}

// ---------------------------------------------------------------------------
// Unchecked hot paths. Same arithmetic as the checked routines, on raw
// uint64_t, for timing loops and bulk scans. The test suite pins these to the
// checked paths; the checked paths remain the reference.

/// General path on raw registers. Caller guarantees n fits the width.
inline uint64_t divide_general_raw(uint64_t m_lo, int p, int width_bits, uint64_t n) {
  const uint64_t q =
      static_cast<uint64_t>((static_cast<u128>(m_lo) * n) >> width_bits);
  const int h = p < 1 ? p : 1;
  uint64_t t = (n - q) >> h;
  t += q;
  return t >> (p - h);  // p - h <= 63 for every supported divisor
}

/// Bounded path on raw registers. Caller guarantees n < 2^(width-1).
inline uint64_t divide_bounded_raw(uint64_t m_lo, int p, int width_bits, uint64_t n) {
  const uint64_t q =
      static_cast<uint64_t>((static_cast<u128>(m_lo) * n) >> width_bits);
  const uint64_t sum = n + q;  // cannot wrap: n + q < 2^width <= 2^64
  return p >= 64 ? 0 : sum >> p;
}

}  // namespace magicdiv

#endif  // MAGICDIV_MAGIC_HPP
