#ifndef MAGICDIV_BENCH_HPP
#define MAGICDIV_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "magicdiv/magic.hpp"
#include "magicdiv/rng.hpp"

namespace magicdiv {

/// A deterministic dividend stream. Same (seed, width, length, bounded)
/// always yields the same sequence; bounded streams are masked to N-1 bits so
/// every element satisfies the fast-path precondition.
struct Workload {
  BitWidth width;
  std::vector<uint64_t> dividends;
  uint64_t seed;
  bool bounded;
};

inline Workload generate_workload(BitWidth width, uint64_t length, uint64_t seed,
                                  bool bounded) {
  if (length < 1) {
    throw DomainError("workload length must be at least 1");
  }
  const uint64_t mask = bounded ? width.mask() >> 1 : width.mask();
  Workload w{width, {}, seed, bounded};
  w.dividends.reserve(length);
  SplitMix64 rng(seed);
  for (uint64_t i = 0; i < length; ++i) {
    w.dividends.push_back(rng.next() & mask);
  }
  return w;
}

enum class DivideFlavor { kNative, kGeneral, kBounded };

inline const char* flavor_name(DivideFlavor f) {
  switch (f) {
    case DivideFlavor::kNative: return "native";
    case DivideFlavor::kGeneral: return "general";
    case DivideFlavor::kBounded: return "bounded";
  }
  return "?";
}

struct TimingResult {
  double ns_per_op;                   // median over repetitions
  std::vector<double> reps_ns_per_op; // raw per-repetition figures
  uint64_t accumulator;               // sum of quotients mod 2^N
};

namespace detail {

inline uint64_t accumulate_quotients(const Workload& w, const MagicParams& params,
                                     DivideFlavor flavor) {
  const uint64_t d = params.divisor.value();
  const uint64_t m_lo = params.magic_lo.value();
  const int p = params.shift_offset;
  const int bits = params.width.bits();
  uint64_t acc = 0;
  switch (flavor) {
    case DivideFlavor::kNative:
      for (uint64_t n : w.dividends) acc += n / d;
      break;
    case DivideFlavor::kGeneral:
      for (uint64_t n : w.dividends) acc += divide_general_raw(m_lo, p, bits, n);
      break;
    case DivideFlavor::kBounded:
      for (uint64_t n : w.dividends) acc += divide_bounded_raw(m_lo, p, bits, n);
      break;
  }
  return acc & params.width.mask();
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
}

}  // namespace detail

/// Times one flavor over a workload: median ns/op of at least 5 sequential
/// repetitions. The quotient accumulator is returned (and checked against the
/// other flavors by callers), which keeps the loop from being optimized away
/// and keeps memory traffic out of the measured path.
inline TimingResult time_divisions(const Workload& workload, const MagicParams& params,
                                   DivideFlavor flavor, int repetitions = 5) {
  if (workload.width != params.width) {
    throw WidthMismatchError("time_divisions: workload and parameter widths differ");
  }
  if (flavor == DivideFlavor::kBounded && !workload.bounded) {
    throw FlavorError("bounded flavor requires a bounded workload");
  }
  const int reps = std::max(repetitions, 5);
  TimingResult result{0.0, {}, 0};
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    result.accumulator = detail::accumulate_quotients(workload, params, flavor);
    const auto t1 = std::chrono::steady_clock::now();
    const auto ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
    result.reps_ns_per_op.push_back(ns / static_cast<double>(workload.dividends.size()));
  }
  result.ns_per_op = detail::median(result.reps_ns_per_op);
  return result;
}

/// Element-wise agreement pre-pass: native vs general on every element, plus
/// bounded when the workload permits it. Returns the first disagreeing
/// dividend, or nothing if all paths agree.
inline std::optional<uint64_t> find_disagreement(const Workload& workload,
                                                 const MagicParams& params) {
  const uint64_t d = params.divisor.value();
  const uint64_t m_lo = params.magic_lo.value();
  const int p = params.shift_offset;
  const int bits = params.width.bits();
  for (uint64_t n : workload.dividends) {
    const uint64_t expected = n / d;
    if (divide_general_raw(m_lo, p, bits, n) != expected) {
      return n;
    }
    if (workload.bounded && divide_bounded_raw(m_lo, p, bits, n) != expected) {
      return n;
    }
  }
  return std::nullopt;
}

}  // namespace magicdiv

#endif  // MAGICDIV_BENCH_HPP
