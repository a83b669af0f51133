#ifndef MAGICDIV_VERIFY_HPP
#define MAGICDIV_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "magicdiv/magic.hpp"
#include "magicdiv/nbits.hpp"
#include "magicdiv/rng.hpp"

namespace magicdiv {

// ---------------------------------------------------------------------------
// Sweep planning

enum class DividendStrategy { kExhaustive, kBoundary, kUniformSample };

inline const char* strategy_name(DividendStrategy s) {
  switch (s) {
    case DividendStrategy::kExhaustive: return "exhaustive";
    case DividendStrategy::kBoundary: return "boundary";
    case DividendStrategy::kUniformSample: return "uniform-sample";
  }
  return "?";
}

/// Inclusive divisor interval.
struct DivisorRange {
  uint64_t lo = 1;
  uint64_t hi = 0;
};

/// A verification sweep: which divisors to test at a given width, and which
/// dividends to run for each. Divisors come from `divisor_list` when it is
/// non-empty, otherwise from `range`.
///
/// Dividend strategies:
///   exhaustive     every n in U_N
///   boundary       {0, 1, d-1, d, d+1, 2^(N-1)-1, 2^(N-1), 2^N-1} clipped to
///                  U_N, plus the multiples of d nearest 2^N and their +-1
///                  neighbors (the proof's tight spots)
///   uniform-sample `sample_count` draws per divisor; for divisor d the draws
///                  are the first outputs of splitmix64 seeded with seed + d,
///                  masked to N bits (per-divisor streams keep parallel and
///                  sequential execution identical)
struct SweepPlan {
  BitWidth width;
  DivisorRange range;
  std::vector<uint64_t> divisor_list;
  DividendStrategy strategy = DividendStrategy::kExhaustive;
  uint64_t sample_count = 0;
  std::optional<uint64_t> seed;

  void validate() const {
    const uint64_t mask = width.mask();
    if (divisor_list.empty()) {
      if (range.lo > range.hi) {
        throw PlanError("empty divisor range");
      }
      if (range.lo < 1 || range.hi > mask) {
        throw PlanError("divisor range not within [1, 2^N - 1]");
      }
    } else {
      for (uint64_t d : divisor_list) {
        if (d < 1 || d > mask) {
          throw PlanError("divisor " + dec_string(d) + " not within [1, 2^N - 1]");
        }
      }
    }
    if (strategy == DividendStrategy::kUniformSample) {
      if (sample_count == 0) {
        throw PlanError("uniform-sample requires a positive sample count");
      }
      if (!seed.has_value()) {
        throw PlanError("uniform-sample requires an explicit 64-bit seed");
      }
    }
  }

  uint64_t divisor_count() const {
    return divisor_list.empty() ? range.hi - range.lo + 1 : divisor_list.size();
  }
  uint64_t divisor_at(uint64_t index) const {
    return divisor_list.empty() ? range.lo + index : divisor_list[index];
  }
};

/// Boundary dividend set for one divisor.
inline std::vector<uint64_t> boundary_dividends(BitWidth width, uint64_t d) {
  const uint64_t mask = width.mask();
  const uint64_t half = width.half_capacity();
  std::vector<uint64_t> out = {0, 1, d - 1, d, half - 1, half, mask};
  if (d < mask) {
    out.push_back(d + 1);
  }
  const uint64_t kmax = mask / d;
  for (uint64_t j : {kmax > 1 ? kmax - 1 : kmax, kmax}) {
    const uint64_t multiple = j * d;  // j <= mask / d, so this cannot wrap
    if (multiple >= 1) out.push_back(multiple - 1);
    out.push_back(multiple);
    if (multiple < mask) out.push_back(multiple + 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Report types

struct Mismatch {
  uint64_t d, n, expected, got;
};

/// One checked-arithmetic event observed during a sweep: which algorithm and
/// step raised, on which (d, n), and the exact offending value (the sum for
/// an overflow, the deficit for an underflow).
struct ArithEvent {
  std::string algorithm;
  std::string step;
  uint64_t d, n;
  u128 value;
};

struct LemmaFailure {
  std::string lemma;
  std::vector<std::pair<std::string, std::string>> values;
};

struct VerificationReport {
  SweepPlan plan;
  uint64_t cases_run = 0;
  std::vector<Mismatch> mismatches;
  std::vector<ArithEvent> overflow_events;
  std::vector<LemmaFailure> lemma_failures;
  std::chrono::nanoseconds elapsed{0};

  bool pass() const {
    return mismatches.empty() && overflow_events.empty() && lemma_failures.empty();
  }
};

/// A concrete (d, n) for which the two-step path's addition n + q does not
/// fit an N-bit register.
struct OverflowWitness {
  BitWidth width;
  RegisterValue divisor;
  RegisterValue dividend;
  u128 n_plus_q;

  /// Recomputes n + floor(m_lo * n / 2^N) by exact arithmetic and confirms it
  /// both matches the stored sum and reaches 2^N.
  bool validate() const {
    const MagicParams params = precompute_magic(width, divisor);
    const u128 q = (static_cast<u128>(params.magic_lo.value()) * dividend.value()) >>
                   width.bits();
    const u128 sum = static_cast<u128>(dividend.value()) + q;
    return sum == n_plus_q && sum >= width.capacity();
  }
};

// ---------------------------------------------------------------------------
// Ground truth

/// floor(n / d) by the platform's native integer division. This is the
/// independent oracle; it never touches the magic-number path.
inline RegisterValue oracle_divide(const RegisterValue& d, const RegisterValue& n) {
  detail::require_same_width(d, n, "oracle_divide");
  if (d.value() == 0) {
    throw DomainError("oracle_divide: divisor is zero");
  }
  return {n.width(), n.value() / d.value()};
}

// ---------------------------------------------------------------------------
// Equivalence sweep

namespace detail {

struct SweepPartial {
  uint64_t cases = 0;
  std::vector<Mismatch> mismatches;
  std::vector<ArithEvent> events;
};

inline void sweep_one_case(const MagicParams& params, uint64_t d, uint64_t n,
                           SweepPartial& out) {
  const BitWidth w = params.width;
  const uint64_t expected = n / d;
  try {
    const RegisterValue got = divide_general(params, RegisterValue{w, n});
    if (got.value() != expected) {
      out.mismatches.push_back({d, n, expected, got.value()});
    }
  } catch (const UnderflowError& e) {
    out.events.push_back({"general", "sub", d, n, e.deficit()});
  } catch (const OverflowError& e) {
    out.events.push_back({"general", "add", d, n, e.exact_sum()});
  }
  if (n < w.half_capacity()) {
    try {
      const RegisterValue got = divide_bounded(params, RegisterValue{w, n});
      if (got.value() != expected) {
        out.mismatches.push_back({d, n, expected, got.value()});
      }
    } catch (const OverflowError& e) {
      out.events.push_back({"bounded", "add", d, n, e.exact_sum()});
    }
  }
  ++out.cases;
}

template <typename Fn>
void for_each_dividend(const SweepPlan& plan, uint64_t d, Fn&& fn) {
  switch (plan.strategy) {
    case DividendStrategy::kExhaustive: {
      const uint64_t mask = plan.width.mask();
      for (uint64_t n = 0;; ++n) {  // mask can be 2^64 - 1, so no n <= mask test
        fn(n);
        if (n == mask) break;
      }
      break;
    }
    case DividendStrategy::kBoundary:
      for (uint64_t n : boundary_dividends(plan.width, d)) {
        fn(n);
      }
      break;
    case DividendStrategy::kUniformSample: {
      SplitMix64 rng(*plan.seed + d);
      const uint64_t mask = plan.width.mask();
      for (uint64_t i = 0; i < plan.sample_count; ++i) {
        fn(rng.next() & mask);
      }
      break;
    }
  }
}

inline void sweep_divisor_span(const SweepPlan& plan, uint64_t first, uint64_t last,
                               SweepPartial& out) {
  for (uint64_t i = first; i < last; ++i) {
    const uint64_t d = plan.divisor_at(i);
    const MagicParams params = precompute_magic(plan.width, RegisterValue{plan.width, d});
    for_each_dividend(plan, d, [&](uint64_t n) { sweep_one_case(params, d, n, out); });
  }
}

}  // namespace detail

/// Worker count for a sweep. MAGICDIV_THREADS caps parallelism; 0 or unset
/// picks the hardware concurrency.
inline unsigned sweep_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("MAGICDIV_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) {
      return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
    }
  }
  return hw;
}

/// Runs divide_general (always) and divide_bounded (for n below 2^(N-1)) for
/// every planned (d, n), compares both against oracle_divide, and records
/// every mismatch and every checked-arithmetic event. Work is split across
/// threads by divisor; partial results are merged and canonicalized by
/// (d, n) sort, so the report is identical however many threads ran.
inline VerificationReport run_sweep(const SweepPlan& plan, unsigned thread_cap = 0) {
  plan.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const uint64_t count = plan.divisor_count();
  const unsigned requested = thread_cap > 0 ? thread_cap : sweep_thread_count();
  const unsigned workers =
      static_cast<unsigned>(std::min<uint64_t>(requested, count));

  std::vector<detail::SweepPartial> partials(workers);
  if (workers <= 1) {
    detail::sweep_divisor_span(plan, 0, count, partials[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      const uint64_t first = count * t / workers;
      const uint64_t last = count * (t + 1) / workers;
      pool.emplace_back([&plan, first, last, &partials, t] {
        detail::sweep_divisor_span(plan, first, last, partials[t]);
      });
    }
    for (auto& th : pool) th.join();
  }

  VerificationReport report{plan, 0, {}, {}, {}, {}};
  for (auto& partial : partials) {
    report.cases_run += partial.cases;
    report.mismatches.insert(report.mismatches.end(), partial.mismatches.begin(),
                             partial.mismatches.end());
    report.overflow_events.insert(report.overflow_events.end(), partial.events.begin(),
                                  partial.events.end());
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& a, const Mismatch& b) {
              return std::tie(a.d, a.n, a.got) < std::tie(b.d, b.n, b.got);
            });
  std::sort(report.overflow_events.begin(), report.overflow_events.end(),
            [](const ArithEvent& a, const ArithEvent& b) {
              return std::tie(a.d, a.n, a.algorithm, a.step) <
                     std::tie(b.d, b.n, b.algorithm, b.step);
            });
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

// ---------------------------------------------------------------------------
// Overflow witness search

/// Scans n downward from 2^N - 1 looking for n + q >= 2^N, within the given
/// budget. Large n dominate n + q, so the top of the range is where witnesses
/// live when they exist. Power-of-two divisors have m_lo = 0, hence q = 0 and
/// n + q = n < 2^N for every n: no witness exists for any budget.
inline std::optional<OverflowWitness> find_addition_overflow_witness(
    BitWidth width, const RegisterValue& d, uint64_t search_budget) {
  const MagicParams params = precompute_magic(width, d);
  if (is_power_of_two(d)) {
    return std::nullopt;
  }
  const uint64_t m_lo = params.magic_lo.value();
  const int bits = width.bits();
  const u128 capacity = width.capacity();
  uint64_t n = width.mask();
  for (uint64_t tried = 0; tried < search_budget; ++tried) {
    const u128 q = (static_cast<u128>(m_lo) * n) >> bits;
    const u128 sum = static_cast<u128>(n) + q;
    if (sum >= capacity) {
      OverflowWitness witness{width, d, RegisterValue{width, n}, sum};
      if (!witness.validate()) {
        throw Error("overflow witness failed exact revalidation");
      }
      return witness;
    }
    if (n == 0) break;
    --n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lemma checks. All comparisons are exact integer comparisons; a PASS at
// width W means the statement held for every value in U_W without exception.

namespace detail {

inline SweepPlan lemma_plan(BitWidth width, DivisorRange range) {
  return SweepPlan{width, range, {}, DividendStrategy::kExhaustive, 0, std::nullopt};
}

inline void add_failure(VerificationReport& report, std::string lemma,
                        std::vector<std::pair<std::string, std::string>> values) {
  report.lemma_failures.push_back(LemmaFailure{std::move(lemma), std::move(values)});
}

// 2^k - 1 for k in [1, 128].
inline u128 pow2_minus_1(int k) {
  return k >= 128 ? ~static_cast<u128>(0) : (static_cast<u128>(1) << k) - 1;
}

template <typename ForEachDivisor>
VerificationReport check_magic_width_impl(BitWidth width, DivisorRange planned,
                                          ForEachDivisor&& for_each) {
  VerificationReport report{lemma_plan(width, planned), 0, {}, {}, {}, {}};
  const auto t0 = std::chrono::steady_clock::now();
  const u128 lo_bound = width.capacity();       // 2^N
  const u128 hi_bound = lo_bound << 1;          // 2^(N+1)
  for_each([&](uint64_t d) {
    const RegisterValue dv{width, d};
    const u128 m = full_magic(width, dv).to_u128();
    if (m < lo_bound || m >= hi_bound) {
      add_failure(report, "33bits", {{"d", dec_string(d)}, {"m", dec_string(m)}});
    }
    const uint64_t m_lo = precompute_magic(width, dv).magic_lo.value();
    if (static_cast<u128>(m_lo) != m - lo_bound) {
      add_failure(report, "m_lo-identity",
                  {{"d", dec_string(d)}, {"m", dec_string(m)}, {"m_lo", dec_string(m_lo)}});
    }
    if (is_power_of_two(dv) && m_lo != 0) {
      add_failure(report, "pow2-m_lo-zero",
                  {{"d", dec_string(d)}, {"m_lo", dec_string(m_lo)}});
    }
    ++report.cases_run;
  });
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

template <typename ForEachDivisor>
VerificationReport check_residual_impl(BitWidth width, DivisorRange planned,
                                       ForEachDivisor&& for_each) {
  VerificationReport report{lemma_plan(width, planned), 0, {}, {}, {}, {}};
  const auto t0 = std::chrono::steady_clock::now();
  const int bits = width.bits();
  for_each([&](uint64_t d) {
    const RegisterValue dv{width, d};
    const int k = bits + ceil_log2(dv);
    const uint64_t e = d - 1 - static_cast<uint64_t>(pow2_minus_1(k) % d);
    if (e >= d) {
      add_failure(report, "residual-range", {{"d", dec_string(d)}, {"e", dec_string(e)}});
    }
    const u128 m = full_magic(width, dv).to_u128();
    const Uint192 product = Uint192::mul(m, d);
    if (product.bit_width() > 2 * bits + 1) {
      // m has N+1 bits and d has up to N, so the product must fit 2N+1 bits.
      add_failure(report, "product-width",
                  {{"d", dec_string(d)}, {"bits", std::to_string(product.bit_width())}});
    }
    if (!(product == Uint192::pow2(k) + Uint192{e})) {
      add_failure(report, "residual-identity",
                  {{"d", dec_string(d)}, {"m", dec_string(m)}, {"e", dec_string(e)}});
    }
    ++report.cases_run;
  });
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

template <typename Impl>
VerificationReport over_range(BitWidth width, DivisorRange range, Impl&& impl) {
  if (range.lo < 1 || range.lo > range.hi || range.hi > width.mask()) {
    throw PlanError("divisor range not within [1, 2^N - 1]");
  }
  return impl(width, range, [&](auto&& fn) {
    for (uint64_t d = range.lo;; ++d) {
      fn(d);
      if (d == range.hi) break;
    }
  });
}

template <typename Impl>
VerificationReport over_list(BitWidth width, const std::vector<uint64_t>& divisors,
                             Impl&& impl) {
  if (divisors.empty()) {
    throw PlanError("empty divisor list");
  }
  const auto [lo, hi] = std::minmax_element(divisors.begin(), divisors.end());
  if (*lo < 1 || *hi > width.mask()) {
    throw PlanError("divisor not within [1, 2^N - 1]");
  }
  return impl(width, DivisorRange{*lo, *hi}, [&](auto&& fn) {
    for (uint64_t d : divisors) fn(d);
  });
}

}  // namespace detail

/// Magic-number width: 2^N <= m < 2^(N+1) for every d in range, plus the
/// identities m_lo = m - 2^N and (d a power of two) => m_lo = 0.
inline VerificationReport check_lemma_33bits(BitWidth width, DivisorRange range) {
  return detail::over_range(width, range, [](BitWidth w, DivisorRange r, auto&& fe) {
    return detail::check_magic_width_impl(w, r, fe);
  });
}
inline VerificationReport check_lemma_33bits(BitWidth width,
                                             const std::vector<uint64_t>& divisors) {
  return detail::over_list(width, divisors, [](BitWidth w, DivisorRange r, auto&& fe) {
    return detail::check_magic_width_impl(w, r, fe);
  });
}

/// Residual decomposition: e = d - 1 - ((2^k - 1) mod d) satisfies 0 <= e < d
/// and m*d = 2^k + e, with k = N + p. The product m*d needs up to 2N+1 bits,
/// which is what WideProduct is for.
inline VerificationReport check_lemma5_residual(BitWidth width, DivisorRange range) {
  return detail::over_range(width, range, [](BitWidth w, DivisorRange r, auto&& fe) {
    return detail::check_residual_impl(w, r, fe);
  });
}
inline VerificationReport check_lemma5_residual(BitWidth width,
                                                const std::vector<uint64_t>& divisors) {
  return detail::over_list(width, divisors, [](BitWidth w, DivisorRange r, auto&& fe) {
    return detail::check_residual_impl(w, r, fe);
  });
}

/// Scaled-reciprocal ratio bound: 2^ceil(log2 u) * (2^(N-1) + 1) <= 2^N * u
/// for every u in U_N^+, with equality exactly at u = 2^(N-1) + 1. Checked in
/// cross-multiplied integer form; no floating point, no tolerance.
inline VerificationReport check_lemma_ratio(BitWidth width) {
  if (width.bits() > 16) {
    throw DomainError("check_lemma_ratio: exhaustive mode supports widths up to 16");
  }
  VerificationReport report{
      detail::lemma_plan(width, DivisorRange{1, width.mask()}), 0, {}, {}, {}, {}};
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t equality_point = width.half_capacity() + 1;
  bool equality_seen = false;
  for (uint64_t u = 1; u <= width.mask(); ++u) {
    const int p = ceil_log2(RegisterValue{width, u});
    const u128 lhs = (static_cast<u128>(1) << p) * (width.half_capacity() + 1);
    const u128 rhs = width.capacity() * u;
    if (lhs > rhs) {
      detail::add_failure(report, "ratio",
                          {{"u", dec_string(u)},
                           {"lhs", dec_string(lhs)},
                           {"rhs", dec_string(rhs)}});
    } else if (lhs == rhs) {
      if (u != equality_point) {
        detail::add_failure(report, "ratio-equality-off-point", {{"u", dec_string(u)}});
      }
      equality_seen = true;
    }
    ++report.cases_run;
  }
  if (!equality_seen) {
    detail::add_failure(report, "ratio-equality-missing",
                        {{"u", dec_string(equality_point)}});
  }
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

/// Product width is tightly bounded: for all M, N in [2, max_width], every
/// product of an M-bit by an N-bit value fits M+N bits, and the all-ones pair
/// needs exactly M+N.
inline VerificationReport check_product_width(int max_width) {
  if (max_width < 2 || max_width > 8) {
    throw DomainError("check_product_width: max width must be in [2, 8]");
  }
  VerificationReport report{
      detail::lemma_plan(BitWidth{max_width}, DivisorRange{1, BitWidth{max_width}.mask()}),
      0, {}, {}, {}, {}};
  const auto t0 = std::chrono::steady_clock::now();
  for (int m = 2; m <= max_width; ++m) {
    for (int n = 2; n <= max_width; ++n) {
      const uint64_t x_max = (uint64_t{1} << m) - 1;
      const uint64_t y_max = (uint64_t{1} << n) - 1;
      for (uint64_t x = 0; x <= x_max; ++x) {
        for (uint64_t y = 0; y <= y_max; ++y) {
          if (product_bit_width(x, y) > m + n) {
            detail::add_failure(report, "product-width",
                                {{"M", std::to_string(m)},
                                 {"N", std::to_string(n)},
                                 {"x", dec_string(x)},
                                 {"y", dec_string(y)}});
          }
          ++report.cases_run;
        }
      }
      if (product_bit_width(x_max, y_max) != m + n) {
        detail::add_failure(report, "product-width-tightness",
                            {{"M", std::to_string(m)}, {"N", std::to_string(n)}});
      }
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

// ---------------------------------------------------------------------------
// JSON serialization. Counterexample payloads are decimal strings throughout;
// other numeric fields become strings once they reach 2^53, past which JSON
// numbers lose 64-bit precision.

inline nlohmann::json json_u64(uint64_t v) {
  return v < (uint64_t{1} << 53) ? nlohmann::json(v) : nlohmann::json(dec_string(v));
}

inline nlohmann::json to_json(const SweepPlan& plan) {
  nlohmann::json j;
  j["bits"] = plan.width.bits();
  if (plan.divisor_list.empty()) {
    j["divisors"] = {{"lo", json_u64(plan.range.lo)}, {"hi", json_u64(plan.range.hi)}};
  } else {
    auto arr = nlohmann::json::array();
    for (uint64_t d : plan.divisor_list) arr.push_back(json_u64(d));
    j["divisors"] = arr;
  }
  j["strategy"] = strategy_name(plan.strategy);
  if (plan.strategy == DividendStrategy::kUniformSample) {
    j["sample_count"] = json_u64(plan.sample_count);
    j["seed"] = json_u64(*plan.seed);
    j["rng"] = SplitMix64::kAlgorithmId;
  }
  return j;
}

inline nlohmann::json to_json(const OverflowWitness& w) {
  return {{"bits", w.width.bits()},
          {"d", dec_string(w.divisor.value())},
          {"n", dec_string(w.dividend.value())},
          {"n_plus_q", dec_string(w.n_plus_q)}};
}

inline nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["verdict"] = report.pass() ? "PASS" : "FAIL";
  j["plan"] = to_json(report.plan);
  j["cases_run"] = json_u64(report.cases_run);
  auto mismatches = nlohmann::json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"d", dec_string(m.d)},
                          {"n", dec_string(m.n)},
                          {"expected", dec_string(m.expected)},
                          {"got", dec_string(m.got)}});
  }
  j["mismatches"] = mismatches;
  auto events = nlohmann::json::array();
  for (const auto& e : report.overflow_events) {
    events.push_back({{"algorithm", e.algorithm},
                      {"step", e.step},
                      {"d", dec_string(e.d)},
                      {"n", dec_string(e.n)},
                      {"value", dec_string(e.value)}});
  }
  j["overflow_events"] = events;
  auto lemmas = nlohmann::json::array();
  for (const auto& f : report.lemma_failures) {
    nlohmann::json values;
    for (const auto& [key, value] : f.values) values[key] = value;
    lemmas.push_back({{"lemma", f.lemma}, {"values", values}});
  }
  j["lemma_failures"] = lemmas;
  j["elapsed_ns"] = report.elapsed.count();
  return j;
}

}  // namespace magicdiv

#endif  // MAGICDIV_VERIFY_HPP
