#ifndef MAGICDIV_CLI_HPP
#define MAGICDIV_CLI_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "magicdiv/bench.hpp"
#include "magicdiv/codegen.hpp"
#include "magicdiv/verify.hpp"

namespace magicdiv::cli {

// Exit-code contract: 0 pass, 1 verification failure, 2 usage/domain error.
constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

inline int exit_code_for_verification(bool pass) {
  return pass ? kExitPass : kExitVerificationFailure;
}

/// Parses "lo..hi" into an inclusive range.
inline std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= text.size()) {
    throw DomainError("range must be of the form lo..hi");
  }
  try {
    size_t used = 0;
    const uint64_t lo = std::stoull(text.substr(0, pos), &used);
    if (used != pos) throw DomainError("range must be of the form lo..hi");
    const std::string hi_text = text.substr(pos + 2);
    const uint64_t hi = std::stoull(hi_text, &used);
    if (used != hi_text.size()) throw DomainError("range must be of the form lo..hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw DomainError("range must be of the form lo..hi");
  }
}

namespace detail {

inline std::optional<BitWidth> checked_width(int bits, std::ostream& err) {
  try {
    return BitWidth{bits};
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

inline std::optional<RegisterValue> checked_divisor(BitWidth width, uint64_t d,
                                                    std::ostream& err) {
  if (d == 0) {
    err << "error: divisor must be non-zero (domain error)\n";
    return std::nullopt;
  }
  if (d > width.mask()) {
    err << "error: divisor " << dec_string(d) << " does not fit in "
        << width.bits() << " bits (domain error)\n";
    return std::nullopt;
  }
  return RegisterValue{width, d};
}

inline nlohmann::json json_u128(u128 v) {
  return v < (static_cast<u128>(1) << 53)
             ? nlohmann::json(static_cast<uint64_t>(v))
             : nlohmann::json(dec_string(v));
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// magic

struct MagicOptions {
  int bits = 32;
  uint64_t divisor = 0;
  std::string format = "text";  // text | json | snippet-general | snippet-bounded
};

inline int cmd_magic(const MagicOptions& opt, std::ostream& out, std::ostream& err) {
  const auto width = detail::checked_width(opt.bits, err);
  if (!width) return kExitUsage;
  const auto divisor = detail::checked_divisor(*width, opt.divisor, err);
  if (!divisor) return kExitUsage;

  const MagicParams params = precompute_magic(*width, *divisor);
  if (opt.format == "text") {
    out << "p=" << params.shift_offset << " m_lo=" << params.magic_lo.value() << " ("
        << hex_string(params.magic_lo.value(), *width) << ")\n";
  } else if (opt.format == "json") {
    nlohmann::json j;
    j["bits"] = width->bits();
    j["divisor"] = json_u64(opt.divisor);
    j["p"] = params.shift_offset;
    j["m_lo"] = json_u64(params.magic_lo.value());
    j["m_lo_hex"] = hex_string(params.magic_lo.value(), *width);
    j["m_full"] = detail::json_u128(full_magic(*width, *divisor).to_u128());
    j["power_of_two"] = is_power_of_two(*divisor);
    out << j.dump(2) << "\n";
  } else if (opt.format == "snippet-general" || opt.format == "snippet-bounded") {
    const auto flavor = opt.format == "snippet-general" ? SnippetFlavor::kGeneral
                                                        : SnippetFlavor::kBounded;
    out << make_snippet(params, flavor).str();
  } else {
    err << "error: unknown format '" << opt.format << "'\n";
    return kExitUsage;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// table

struct TableOptions {
  int bits = 32;
  uint64_t d_lo = 1;
  uint64_t d_hi = 0;
  std::string format = "csv";  // csv | json
};

inline int cmd_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  const auto width = detail::checked_width(opt.bits, err);
  if (!width) return kExitUsage;
  if (opt.d_lo < 1 || opt.d_lo > opt.d_hi || opt.d_hi > width->mask()) {
    err << "error: divisor range [" << dec_string(opt.d_lo) << ", "
        << dec_string(opt.d_hi) << "] is not within [1, 2^" << width->bits()
        << " - 1]\n";
    return kExitUsage;
  }
  if (opt.format == "csv") {
    out << table_csv_header() << "\n";
    for (uint64_t d = opt.d_lo;; ++d) {
      out << to_csv(make_table_row(*width, d)) << "\n";
      if (d == opt.d_hi) break;
    }
  } else if (opt.format == "json") {
    auto rows = nlohmann::json::array();
    for (uint64_t d = opt.d_lo;; ++d) {
      const MagicTableRow row = make_table_row(*width, d);
      rows.push_back({{"d", json_u64(row.d)},
                      {"p", row.p},
                      {"m_lo", json_u64(row.m_lo)},
                      {"m_lo_hex", row.m_lo_hex},
                      {"pow2", row.power_of_two},
                      {"m_full", row.m_full.str()}});
      if (d == opt.d_hi) break;
    }
    out << nlohmann::json{{"bits", width->bits()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    err << "error: unknown format '" << opt.format << "'\n";
    return kExitUsage;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  int bits = 32;
  std::optional<uint64_t> divisor;
  std::optional<std::pair<uint64_t, uint64_t>> range;
  bool all_divisors = false;
  std::string strategy = "boundary";  // exhaustive | boundary | sample
  uint64_t sample_count = 0;
  std::optional<uint64_t> seed;
  bool find_overflow_witness = false;
  uint64_t witness_budget = 1000000;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const auto width = detail::checked_width(opt.bits, err);
  if (!width) return kExitUsage;

  const int selections = (opt.divisor ? 1 : 0) + (opt.range ? 1 : 0) +
                         (opt.all_divisors ? 1 : 0);
  if (selections != 1) {
    err << "error: exactly one of --divisor, --range, --all-divisors is required\n";
    return kExitUsage;
  }

  SweepPlan plan{*width, DivisorRange{}, {}, DividendStrategy::kBoundary, 0,
                 std::nullopt};
  if (opt.divisor) {
    plan.divisor_list = {*opt.divisor};
  } else if (opt.range) {
    plan.range = DivisorRange{opt.range->first, opt.range->second};
  } else {
    plan.range = DivisorRange{1, width->mask()};
  }
  if (opt.strategy == "exhaustive") {
    plan.strategy = DividendStrategy::kExhaustive;
  } else if (opt.strategy == "boundary") {
    plan.strategy = DividendStrategy::kBoundary;
  } else if (opt.strategy == "sample") {
    plan.strategy = DividendStrategy::kUniformSample;
    plan.sample_count = opt.sample_count;
    plan.seed = opt.seed;
  } else {
    err << "error: unknown strategy '" << opt.strategy << "'\n";
    return kExitUsage;
  }

  nlohmann::json output;
  bool pass = true;
  try {
    const VerificationReport sweep = run_sweep(plan);
    pass = pass && sweep.pass();
    output["sweep"] = to_json(sweep);

    auto lemmas = nlohmann::json::array();
    const auto run_lemma = [&](const VerificationReport& r) {
      pass = pass && r.pass();
      lemmas.push_back(to_json(r));
    };
    if (plan.divisor_list.empty()) {
      run_lemma(check_lemma_33bits(*width, plan.range));
      run_lemma(check_lemma5_residual(*width, plan.range));
    } else {
      run_lemma(check_lemma_33bits(*width, plan.divisor_list));
      run_lemma(check_lemma5_residual(*width, plan.divisor_list));
    }
    if (width->bits() <= 16) {
      run_lemma(check_lemma_ratio(*width));
    }
    output["lemma_checks"] = lemmas;

    if (opt.find_overflow_witness) {
      // A found witness is an expected property of the divisor, not a failure.
      nlohmann::json witnesses = nlohmann::json::array();
      const auto search = [&](uint64_t d) {
        const auto w = find_addition_overflow_witness(*width, RegisterValue{*width, d},
                                                      opt.witness_budget);
        if (w) witnesses.push_back(to_json(*w));
      };
      if (plan.divisor_list.empty()) {
        for (uint64_t d = plan.range.lo;; ++d) {
          search(d);
          if (d == plan.range.hi) break;
        }
      } else {
        for (uint64_t d : plan.divisor_list) search(d);
      }
      output["overflow_witnesses"] = witnesses;
    }
  } catch (const PlanError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  output["verdict"] = pass ? "PASS" : "FAIL";
  out << output.dump(2) << "\n";
  return exit_code_for_verification(pass);
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  int bits = 64;
  std::vector<uint64_t> divisors;
  uint64_t iterations = 0;
  uint64_t seed = 0;
  int repetitions = 5;
  std::string format = "text";  // text | json
};

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  const auto width = detail::checked_width(opt.bits, err);
  if (!width) return kExitUsage;
  if (opt.divisors.empty()) {
    err << "error: at least one divisor is required\n";
    return kExitUsage;
  }
  if (opt.iterations < 1) {
    err << "error: iterations must be at least 1\n";
    return kExitUsage;
  }
  if (opt.format != "text" && opt.format != "json") {
    err << "error: unknown format '" << opt.format << "'\n";
    return kExitUsage;
  }
  std::vector<RegisterValue> divisors;
  for (uint64_t d : opt.divisors) {
    const auto dv = detail::checked_divisor(*width, d, err);
    if (!dv) return kExitUsage;
    divisors.push_back(*dv);
  }

  const Workload full = generate_workload(*width, opt.iterations, opt.seed, false);
  const Workload bounded = generate_workload(*width, opt.iterations, opt.seed, true);

  // Correctness gate before any timing is reported.
  for (const RegisterValue& d : divisors) {
    const MagicParams params = precompute_magic(*width, d);
    for (const Workload* w : {&full, &bounded}) {
      if (const auto bad = find_disagreement(*w, params)) {
        err << "agreement FAIL: d=" << dec_string(d.value())
            << " n=" << dec_string(*bad) << " disagrees with native division\n";
        return kExitVerificationFailure;
      }
    }
  }

  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> text_rows;
  for (const RegisterValue& d : divisors) {
    const MagicParams params = precompute_magic(*width, d);
    const bool pow2 = is_power_of_two(d);
    const TimingResult native = time_divisions(full, params, DivideFlavor::kNative,
                                               opt.repetitions);
    const struct {
      DivideFlavor flavor;
      const Workload* workload;
    } passes[] = {{DivideFlavor::kNative, &full},
                  {DivideFlavor::kGeneral, &full},
                  {DivideFlavor::kBounded, &bounded}};
    for (const auto& pass : passes) {
      const TimingResult r = pass.flavor == DivideFlavor::kNative
                                 ? native
                                 : time_divisions(*pass.workload, params, pass.flavor,
                                                  opt.repetitions);
      const double ratio = r.ns_per_op / native.ns_per_op;
      const char* note = pow2 ? "shift-only candidate (power of two)" : "";
      char line[160];
      std::snprintf(line, sizeof line, "%-12s %-8s %10s %10s  %s",
                    dec_string(d.value()).c_str(), flavor_name(pass.flavor),
                    detail::format_double(r.ns_per_op).c_str(),
                    detail::format_double(ratio).c_str(), note);
      text_rows.push_back(line);
      nlohmann::json reps = nlohmann::json::array();
      for (double v : r.reps_ns_per_op) reps.push_back(v);
      rows.push_back({{"d", json_u64(d.value())},
                      {"flavor", flavor_name(pass.flavor)},
                      {"ns_per_op", r.ns_per_op},
                      {"ratio_vs_native", ratio},
                      {"reps_ns_per_op", reps},
                      {"accumulator", json_u64(r.accumulator)},
                      {"note", note}});
    }
  }

  if (opt.format == "json") {
    nlohmann::json j;
    j["bits"] = width->bits();
    j["iterations"] = json_u64(opt.iterations);
    j["seed"] = json_u64(opt.seed);
    j["agreement"] = "PASS";
    j["rows"] = rows;
    out << j.dump(2) << "\n";
  } else {
    out << "agreement PASS (" << dec_string(opt.iterations)
        << " dividends per stream, seed " << dec_string(opt.seed) << ")\n";
    char header[160];
    std::snprintf(header, sizeof header, "%-12s %-8s %10s %10s  %s", "d", "flavor",
                  "ns/op", "ratio", "note");
    out << header << "\n";
    for (const auto& line : text_rows) out << line << "\n";
  }
  return kExitPass;
}

}  // namespace magicdiv::cli

#endif  // MAGICDIV_CLI_HPP
