// Acceptance suite: runs every top-level correctness and feasibility
// criterion at full scale and prints one PASS/FAIL line per criterion.
// Exit status is 0 only if every criterion passed.

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "magicdiv/cli.hpp"
#include "magicdiv/magicdiv.hpp"

using namespace magicdiv;

namespace {

int g_failures = 0;

void criterion(int id, bool pass, const std::string& description) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id,
              description.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct SweepTotals {
  uint64_t cases = 0;
  uint64_t mismatches = 0;
  uint64_t general_events = 0;
  uint64_t bounded_events = 0;
  std::string first_detail;
};

// Criteria 1-3 share one pass over the exhaustive N=2..12 sweeps.
SweepTotals exhaustive_small_width_sweeps() {
  SweepTotals totals;
  for (int bits = 2; bits <= 12; ++bits) {
    const BitWidth w{bits};
    const SweepPlan plan{w, DivisorRange{1, w.mask()}, {},
                         DividendStrategy::kExhaustive, 0, std::nullopt};
    const VerificationReport report = run_sweep(plan);
    totals.cases += report.cases_run;
    totals.mismatches += report.mismatches.size();
    for (const ArithEvent& e : report.overflow_events) {
      (e.algorithm == "general" ? totals.general_events : totals.bounded_events) += 1;
    }
    if (totals.first_detail.empty() && !report.mismatches.empty()) {
      const Mismatch& m = report.mismatches.front();
      totals.first_detail = "first mismatch N=" + std::to_string(bits) + " d=" +
                            dec_string(m.d) + " n=" + dec_string(m.n);
    }
  }
  return totals;
}

bool witness_exists_at(int bits) {
  const BitWidth w{bits};
  std::vector<uint64_t> candidates{w.mask(), 7, 255, 65535, 3, 5};
  for (uint64_t d : candidates) {
    if (d < 1 || d > w.mask()) continue;
    const auto witness =
        find_addition_overflow_witness(w, RegisterValue{w, d}, 10000);
    if (witness && witness->validate()) {
      std::printf("    N=%d: d=%s n=%s n+q=%s\n", bits,
                  dec_string(witness->divisor.value()).c_str(),
                  dec_string(witness->dividend.value()).c_str(),
                  dec_string(witness->n_plus_q).c_str());
      return true;
    }
  }
  return false;
}

}  // namespace

int main() {
  // 1-3: exhaustive equivalence and feasibility at small widths.
  const SweepTotals totals = exhaustive_small_width_sweeps();
  criterion(1, totals.mismatches == 0,
            "exhaustive correctness, N=2..12, all d, all n: " +
                dec_string(totals.cases) + " cases, " +
                dec_string(totals.mismatches) + " mismatches" +
                (totals.first_detail.empty() ? "" : " (" + totals.first_detail + ")"));
  criterion(2, totals.mismatches == 0 && totals.bounded_events == 0,
            "exhaustive bounded correctness for n < 2^(N-1): " +
                dec_string(totals.bounded_events) + " checked-add overflow events");
  criterion(3, totals.general_events == 0,
            "general-path feasibility: " + dec_string(totals.general_events) +
                " underflow/overflow events across all sweeps");

  // 4: the addition n + q really can overflow an N-bit register.
  {
    bool all = true;
    for (int bits : {8, 16, 32}) {
      all = witness_exists_at(bits) && all;
    }
    criterion(4, all,
              "overflow witnesses exist and revalidate exactly at N in {8, 16, 32}");
  }

  // 5-7: exhaustive lemma checks through width 16.
  {
    bool pass_33 = true, pass_ratio = true, pass_residual = true;
    for (int bits = 2; bits <= 16; ++bits) {
      const BitWidth w{bits};
      const DivisorRange all{1, w.mask()};
      pass_33 = check_lemma_33bits(w, all).pass() && pass_33;
      pass_ratio = check_lemma_ratio(w).pass() && pass_ratio;
      pass_residual = check_lemma5_residual(w, all).pass() && pass_residual;
    }
    criterion(5, pass_33, "magic numbers occupy exactly N+1 bits, N=2..16, all d");
    criterion(6, pass_ratio,
              "ratio bound with equality only at 2^(N-1)+1, N=2..16, all u");
    criterion(7, pass_residual,
              "residual identity m*d = 2^(N+p) + e with 0 <= e < d, N=2..16, all d");
  }

  // 8: product width tightly bounded by M+N.
  criterion(8, check_product_width(8).pass(),
            "products of M-bit by N-bit values need exactly up to M+N bits, M,N in "
            "[2,8]");

  // 9: frozen known constants.
  {
    const MagicParams p3 = precompute_magic(BitWidth{32}, 3);
    const MagicParams p7 = precompute_magic(BitWidth{32}, 7);
    const bool pass = p3.shift_offset == 2 && p3.magic_lo.value() == 0x55555556u &&
                      p7.shift_offset == 3 && p7.magic_lo.value() == 0x24924925u;
    criterion(9, pass,
              "known constants: (32,3) -> p=2 m_lo=0x55555556, (32,7) -> p=3 "
              "m_lo=0x24924925");
  }

  // 10: boundary sweeps at the wide widths.
  {
    bool pass = true;
    uint64_t cases = 0;
    for (int bits : {32, 64}) {
      const BitWidth w{bits};
      const uint64_t half = w.half_capacity();
      const SweepPlan plan{w, DivisorRange{}, {1, 2, 3, 7, 641, half, half + 1, w.mask()},
                           DividendStrategy::kBoundary, 0, std::nullopt};
      const VerificationReport report = run_sweep(plan);
      pass = report.pass() && pass;
      cases += report.cases_run;
    }
    criterion(10, pass,
              "boundary sweeps at N in {32, 64} over the spot divisors: " +
                  dec_string(cases) + " cases, both paths feasible and exact");
  }

  // 11: bench agreement gate on a million-element stream; ratios are
  // reported for information only.
  {
    cli::BenchOptions opt;
    opt.bits = 64;
    opt.divisors = {3, 7, 641};
    opt.iterations = 1000000;
    opt.seed = 42;
    std::ostringstream out, err;
    const int code = cli::cmd_bench(opt, out, err);
    criterion(11, code == 0,
              "bench agreement gate on 10^6-element seeded workloads, d in {3, 7, "
              "641}, N=64");
    std::istringstream lines(code == 0 ? out.str() : err.str());
    for (std::string line; std::getline(lines, line);) {
      std::printf("    %s\n", line.c_str());
    }
  }

  std::printf("%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
