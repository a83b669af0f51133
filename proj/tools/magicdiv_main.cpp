// Command-line frontend: magic-number computation, table emission, snippet
// generation, verification sweeps, and benchmarks.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "magicdiv/cli.hpp"

namespace {

// Opens --out when given, otherwise stdout.
struct OutputTarget {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  bool open(const std::string& path) {
    if (path.empty()) return true;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) {
      std::cerr << "error: cannot open output file '" << path << "'\n";
      return false;
    }
    stream = file.get();
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast unsigned division by runtime-constant divisors"};
  app.require_subcommand(1);

  // magic
  magicdiv::cli::MagicOptions magic_opt;
  std::string magic_out_path;
  auto* magic = app.add_subcommand("magic", "Compute p and m_lo for one divisor");
  magic->add_option("--bits", magic_opt.bits, "Register width N (2..64)")->required();
  magic->add_option("--divisor", magic_opt.divisor, "Divisor d")->required();
  magic->add_option("--format", magic_opt.format,
                    "text | json | snippet-general | snippet-bounded");
  magic->add_option("--out", magic_out_path, "Write output to a file");

  // table
  magicdiv::cli::TableOptions table_opt;
  std::string table_range, table_out_path;
  auto* table = app.add_subcommand("table", "Emit magic parameters for a divisor range");
  table->add_option("--bits", table_opt.bits, "Register width N (2..64)")->required();
  table->add_option("--range", table_range, "Divisor range lo..hi")->required();
  table->add_option("--format", table_opt.format, "csv | json");
  table->add_option("--out", table_out_path, "Write output to a file");

  // verify
  magicdiv::cli::VerifyOptions verify_opt;
  std::string verify_range, verify_out_path;
  std::optional<uint64_t> verify_divisor, verify_seed;
  std::optional<uint64_t> verify_sample;
  bool verify_exhaustive = false, verify_boundary = false;
  auto* verify = app.add_subcommand("verify", "Sweep divisions against the oracle");
  verify->add_option("--bits", verify_opt.bits, "Register width N (2..64)")->required();
  verify->add_option("--divisor", verify_divisor, "Single divisor");
  verify->add_option("--range", verify_range, "Divisor range lo..hi");
  verify->add_flag("--all-divisors", verify_opt.all_divisors, "Every divisor in U_N^+");
  verify->add_flag("--exhaustive", verify_exhaustive, "Every dividend in U_N");
  verify->add_flag("--boundary", verify_boundary, "Boundary dividends only (default)");
  verify->add_option("--sample", verify_sample, "Uniform random dividends per divisor");
  verify->add_option("--seed", verify_seed, "64-bit PRNG seed (required with --sample)");
  verify->add_flag("--find-overflow-witness", verify_opt.find_overflow_witness,
                   "Search for n with n + q >= 2^N per divisor");
  verify->add_option("--witness-budget", verify_opt.witness_budget,
                     "Max dividends scanned per witness search");
  verify->add_option("--out", verify_out_path, "Write the JSON report to a file");

  // bench
  magicdiv::cli::BenchOptions bench_opt;
  std::string bench_out_path;
  double bench_iters = 0;
  auto* bench = app.add_subcommand("bench", "Time native vs magic-number division");
  bench->add_option("--bits", bench_opt.bits, "Register width N (2..64)")->required();
  bench->add_option("--divisors", bench_opt.divisors, "Comma-separated divisors")
      ->required()
      ->delimiter(',');
  bench->add_option("--iters", bench_iters, "Dividends per stream (e.g. 1e7)")
      ->required();
  bench->add_option("--seed", bench_opt.seed, "Workload PRNG seed");
  bench->add_option("--reps", bench_opt.repetitions, "Timing repetitions (min 5)");
  bench->add_option("--format", bench_opt.format, "text | json");
  bench->add_option("--out", bench_out_path, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : magicdiv::cli::kExitUsage;
  }

  try {
    OutputTarget out;
    if (magic->parsed()) {
      if (!out.open(magic_out_path)) return magicdiv::cli::kExitUsage;
      return magicdiv::cli::cmd_magic(magic_opt, *out.stream, std::cerr);
    }
    if (table->parsed()) {
      if (!out.open(table_out_path)) return magicdiv::cli::kExitUsage;
      const auto range = magicdiv::cli::parse_range(table_range);
      table_opt.d_lo = range.first;
      table_opt.d_hi = range.second;
      return magicdiv::cli::cmd_table(table_opt, *out.stream, std::cerr);
    }
    if (verify->parsed()) {
      if (!out.open(verify_out_path)) return magicdiv::cli::kExitUsage;
      verify_opt.divisor = verify_divisor;
      if (!verify_range.empty()) {
        verify_opt.range = magicdiv::cli::parse_range(verify_range);
      }
      if (verify_exhaustive && verify_boundary) {
        std::cerr << "error: --exhaustive and --boundary are mutually exclusive\n";
        return magicdiv::cli::kExitUsage;
      }
      if (verify_sample) {
        if (verify_exhaustive || verify_boundary) {
          std::cerr << "error: --sample cannot be combined with --exhaustive or "
                       "--boundary\n";
          return magicdiv::cli::kExitUsage;
        }
        verify_opt.strategy = "sample";
        verify_opt.sample_count = *verify_sample;
        verify_opt.seed = verify_seed;
        if (!verify_seed) {
          std::cerr << "error: --sample requires an explicit --seed\n";
          return magicdiv::cli::kExitUsage;
        }
      } else {
        verify_opt.strategy = verify_exhaustive ? "exhaustive" : "boundary";
      }
      return magicdiv::cli::cmd_verify(verify_opt, *out.stream, std::cerr);
    }
    if (bench->parsed()) {
      if (!out.open(bench_out_path)) return magicdiv::cli::kExitUsage;
      if (!(bench_iters >= 1) || bench_iters > 1e12 ||
          bench_iters != std::floor(bench_iters)) {
        std::cerr << "error: --iters must be a whole number in [1, 1e12]\n";
        return magicdiv::cli::kExitUsage;
      }
      bench_opt.iterations = static_cast<uint64_t>(bench_iters);
      return magicdiv::cli::cmd_bench(bench_opt, *out.stream, std::cerr);
    }
  } catch (const magicdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return magicdiv::cli::kExitUsage;
  }
  return magicdiv::cli::kExitUsage;
}
