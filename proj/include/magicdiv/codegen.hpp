#ifndef MAGICDIV_CODEGEN_HPP
#define MAGICDIV_CODEGEN_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "magicdiv/magic.hpp"

namespace magicdiv {

/// Hexadecimal rendering zero-padded to ceil(N/4) digits, for stable output.
inline std::string hex_string(uint64_t v, BitWidth width) {
  const int digits = (width.bits() + 3) / 4;
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%0*llx", digits, static_cast<unsigned long long>(v));
  return buf;
}

enum class SnippetFlavor { kGeneral, kBounded, kShiftOnly };

inline const char* flavor_name(SnippetFlavor f) {
  switch (f) {
    case SnippetFlavor::kGeneral: return "general";
    case SnippetFlavor::kBounded: return "bounded";
    case SnippetFlavor::kShiftOnly: return "shift-only";
  }
  return "?";
}

/// A rendered straight-line division sequence for one fixed (N, d), in a
/// minimal C-like pseudo-syntax with mulhi as a named primitive.
struct CodeSnippet {
  BitWidth width;
  RegisterValue divisor;
  SnippetFlavor flavor;
  std::vector<std::string> lines;
  std::string header_comment;

  std::string str() const {
    std::string out = header_comment + "\n";
    for (const auto& line : lines) {
      out += line;
      out += "\n";
    }
    return out;
  }
};

/// Renders the instruction sequence for params. Power-of-two divisors always
/// collapse to the shift-only flavor, whatever was requested; a shift-only
/// request for any other divisor is a domain error.
inline CodeSnippet make_snippet(const MagicParams& params, SnippetFlavor requested) {
  const int p = params.shift_offset;
  const uint64_t m_lo = params.magic_lo.value();
  const bool pow2 = is_power_of_two(params.divisor);
  if (requested == SnippetFlavor::kShiftOnly && !pow2) {
    throw DomainError("shift-only snippets require a power-of-two divisor");
  }
  const SnippetFlavor flavor = pow2 ? SnippetFlavor::kShiftOnly : requested;

  std::string header = "// N=" + std::to_string(params.width.bits()) +
                       " d=" + dec_string(params.divisor.value()) +
                       " p=" + std::to_string(p) + " m_lo=" + dec_string(m_lo) + " (" +
                       hex_string(m_lo, params.width) + ")";
  std::vector<std::string> lines;
  switch (flavor) {
    case SnippetFlavor::kShiftOnly:
      lines.push_back(p == 0 ? "t = n;" : "t = n >> " + std::to_string(p) + ";");
      break;
    case SnippetFlavor::kGeneral: {
      // Non-power-of-two d implies p >= 2, so h = 1 and both shifts are live.
      lines.push_back("q = mulhi(" + dec_string(m_lo) + "u, n);");
      lines.push_back("t = (n - q) >> 1;");
      lines.push_back("t = t + q;");
      lines.push_back("t = t >> " + std::to_string(p - 1) + ";");
      break;
    }
    case SnippetFlavor::kBounded:
      header += " requires n < 2^(N-1)";
      lines.push_back("q = mulhi(" + dec_string(m_lo) + "u, n);");
      lines.push_back("t = (n + q) >> " + std::to_string(p) + ";");
      break;
  }
  return CodeSnippet{params.width, params.divisor, flavor, std::move(lines),
                     std::move(header)};
}

/// One row of a magic-number table.
struct MagicTableRow {
  uint64_t d;
  int p;
  uint64_t m_lo;
  std::string m_lo_hex;
  bool power_of_two;
  WideProduct m_full;
};

inline MagicTableRow make_table_row(BitWidth width, uint64_t d) {
  const RegisterValue dv{width, d};
  const MagicParams params = precompute_magic(width, dv);
  return MagicTableRow{d,
                       params.shift_offset,
                       params.magic_lo.value(),
                       hex_string(params.magic_lo.value(), width),
                       is_power_of_two(dv),
                       full_magic(width, dv)};
}

inline std::string table_csv_header() { return "d,p,m_lo_dec,m_lo_hex,pow2,m_full"; }

inline std::string to_csv(const MagicTableRow& row) {
  return dec_string(row.d) + "," + std::to_string(row.p) + "," + dec_string(row.m_lo) +
         "," + row.m_lo_hex + "," + (row.power_of_two ? "1" : "0") + "," +
         row.m_full.str();
}

/// Parses a line produced by to_csv. Round-tripping a row through CSV must
/// reproduce the parameters exactly.
inline MagicTableRow parse_table_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 6) {
    throw DomainError("table row must have 6 fields, got " +
                      std::to_string(fields.size()));
  }
  MagicTableRow row{std::stoull(fields[0]),
                    std::stoi(fields[1]),
                    std::stoull(fields[2]),
                    fields[3],
                    fields[4] == "1",
                    WideProduct{}};
  // m_full can exceed 64 bits (it has N+1 of them); parse digit by digit.
  Uint192 m;
  for (char c : fields[5]) {
    if (c < '0' || c > '9') {
      throw DomainError("bad m_full digit in table row");
    }
    m = Uint192::mul(m.to_u128(), 10) + Uint192{static_cast<uint64_t>(c - '0')};
  }
  row.m_full = m;
  return row;
}

}  // namespace magicdiv

#endif  // MAGICDIV_CODEGEN_HPP
