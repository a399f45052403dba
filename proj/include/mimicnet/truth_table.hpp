#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mimicnet/bench.hpp"
#include "mimicnet/error.hpp"

namespace mimicnet {

/// Multi-output Boolean function. `rows[x]` holds the outputs for input value
/// x; both are big-endian bit vectors (bit 0 is the most significant).
struct TruthTable {
  unsigned n_inputs = 0;
  unsigned n_outputs = 0;
  std::vector<std::uint32_t> rows;

  TruthTable() = default;
  TruthTable(unsigned inputs, unsigned outputs, std::vector<std::uint32_t> r)
      : n_inputs(inputs), n_outputs(outputs), rows(std::move(r)) {
    validate();
  }

  void validate() const {
    if (n_inputs > 24) throw TooManyInputs("truth table with " + std::to_string(n_inputs) + " inputs");
    if (n_outputs == 0 || n_outputs > 32) throw Error("truth table needs 1..32 outputs");
    if (rows.size() != (std::size_t{1} << n_inputs)) throw Error("truth table row count must be 2^inputs");
    const std::uint64_t limit = std::uint64_t{1} << n_outputs;
    for (auto r : rows) {
      if (r >= limit) throw Error("truth table entry wider than output count");
    }
  }

  std::size_t size() const noexcept { return rows.size(); }
  std::uint32_t operator[](std::size_t x) const { return rows.at(x); }

  /// Output bit j (0 = most significant) for input x.
  unsigned bit(std::size_t x, unsigned j) const { return (rows.at(x) >> (n_outputs - 1 - j)) & 1U; }

  bool operator==(const TruthTable&) const = default;
};

/// Text form: `inputs=<n> outputs=<m>` then 2^n hexadecimal lines.
inline TruthTable parse_truth_table(const std::string& text) {
  auto lines = detail::split_lines(text);
  std::size_t ln = 0;
  auto next = [&](std::string& out) {
    while (ln < lines.size()) {
      std::string s = lines[ln++];
      if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
      auto t = detail::trim(s);
      if (!t.empty()) {
        out = std::string(t);
        return true;
      }
    }
    return false;
  };
  std::string header;
  if (!next(header)) throw SyntaxError(1, "", "empty truth table");
  unsigned n = 0, m = 0;
  if (std::sscanf(header.c_str(), "inputs=%u outputs=%u", &n, &m) != 2) {
    throw SyntaxError(ln, header, "expected 'inputs=<n> outputs=<m>'");
  }
  if (n > 24) throw TooManyInputs("truth table with " + std::to_string(n) + " inputs");
  std::vector<std::uint32_t> rows;
  rows.reserve(std::size_t{1} << n);
  for (std::string row; rows.size() < (std::size_t{1} << n);) {
    if (!next(row)) throw SyntaxError(ln, "", "truth table ends after " + std::to_string(rows.size()) + " rows");
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(row, &used, 16);
    } catch (const std::exception&) {
      throw SyntaxError(ln, row, "expected hexadecimal value");
    }
    if (used != row.size()) throw SyntaxError(ln, row, "expected hexadecimal value");
    rows.push_back(static_cast<std::uint32_t>(v));
  }
  if (std::string extra; next(extra)) throw SyntaxError(ln, extra, "extra rows after truth table");
  return TruthTable(n, m, std::move(rows));
}

inline std::string write_truth_table(const TruthTable& t) {
  std::ostringstream out;
  out << "inputs=" << t.n_inputs << " outputs=" << t.n_outputs << '\n';
  const int digits = static_cast<int>((t.n_outputs + 3) / 4);
  for (auto r : t.rows) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*X", digits, r);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace mimicnet
