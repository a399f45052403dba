#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace mimicnet {

enum class GateKind : std::uint8_t {
  Input,
  OutputTap,
  And,
  Nand,
  Or,
  Nor,
  Xor,
  Xnor,
  Inv,
  Buf,
  Const0,
  Const1,
};

inline constexpr std::size_t kGateKindCount = 12;

inline constexpr std::array<GateKind, kGateKindCount> kAllGateKinds = {
    GateKind::Input, GateKind::OutputTap, GateKind::And,  GateKind::Nand,
    GateKind::Or,    GateKind::Nor,       GateKind::Xor,  GateKind::Xnor,
    GateKind::Inv,   GateKind::Buf,       GateKind::Const0, GateKind::Const1,
};

constexpr std::size_t index_of(GateKind k) { return static_cast<std::size_t>(k); }

constexpr std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::Input: return "INPUT";
    case GateKind::OutputTap: return "OUTPUT_TAP";
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Inv: return "INV";
    case GateKind::Buf: return "BUF";
    case GateKind::Const0: return "CONST0";
    case GateKind::Const1: return "CONST1";
  }
  return "?";
}

// Case-insensitive. Accepts the ISCAS spellings NOT and BUFF as aliases.
inline std::optional<GateKind> parse_gate_kind(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "NOT") return GateKind::Inv;
  if (up == "BUFF") return GateKind::Buf;
  for (GateKind k : kAllGateKinds) {
    if (up == to_string(k)) return k;
  }
  return std::nullopt;
}

constexpr bool is_constant(GateKind k) { return k == GateKind::Const0 || k == GateKind::Const1; }

// AND/NAND/OR/NOR: variable arity, idempotent in their inputs.
constexpr bool is_multi_input(GateKind k) {
  return k == GateKind::And || k == GateKind::Nand || k == GateKind::Or || k == GateKind::Nor;
}

constexpr bool arity_ok(GateKind k, std::size_t fanins) {
  switch (k) {
    case GateKind::Input:
    case GateKind::Const0:
    case GateKind::Const1: return fanins == 0;
    case GateKind::Inv:
    case GateKind::Buf:
    case GateKind::OutputTap: return fanins == 1;
    case GateKind::Xor:
    case GateKind::Xnor: return fanins == 2;
    case GateKind::And:
    case GateKind::Nand:
    case GateKind::Or:
    case GateKind::Nor: return fanins >= 2;
  }
  return false;
}

// Evaluates a gate over any bitwise word type: bool-like std::uint8_t for a
// single vector or std::uint64_t for 64 vectors at once. The all-ones value
// must be passed so NOT works for both.
template <typename Word>
constexpr Word eval_gate(GateKind k, std::span<const Word> in, Word ones) {
  switch (k) {
    case GateKind::Const0: return Word{0};
    case GateKind::Const1: return ones;
    case GateKind::Input:
    case GateKind::Buf:
    case GateKind::OutputTap: return in.empty() ? Word{0} : in[0];
    case GateKind::Inv: return static_cast<Word>(~in[0] & ones);
    default: break;
  }
  Word acc = in[0];
  for (std::size_t i = 1; i < in.size(); ++i) {
    switch (k) {
      case GateKind::And:
      case GateKind::Nand: acc = static_cast<Word>(acc & in[i]); break;
      case GateKind::Or:
      case GateKind::Nor: acc = static_cast<Word>(acc | in[i]); break;
      default: acc = static_cast<Word>(acc ^ in[i]); break;
    }
  }
  if (k == GateKind::Nand || k == GateKind::Nor || k == GateKind::Xnor) {
    acc = static_cast<Word>(~acc & ones);
  }
  return acc;
}

}  // namespace mimicnet
