#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"

namespace mimicnet {

struct SimResult {
  std::vector<std::uint8_t> outputs;  // one bit per primary output, in output order
  std::vector<std::uint8_t> values;   // one bit per node, indexed by id
};

/// Evaluates every node once, in topological order. `input_bits` follows the
/// primary input order.
inline SimResult simulate(const Netlist& n, std::span<const std::uint8_t> input_bits) {
  if (input_bits.size() != n.inputs().size()) {
    throw MissingInput("expected " + std::to_string(n.inputs().size()) + " input bits, got " +
                       std::to_string(input_bits.size()));
  }
  SimResult r;
  r.values.assign(n.size(), 0);
  for (std::size_t i = 0; i < n.inputs().size(); ++i) r.values[n.inputs()[i]] = input_bits[i] ? 1 : 0;
  std::vector<std::uint8_t> in;
  for (NodeId id : n.topological_order()) {
    const Node& node = n.node(id);
    if (node.kind == GateKind::Input) continue;
    in.clear();
    for (NodeId f : node.fanins) in.push_back(r.values[f]);
    r.values[id] = eval_gate<std::uint8_t>(node.kind, in, 1);
  }
  r.outputs.reserve(n.outputs().size());
  for (const auto& po : n.outputs()) r.outputs.push_back(r.values[po.driver]);
  return r;
}

inline SimResult simulate(const Netlist& n, const std::map<std::string, bool>& assignment) {
  std::vector<std::uint8_t> bits;
  bits.reserve(n.inputs().size());
  for (NodeId id : n.inputs()) {
    auto it = assignment.find(n.node(id).name);
    if (it == assignment.end()) throw MissingInput("no value for input '" + n.node(id).name + "'");
    bits.push_back(it->second ? 1 : 0);
  }
  return simulate(n, bits);
}

/// Big-endian unpacking: the first primary input receives the most
/// significant bit of `value`.
inline std::vector<std::uint8_t> unpack_bits(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1U);
  return bits;
}

inline std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1U);
  return v;
}

/// Simulates with inputs and outputs as big-endian integers.
inline std::uint64_t simulate_value(const Netlist& n, std::uint64_t input) {
  auto r = simulate(n, unpack_bits(input, n.inputs().size()));
  return pack_bits(r.outputs);
}

/// 64 input vectors at once: lane b of `input_words[i]` is input i of vector b.
/// Returns one word per node.
inline std::vector<std::uint64_t> simulate_words(const Netlist& n, std::span<const std::uint64_t> input_words) {
  if (input_words.size() != n.inputs().size()) throw MissingInput("input word count mismatch");
  std::vector<std::uint64_t> values(n.size(), 0);
  for (std::size_t i = 0; i < n.inputs().size(); ++i) values[n.inputs()[i]] = input_words[i];
  std::vector<std::uint64_t> in;
  for (NodeId id : n.topological_order()) {
    const Node& node = n.node(id);
    if (node.kind == GateKind::Input) continue;
    in.clear();
    for (NodeId f : node.fanins) in.push_back(values[f]);
    values[id] = eval_gate<std::uint64_t>(node.kind, in, ~std::uint64_t{0});
  }
  return values;
}

/// Input words covering the 64 consecutive input values starting at `base`
/// (big-endian, first input = MSB).
inline std::vector<std::uint64_t> counting_words(std::uint64_t base, std::size_t width) {
  std::vector<std::uint64_t> words(width, 0);
  for (std::uint64_t lane = 0; lane < 64; ++lane) {
    std::uint64_t v = base + lane;
    for (std::size_t i = 0; i < width; ++i) {
      if ((v >> (width - 1 - i)) & 1U) words[i] |= std::uint64_t{1} << lane;
    }
  }
  return words;
}

/// Full truth table of a netlist with at most 20 inputs, one packed output
/// value per input value.
inline std::vector<std::uint64_t> truth_values(const Netlist& n) {
  const std::size_t w = n.inputs().size();
  if (w > 20) throw TooManyInputs("truth table needs at most 20 inputs");
  const std::uint64_t rows = std::uint64_t{1} << w;
  std::vector<std::uint64_t> out(rows, 0);
  for (std::uint64_t base = 0; base < rows; base += 64) {
    auto values = simulate_words(n, counting_words(base, w));
    for (std::uint64_t lane = 0; lane < 64 && base + lane < rows; ++lane) {
      std::uint64_t v = 0;
      for (const auto& po : n.outputs()) v = (v << 1) | ((values[po.driver] >> lane) & 1U);
      out[base + lane] = v;
    }
  }
  return out;
}

}  // namespace mimicnet
