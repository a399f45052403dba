#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/truth_table.hpp"

namespace mimicnet {

/// Two-level sum-of-products realization, one OR of minterm ANDs per output.
/// Inputs are named x0.., outputs y0.. (index 0 is the most significant bit).
/// Complemented literals share one INV per input.
inline Netlist synth_sop(const TruthTable& t) {
  t.validate();
  if (t.n_inputs > 16) throw TooManyInputs("synth_sop supports at most 16 inputs");
  const unsigned n = t.n_inputs;
  const std::size_t rows = t.size();

  Netlist g;
  std::vector<NodeId> pi(n);
  for (unsigned i = 0; i < n; ++i) pi[i] = g.add_input("x" + std::to_string(i));

  auto literal_true = [&](std::size_t r, unsigned i) { return ((r >> (n - 1 - i)) & 1U) != 0; };

  std::vector<std::vector<std::size_t>> minterms(t.n_outputs);
  std::vector<char> needs_inv(n, 0);
  for (unsigned j = 0; j < t.n_outputs; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (t.bit(r, j)) minterms[j].push_back(r);
    }
    const bool constant = minterms[j].empty() || minterms[j].size() == rows;
    if (constant) continue;
    for (std::size_t r : minterms[j]) {
      for (unsigned i = 0; i < n; ++i) {
        if (!literal_true(r, i)) needs_inv[i] = 1;
      }
    }
  }
  std::vector<NodeId> inv(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (needs_inv[i]) inv[i] = g.add_gate("x" + std::to_string(i) + "_n", GateKind::Inv, {pi[i]});
  }

  for (unsigned j = 0; j < t.n_outputs; ++j) {
    const std::string out = "y" + std::to_string(j);
    const auto& terms = minterms[j];
    NodeId driver = 0;
    if (terms.empty()) {
      driver = g.add_gate(out, GateKind::Const0, {});
    } else if (terms.size() == rows) {
      driver = g.add_gate(out, GateKind::Const1, {});
    } else {
      auto literals = [&](std::size_t r) {
        std::vector<NodeId> lits;
        for (unsigned i = 0; i < n; ++i) lits.push_back(literal_true(r, i) ? pi[i] : inv[i]);
        return lits;
      };
      if (terms.size() == 1) {
        auto lits = literals(terms[0]);
        if (lits.size() >= 2) {
          driver = g.add_gate(out, GateKind::And, lits);
        } else {
          bool positive = literal_true(terms[0], 0);
          driver = g.add_gate(out, positive ? GateKind::Buf : GateKind::Inv, {pi[0]});
        }
      } else {
        std::vector<NodeId> products;
        for (std::size_t r : terms) {
          auto lits = literals(r);
          if (lits.size() == 1) {
            products.push_back(lits[0]);
          } else {
            products.push_back(g.add_gate(out + "_m" + std::to_string(r), GateKind::And, lits));
          }
        }
        driver = g.add_gate(out, GateKind::Or, products);
      }
    }
    g.add_output(out, driver);
  }
  return g;
}

/// Rewrites a netlist over {NAND2, INV, BUF, CONST0, CONST1}. Each original
/// signal keeps its name on the node that computes it; helpers are named
/// `<signal>_t<k>`. Wide gates become balanced two-input trees.
inline Netlist tech_map_nand(const Netlist& n) {
  Netlist g;
  std::vector<NodeId> map(n.size(), 0);

  auto fresh = [&](const std::string& base, int& counter) {
    std::string name;
    do {
      name = base + "_t" + std::to_string(counter++);
    } while (n.find(name) || g.find(name));
    return name;
  };

  for (NodeId id : n.inputs()) map[id] = g.add_input(n.node(id).name);

  for (NodeId id : n.topological_order()) {
    const Node& node = n.node(id);
    if (node.kind == GateKind::Input) continue;
    std::vector<NodeId> in;
    for (NodeId f : node.fanins) in.push_back(map[f]);
    int counter = 0;

    // The last node of a rewrite carries the original name.
    auto emit = [&](GateKind k, std::vector<NodeId> fanins, bool final_node) {
      return g.add_gate(final_node ? node.name : fresh(node.name, counter), k, std::move(fanins));
    };

    std::function<NodeId(const std::vector<NodeId>&, bool)> nand_tree;
    std::function<NodeId(const std::vector<NodeId>&)> and_tree;
    nand_tree = [&](const std::vector<NodeId>& xs, bool final_node) -> NodeId {
      if (xs.size() == 2) return emit(GateKind::Nand, xs, final_node);
      const std::size_t mid = (xs.size() + 1) / 2;
      NodeId lo = and_tree({xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid)});
      NodeId hi = and_tree({xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end()});
      return emit(GateKind::Nand, {lo, hi}, final_node);
    };
    and_tree = [&](const std::vector<NodeId>& xs) -> NodeId {
      if (xs.size() == 1) return xs[0];
      return emit(GateKind::Inv, {nand_tree(xs, false)}, false);
    };
    auto inverted = [&](const std::vector<NodeId>& xs) {
      std::vector<NodeId> out;
      for (NodeId x : xs) out.push_back(emit(GateKind::Inv, {x}, false));
      return out;
    };
    auto xor_net = [&](NodeId a, NodeId b, bool final_node) {
      NodeId m = emit(GateKind::Nand, {a, b}, false);
      NodeId l = emit(GateKind::Nand, {a, m}, false);
      NodeId r = emit(GateKind::Nand, {b, m}, false);
      return emit(GateKind::Nand, {l, r}, final_node);
    };

    NodeId result = 0;
    switch (node.kind) {
      case GateKind::Nand: result = nand_tree(in, true); break;
      case GateKind::And: result = emit(GateKind::Inv, {nand_tree(in, false)}, true); break;
      case GateKind::Or: result = nand_tree(inverted(in), true); break;
      case GateKind::Nor: result = emit(GateKind::Inv, {nand_tree(inverted(in), false)}, true); break;
      case GateKind::Xor: result = xor_net(in[0], in[1], true); break;
      case GateKind::Xnor: result = emit(GateKind::Inv, {xor_net(in[0], in[1], false)}, true); break;
      default: result = emit(node.kind, in, true); break;
    }
    map[id] = result;
  }
  for (const auto& po : n.outputs()) g.add_output(po.name, map[po.driver]);
  return g;
}

}  // namespace mimicnet
