#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"

namespace mimicnet {

/// Depth layers of a netlist. Primary inputs sit at level 0; every other node
/// sits one above its deepest fanin (constants, having none, at level 1).
/// OUTPUT_TAP markers carry their driver's level but belong to no layer.
struct LevelMap {
  std::vector<std::size_t> level;          // by node id
  std::vector<std::vector<NodeId>> layers;  // layers[k] sorted ascending
  std::size_t max_level = 0;

  std::size_t width(std::size_t k) const { return k < layers.size() ? layers[k].size() : 0; }
};

inline LevelMap levelize(const Netlist& n) {
  LevelMap m;
  m.level.assign(n.size(), 0);
  for (NodeId id : n.topological_order()) {
    const Node& node = n.node(id);
    if (node.kind == GateKind::Input) continue;
    std::size_t deepest = 0;
    for (NodeId f : node.fanins) deepest = std::max(deepest, m.level[f]);
    if (node.kind == GateKind::OutputTap) {
      m.level[id] = deepest;
    } else {
      m.level[id] = node.fanins.empty() ? 1 : deepest + 1;
    }
  }
  for (const auto& node : n.nodes()) {
    if (node.kind == GateKind::OutputTap) continue;
    m.max_level = std::max(m.max_level, m.level[node.id]);
  }
  m.layers.assign(n.empty() ? 0 : m.max_level + 1, {});
  for (const auto& node : n.nodes()) {
    if (node.kind == GateKind::OutputTap) continue;
    m.layers[m.level[node.id]].push_back(node.id);
  }
  return m;
}

struct PadResult {
  Netlist netlist;
  std::size_t buffers_inserted = 0;
};

/// Shifts nodes of overfull functional layers up by one level so that every
/// layer fits in the appearance layer of the same depth.
///
/// A node v of an overfull layer k can move to k+1 when all its fanouts sit
/// at level >= k+2 and exactly one of its fanins, u, sits at k-1: v then reads
/// u through a BUF placed on layer k. That BUF costs one slot on layer k, so
/// a move only helps when several such nodes share u (or a BUF of u already
/// exists). The rule picks the u with the largest net gain, ties by id, and
/// fails when no u gains anything.
inline PadResult pad_levels(const Netlist& f, const LevelMap& f_levels, const LevelMap& a_levels) {
  if (f.size() > 0 && f_levels.level.size() != f.size()) throw PreconditionError("level map does not match netlist");
  std::size_t a_nodes = 0;
  for (const auto& layer : a_levels.layers) a_nodes += layer.size();
  std::size_t f_nodes = 0;
  for (const auto& layer : f_levels.layers) f_nodes += layer.size();
  if (f_nodes > a_nodes) throw PreconditionError("functional netlist has more nodes than the appearance");
  if (f_levels.width(0) > a_levels.width(0)) throw PreconditionError("functional netlist has more inputs");

  std::vector<Node> nodes = f.nodes();
  std::vector<NodeId> inputs = f.inputs();
  std::vector<PrimaryOutput> outputs = f.outputs();
  std::map<NodeId, NodeId> buffer_of;  // level k-1 node -> its BUF on layer k, rebuilt per layer
  std::size_t inserted = 0;
  std::size_t buffered_layer = 0;

  auto capacity = [&](std::size_t k) { return a_levels.width(k); };

  while (true) {
    Netlist cur(nodes, inputs, outputs);
    LevelMap lv = levelize(cur);
    std::size_t k = 0;
    for (; k <= lv.max_level; ++k) {
      if (lv.width(k) > capacity(k)) break;
    }
    if (k > lv.max_level) return {std::move(cur), inserted};
    const std::size_t deficit = lv.width(k) - capacity(k);
    if (k == 0 || k + 1 > a_levels.max_level) throw Infeasible(k, deficit);
    if (buffered_layer != k) {
      buffer_of.clear();
      buffered_layer = k;
    }

    // Candidates grouped by their single fanin on layer k-1.
    std::map<NodeId, std::vector<NodeId>> movable;
    for (NodeId v : lv.layers[k]) {
      bool slack = std::all_of(cur.fanouts(v).begin(), cur.fanouts(v).end(),
                               [&](NodeId w) { return lv.level[w] >= k + 2; });
      if (!slack) continue;
      std::vector<NodeId> critical;
      for (NodeId u : cur.fanins(v)) {
        if (lv.level[u] + 1 == k && std::find(critical.begin(), critical.end(), u) == critical.end()) {
          critical.push_back(u);
        }
      }
      if (critical.size() == 1) movable[critical[0]].push_back(v);
    }
    NodeId best = 0;
    long best_gain = 0;
    for (const auto& [u, vs] : movable) {
      long gain = static_cast<long>(vs.size()) - (buffer_of.count(u) ? 0 : 1);
      if (gain > best_gain) {
        best_gain = gain;
        best = u;
      }
    }
    if (best_gain <= 0) throw Infeasible(k, deficit);

    NodeId buf = 0;
    const bool reuse = buffer_of.count(best) != 0;
    if (auto it = buffer_of.find(best); it != buffer_of.end()) {
      buf = it->second;
    } else {
      buf = static_cast<NodeId>(nodes.size());
      std::string name = nodes[best].name + "_pad" + std::to_string(k);
      while (cur.find(name)) name += "_";
      nodes.push_back({buf, name, GateKind::Buf, {best}});
      buffer_of[best] = buf;
      ++inserted;
    }
    auto& vs = movable[best];
    const std::size_t take = std::min(vs.size(), reuse ? deficit : deficit + 1);
    for (std::size_t i = 0; i < take; ++i) {
      for (auto& fin : nodes[vs[i]].fanins) {
        if (fin == best) fin = buf;
      }
    }
  }
}

}  // namespace mimicnet
