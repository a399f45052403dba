#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/gate_kind.hpp"

namespace mimicnet {

using NodeId = std::uint32_t;

struct Node {
  NodeId id = 0;
  std::string name;
  GateKind kind = GateKind::Input;
  std::vector<NodeId> fanins;

  bool operator==(const Node&) const = default;
};

struct PrimaryOutput {
  std::string name;
  NodeId driver = 0;

  bool operator==(const PrimaryOutput&) const = default;
};

/// A combinational gate-level netlist.
///
/// Node ids are dense (`nodes()[id].id == id`). Fanins may reference any id,
/// forward or backward, as long as the fanin relation stays acyclic. Every
/// constructor validates; a Netlist object that exists is well formed.
class Netlist {
 public:
  Netlist() = default;

  /// Builds from raw parts. Inputs are the ids of INPUT nodes in declaration
  /// order; every INPUT node must appear there exactly once.
  Netlist(std::vector<Node> nodes, std::vector<NodeId> inputs, std::vector<PrimaryOutput> outputs)
      : nodes_(std::move(nodes)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    finalize();
  }

  // Incremental construction. Fanins must already exist, so the result is a
  // DAG by construction.
  NodeId add_input(std::string name) {
    NodeId id = add_node(std::move(name), GateKind::Input, {});
    inputs_.push_back(id);
    return id;
  }

  NodeId add_gate(std::string name, GateKind kind, std::vector<NodeId> fanins) {
    if (kind == GateKind::Input) return add_input(std::move(name));
    for (NodeId f : fanins) {
      if (f >= nodes_.size()) throw DanglingRef("fanin id " + std::to_string(f) + " of '" + name + "'");
    }
    if (!arity_ok(kind, fanins.size())) {
      throw ArityError("'" + name + "': " + std::string(to_string(kind)) + " with " +
                       std::to_string(fanins.size()) + " fanins");
    }
    NodeId id = add_node(std::move(name), kind, std::move(fanins));
    topo_.push_back(id);
    fanouts_.emplace_back();
    for (NodeId f : nodes_[id].fanins) fanouts_[f].push_back(id);
    return id;
  }

  void add_output(std::string name, NodeId driver) {
    if (driver >= nodes_.size()) throw DanglingRef("output '" + name + "' driver");
    outputs_.push_back({std::move(name), driver});
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  GateKind kind(NodeId id) const { return nodes_.at(id).kind; }
  const std::vector<NodeId>& fanins(NodeId id) const { return nodes_.at(id).fanins; }
  const std::vector<NodeId>& fanouts(NodeId id) const { return fanouts_.at(id); }

  const std::vector<NodeId>& inputs() const noexcept { return inputs_; }
  const std::vector<PrimaryOutput>& outputs() const noexcept { return outputs_; }

  std::vector<std::string> input_names() const {
    std::vector<std::string> out;
    out.reserve(inputs_.size());
    for (NodeId id : inputs_) out.push_back(nodes_[id].name);
    return out;
  }

  std::optional<NodeId> find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id_of(const std::string& name) const {
    auto id = find(name);
    if (!id) throw UnknownNode("no node named '" + name + "'");
    return *id;
  }

  std::optional<std::size_t> output_index(const std::string& name) const {
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
      if (outputs_[i].name == name) return i;
    }
    return std::nullopt;
  }

  bool has_edge(NodeId from, NodeId to) const {
    const auto& f = nodes_.at(to).fanins;
    return std::find(f.begin(), f.end(), from) != f.end();
  }

  /// Topological order (Kahn), ties broken by ascending id.
  const std::vector<NodeId>& topological_order() const noexcept { return topo_; }

  std::size_t logic_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
      return n.kind != GateKind::Input && n.kind != GateKind::OutputTap;
    }));
  }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& n : nodes_) e += n.fanins.size();
    return e;
  }

  bool operator==(const Netlist& o) const {
    return nodes_ == o.nodes_ && inputs_ == o.inputs_ && outputs_ == o.outputs_;
  }

 private:
  NodeId add_node(std::string name, GateKind kind, std::vector<NodeId> fanins) {
    if (name.empty()) throw Error("empty node name");
    if (by_name_.count(name)) throw Error("duplicate node name '" + name + "'");
    auto id = static_cast<NodeId>(nodes_.size());
    by_name_.emplace(name, id);
    nodes_.push_back({id, std::move(name), kind, std::move(fanins)});
    if (kind == GateKind::Input) {
      topo_.push_back(id);
      fanouts_.emplace_back();
    }
    return id;
  }

  void finalize() {
    by_name_.clear();
    fanouts_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      Node& n = nodes_[i];
      if (n.id != i) throw Error("node ids must be dense and match position");
      if (n.name.empty()) throw Error("empty node name");
      if (!by_name_.emplace(n.name, n.id).second) throw Error("duplicate node name '" + n.name + "'");
      if (!arity_ok(n.kind, n.fanins.size())) {
        throw ArityError("'" + n.name + "': " + std::string(to_string(n.kind)) + " with " +
                         std::to_string(n.fanins.size()) + " fanins");
      }
      for (NodeId f : n.fanins) {
        if (f >= nodes_.size()) throw DanglingRef("fanin of '" + n.name + "'");
        fanouts_[f].push_back(n.id);
      }
    }
    std::vector<char> seen(nodes_.size(), 0);
    for (NodeId id : inputs_) {
      if (id >= nodes_.size() || nodes_[id].kind != GateKind::Input || seen[id]) {
        throw Error("primary input list inconsistent with INPUT nodes");
      }
      seen[id] = 1;
    }
    for (const auto& n : nodes_) {
      if (n.kind == GateKind::Input && !seen[n.id]) throw Error("INPUT '" + n.name + "' not declared");
    }
    for (const auto& po : outputs_) {
      if (po.driver >= nodes_.size()) throw DanglingRef("output '" + po.name + "' driver");
    }
    compute_topo();
  }

  void compute_topo() {
    std::vector<std::size_t> pending(nodes_.size());
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (const auto& n : nodes_) {
      pending[n.id] = n.fanins.size();
      if (pending[n.id] == 0) ready.push(n.id);
    }
    topo_.clear();
    topo_.reserve(nodes_.size());
    while (!ready.empty()) {
      NodeId id = ready.top();
      ready.pop();
      topo_.push_back(id);
      for (NodeId out : fanouts_[id]) {
        if (--pending[out] == 0) ready.push(out);
      }
    }
    if (topo_.size() != nodes_.size()) throw CycleError(find_cycle(pending));
  }

  // Walks fanins among unresolved nodes until one repeats.
  std::vector<std::string> find_cycle(const std::vector<std::size_t>& pending) const {
    NodeId cur = 0;
    while (pending[cur] == 0) ++cur;
    std::unordered_map<NodeId, std::size_t> pos;
    std::vector<NodeId> path;
    while (!pos.count(cur)) {
      pos[cur] = path.size();
      path.push_back(cur);
      for (NodeId f : nodes_[cur].fanins) {
        if (pending[f] != 0) {
          cur = f;
          break;
        }
      }
    }
    std::vector<std::string> names;
    for (std::size_t i = pos[cur]; i < path.size(); ++i) names.push_back(nodes_[path[i]].name);
    std::reverse(names.begin(), names.end());
    names.push_back(names.front());
    return names;
  }

  std::vector<Node> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<PrimaryOutput> outputs_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<std::vector<NodeId>> fanouts_;
  std::vector<NodeId> topo_;
};

/// Name-based structural equality: same input and output lists, and the same
/// set of named nodes with identical kinds and ordered fanin names. Ids are
/// ignored.
inline bool structurally_equal(const Netlist& a, const Netlist& b) {
  if (a.size() != b.size() || a.input_names() != b.input_names()) return false;
  if (a.outputs().size() != b.outputs().size()) return false;
  for (std::size_t i = 0; i < a.outputs().size(); ++i) {
    const auto& pa = a.outputs()[i];
    const auto& pb = b.outputs()[i];
    if (pa.name != pb.name || a.node(pa.driver).name != b.node(pb.driver).name) return false;
  }
  for (const auto& n : a.nodes()) {
    auto other = b.find(n.name);
    if (!other) return false;
    const Node& m = b.node(*other);
    if (m.kind != n.kind || m.fanins.size() != n.fanins.size()) return false;
    for (std::size_t i = 0; i < n.fanins.size(); ++i) {
      if (a.node(n.fanins[i]).name != b.node(m.fanins[i]).name) return false;
    }
  }
  return true;
}

}  // namespace mimicnet
