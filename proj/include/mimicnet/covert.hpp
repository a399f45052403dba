#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mimicnet/bench.hpp"
#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"

namespace mimicnet {

/// What a covert cell actually computes, expressed over its apparent fanins.
///
/// Subset(S) is the apparent multi-input function restricted to the fanins in
/// S; the remaining inputs are tied to their non-controlling value by
/// always-on/always-off transistors.
struct TrueRole {
  enum class Kind : std::uint8_t { Genuine, Wire, Inverter, Const0, Const1, Subset };

  Kind kind = Kind::Genuine;
  std::vector<std::uint32_t> select;  // one index for Wire/Inverter, sorted set for Subset

  static TrueRole genuine() { return {}; }
  static TrueRole wire(std::uint32_t i) { return {Kind::Wire, {i}}; }
  static TrueRole inverter(std::uint32_t i) { return {Kind::Inverter, {i}}; }
  static TrueRole const0() { return {Kind::Const0, {}}; }
  static TrueRole const1() { return {Kind::Const1, {}}; }
  static TrueRole subset(std::vector<std::uint32_t> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return {Kind::Subset, std::move(s)};
  }

  bool is_genuine() const noexcept { return kind == Kind::Genuine; }
  std::uint32_t index() const { return select.at(0); }

  bool operator==(const TrueRole&) const = default;
};

inline std::string to_string(const TrueRole& r) {
  switch (r.kind) {
    case TrueRole::Kind::Genuine: return "GENUINE";
    case TrueRole::Kind::Wire: return "WIRE:" + std::to_string(r.index());
    case TrueRole::Kind::Inverter: return "INV:" + std::to_string(r.index());
    case TrueRole::Kind::Const0: return "CONST0";
    case TrueRole::Kind::Const1: return "CONST1";
    case TrueRole::Kind::Subset: {
      std::string s = "SUBSET:";
      for (std::size_t i = 0; i < r.select.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(r.select[i]);
      }
      return s;
    }
  }
  return "?";
}

inline std::optional<TrueRole> parse_role(const std::string& text) {
  auto index_list = [](const std::string& s) -> std::optional<std::vector<std::uint32_t>> {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (out.empty()) return std::nullopt;
    return out;
  };
  if (text == "GENUINE") return TrueRole::genuine();
  if (text == "CONST0") return TrueRole::const0();
  if (text == "CONST1") return TrueRole::const1();
  auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string head = text.substr(0, colon);
  auto idx = index_list(text.substr(colon + 1));
  if (!idx) return std::nullopt;
  if (head == "WIRE" && idx->size() == 1) return TrueRole::wire(idx->front());
  if (head == "INV" && idx->size() == 1) return TrueRole::inverter(idx->front());
  if (head == "SUBSET") return TrueRole::subset(*idx);
  return std::nullopt;
}

/// Covert cell table: which roles a cell of the given apparent kind and
/// arity can be fabricated to perform.
///   NAND/NOR (universal transmitter): wire, inverter, constants, subset
///   INV (fake inverter): wire, constants
///   BUF (fake buffer): constants
///   AND/OR: subset
inline bool role_realizable(GateKind apparent, std::size_t arity, const TrueRole& role) {
  using K = TrueRole::Kind;
  auto in_range = [&] {
    return !role.select.empty() &&
           std::all_of(role.select.begin(), role.select.end(), [&](std::uint32_t i) { return i < arity; });
  };
  switch (role.kind) {
    case K::Genuine: return true;
    case K::Wire:
      return role.select.size() == 1 && in_range() &&
             (apparent == GateKind::Nand || apparent == GateKind::Nor || apparent == GateKind::Inv ||
              apparent == GateKind::Buf);
    case K::Inverter:
      return role.select.size() == 1 && in_range() &&
             (apparent == GateKind::Nand || apparent == GateKind::Nor || apparent == GateKind::Inv);
    case K::Const0:
      return apparent == GateKind::Nand || apparent == GateKind::Nor || apparent == GateKind::Inv ||
             apparent == GateKind::Buf || apparent == GateKind::Const0;
    case K::Const1:
      return apparent == GateKind::Nand || apparent == GateKind::Nor || apparent == GateKind::Inv ||
             apparent == GateKind::Buf || apparent == GateKind::Const1;
    case K::Subset:
      return is_multi_input(apparent) && in_range() &&
             std::is_sorted(role.select.begin(), role.select.end()) &&
             std::adjacent_find(role.select.begin(), role.select.end()) == role.select.end();
  }
  return false;
}

struct CovertMap {
  std::map<NodeId, TrueRole> roles;  // absent entries are Genuine
  std::set<NodeId> dummies;

  bool empty() const noexcept { return roles.empty() && dummies.empty(); }

  TrueRole role_of(NodeId id) const {
    auto it = roles.find(id);
    return it == roles.end() ? TrueRole::genuine() : it->second;
  }
  bool is_dummy(NodeId id) const { return dummies.count(id) != 0; }

  bool operator==(const CovertMap&) const = default;
};

inline void check_references(const Netlist& n, const CovertMap& c) {
  for (const auto& [id, role] : c.roles) {
    if (id >= n.size()) throw UnknownNode("covert map references node id " + std::to_string(id));
  }
  for (NodeId id : c.dummies) {
    if (id >= n.size()) throw UnknownNode("covert map marks unknown node id " + std::to_string(id) + " as dummy");
  }
}

/// What imaging recovers: the cells as drawn. Covert annotations are dropped.
inline Netlist apparent_view(const Netlist& n, const CovertMap& c) {
  check_references(n, c);
  return n;
}

/// The netlist the silicon actually computes. Covert cells are replaced by
/// the logic of their role; dummy nodes, and anything left hanging off them,
/// are removed together with outputs they drive.
inline Netlist true_view(const Netlist& n, const CovertMap& c) {
  check_references(n, c);
  std::vector<Node> resolved(n.nodes());
  for (auto& node : resolved) {
    TrueRole role = c.role_of(node.id);
    if (!role_realizable(node.kind, node.fanins.size(), role)) {
      throw InvalidRole("'" + node.name + "' appears as " + std::string(to_string(node.kind)) +
                        " and cannot act as " + to_string(role));
    }
    const auto fanins = node.fanins;
    switch (role.kind) {
      case TrueRole::Kind::Genuine: break;
      case TrueRole::Kind::Wire:
        node.kind = GateKind::Buf;
        node.fanins = {fanins[role.index()]};
        break;
      case TrueRole::Kind::Inverter:
        node.kind = GateKind::Inv;
        node.fanins = {fanins[role.index()]};
        break;
      case TrueRole::Kind::Const0:
        node.kind = GateKind::Const0;
        node.fanins.clear();
        break;
      case TrueRole::Kind::Const1:
        node.kind = GateKind::Const1;
        node.fanins.clear();
        break;
      case TrueRole::Kind::Subset: {
        node.fanins.clear();
        for (auto i : role.select) node.fanins.push_back(fanins[i]);
        if (node.fanins.size() == 1) {
          bool inverting = node.kind == GateKind::Nand || node.kind == GateKind::Nor;
          node.kind = inverting ? GateKind::Inv : GateKind::Buf;
        }
        break;
      }
    }
  }

  // Drop dummies, then anything whose true fanins reach a dropped node.
  std::vector<char> dropped(n.size(), 0);
  for (NodeId id : c.dummies) dropped[id] = 1;
  for (NodeId id : n.topological_order()) {
    if (dropped[id]) continue;
    for (NodeId f : resolved[id].fanins) {
      if (dropped[f]) {
        dropped[id] = 2;
        break;
      }
    }
  }
  // Order matters: topological order of the apparent graph is also a valid
  // order for the resolved graph because roles only remove edges.
  std::vector<PrimaryOutput> outputs;
  for (const auto& po : n.outputs()) {
    if (dropped[po.driver] == 1) continue;
    if (dropped[po.driver] == 2) {
      throw DummyDrivesOutput("dummy logic reaches output '" + po.name + "'");
    }
    outputs.push_back(po);
  }
  for (NodeId id : n.inputs()) {
    if (dropped[id]) throw InvalidRole("primary input '" + n.node(id).name + "' marked as dummy");
  }

  std::vector<NodeId> remap(n.size(), 0);
  std::vector<Node> kept;
  for (const auto& node : resolved) {
    if (dropped[node.id]) continue;
    remap[node.id] = static_cast<NodeId>(kept.size());
    kept.push_back(node);
  }
  std::vector<NodeId> inputs;
  for (auto& node : kept) {
    node.id = remap[node.id];
    for (auto& f : node.fanins) f = remap[f];
  }
  for (NodeId id : n.inputs()) inputs.push_back(remap[id]);
  for (auto& po : outputs) po.driver = remap[po.driver];
  return Netlist(std::move(kept), std::move(inputs), std::move(outputs));
}

// ---------------------------------------------------------------------------
// Text format, one covert cell per line:
//   gateName APPARENT <kind> TRUE <GENUINE|WIRE:i|INV:i|CONST0|CONST1|SUBSET:i,j> [DUMMY]

inline std::string write_cmap(const Netlist& n, const CovertMap& c) {
  check_references(n, c);
  std::set<NodeId> ids;
  for (const auto& [id, role] : c.roles) ids.insert(id);
  ids.insert(c.dummies.begin(), c.dummies.end());
  std::vector<NodeId> ordered(ids.begin(), ids.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](NodeId a, NodeId b) { return n.node(a).name < n.node(b).name; });
  std::string out;
  for (NodeId id : ordered) {
    const Node& node = n.node(id);
    out += node.name + " APPARENT " + std::string(to_string(node.kind)) + " TRUE " + to_string(c.role_of(id));
    if (c.is_dummy(id)) out += " DUMMY";
    out += '\n';
  }
  return out;
}

inline CovertMap parse_cmap(const std::string& text, const Netlist& n) {
  CovertMap c;
  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string line = lines[ln];
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 5 || tok.size() > 6 || tok[1] != "APPARENT" || tok[3] != "TRUE" ||
        (tok.size() == 6 && tok[5] != "DUMMY")) {
      throw SyntaxError(ln + 1, line, "malformed covert map entry");
    }
    auto id = n.find(tok[0]);
    if (!id) throw UnknownNode("covert map line " + std::to_string(ln + 1) + ": no gate '" + tok[0] + "'");
    auto kind = parse_gate_kind(tok[2]);
    if (!kind) throw SyntaxError(ln + 1, tok[2], "unknown gate kind");
    if (*kind != n.kind(*id)) {
      throw InvalidRole("covert map line " + std::to_string(ln + 1) + ": '" + tok[0] + "' is " +
                        std::string(to_string(n.kind(*id))) + ", not " + tok[2]);
    }
    auto role = parse_role(tok[4]);
    if (!role) throw SyntaxError(ln + 1, tok[4], "unknown role");
    if (!role_realizable(*kind, n.fanins(*id).size(), *role)) {
      throw InvalidRole("'" + tok[0] + "' cannot realize " + tok[4]);
    }
    if (!role->is_genuine()) c.roles[*id] = *role;
    if (tok.size() == 6) c.dummies.insert(*id);
  }
  return c;
}

}  // namespace mimicnet
