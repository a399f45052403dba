#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mimicnet/bench.hpp"
#include "mimicnet/covert.hpp"
#include "mimicnet/equivalence.hpp"
#include "mimicnet/error.hpp"
#include "mimicnet/levelize.hpp"
#include "mimicnet/matcher.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/version.hpp"

namespace mimicnet {

inline constexpr const char* kCarrierPrefix = "mn_carrier_";

struct Provenance {
  std::uint64_t matching_id = 0;
  std::uint64_t config_hash = 0;
  std::string tool_version = kVersion;

  bool operator==(const Provenance&) const = default;
};

/// An apparent netlist shaped like the appearance circuit plus the covert
/// map that makes it compute the functional circuit.
struct DeceptiveDesign {
  Netlist apparent;
  CovertMap covert;
  std::vector<std::pair<std::string, std::string>> output_map;  // functional PO -> apparent PO
  std::vector<std::pair<std::string, std::string>> input_map;   // functional PI -> apparent PI
  Provenance provenance;

  /// Apparent inputs the functional circuit does not use.
  std::vector<std::string> surplus_inputs() const {
    std::set<std::string> used;
    for (const auto& [f, a] : input_map) used.insert(a);
    std::vector<std::string> out;
    for (const auto& name : apparent.input_names()) {
      if (!used.count(name)) out.push_back(name);
    }
    return out;
  }

  std::size_t carrier_chains() const {
    return static_cast<std::size_t>(std::count_if(apparent.nodes().begin(), apparent.nodes().end(), [](const Node& n) {
      return n.name.rfind(kCarrierPrefix, 0) == 0;
    }));
  }

  /// Maps the true view of the design onto the functional circuit.
  /// Surplus apparent inputs are held at 0.
  IoMap io_map() const {
    IoMap m;
    m.inputs = input_map;
    m.outputs = output_map;
    for (const auto& name : surplus_inputs()) m.fixed.emplace_back(name, false);
    return m;
  }
};

namespace detail {

inline void check_matching(const Netlist& g_f, const Netlist& g_a, const Matching& m) {
  const LevelMap lf = levelize(g_f);
  const LevelMap la = levelize(g_a);
  std::set<NodeId> image;
  for (const auto& node : g_f.nodes()) {
    if (node.kind == GateKind::OutputTap) continue;
    auto a = m.at(node.id);
    if (!a) throw InconsistentMatching("functional node '" + node.name + "' is unmatched");
    if (*a >= g_a.size()) throw InconsistentMatching("'" + node.name + "' matched to a nonexistent node");
    if (!image.insert(*a).second) throw InconsistentMatching("two functional nodes share '" + g_a.node(*a).name + "'");
    if (lf.level[node.id] != la.level[*a]) {
      throw InconsistentMatching("'" + node.name + "' matched across levels");
    }
    if ((node.kind == GateKind::Input) != (g_a.kind(*a) == GateKind::Input)) {
      throw InconsistentMatching("'" + node.name + "' pairs an input with a gate");
    }
  }
  for (const auto& [f, a] : m.assign) {
    if (f >= g_f.size()) throw InconsistentMatching("matching references unknown functional id");
  }
}

/// Role making apparent node `host` compute functional node `f`, whose
/// fanins sit at the given apparent fanin positions.
inline TrueRole role_for(const Node& host, const Node& f, const std::vector<std::uint32_t>& positions) {
  const std::size_t arity = host.fanins.size();
  switch (f.kind) {
    case GateKind::Const0:
      return host.kind == GateKind::Const0 ? TrueRole::genuine() : TrueRole::const0();
    case GateKind::Const1:
      return host.kind == GateKind::Const1 ? TrueRole::genuine() : TrueRole::const1();
    case GateKind::Buf:
      if (host.kind == GateKind::Buf && arity == 1 && positions[0] == 0) return TrueRole::genuine();
      return TrueRole::wire(positions[0]);
    case GateKind::Inv:
      if (host.kind == GateKind::Inv && arity == 1 && positions[0] == 0) return TrueRole::genuine();
      return TrueRole::inverter(positions[0]);
    case GateKind::Xor:
    case GateKind::Xnor: {
      if (host.kind == f.kind && arity == 2 && positions.size() == 2 && positions[0] != positions[1]) {
        return TrueRole::genuine();
      }
      throw RoleConflict("'" + host.name + "' cannot host " + std::string(to_string(f.kind)) + " '" + f.name + "'");
    }
    default: break;
  }
  if (is_multi_input(f.kind) && host.kind == f.kind) {
    TrueRole s = TrueRole::subset(positions);
    if (s.select.size() == arity) return TrueRole::genuine();
    return s;
  }
  throw RoleConflict("'" + host.name + "' (" + std::string(to_string(host.kind)) + ") cannot host '" + f.name +
                     "' (" + std::string(to_string(f.kind)) + ")");
}

}  // namespace detail

/// Turns a committed matching into a deceptive design.
///
/// The apparent netlist starts as a copy of g_a. A functional edge whose image
/// is missing is routed through a new 2-input NAND configured as a wire,
/// appended as an extra fanin of the host. Unmatched appearance gates become
/// dummies with a constant role chosen by id parity.
inline DeceptiveDesign realize(const Netlist& g_f, const Netlist& g_a, const Matching& m, const CostConfig& cfg) {
  detail::check_matching(g_f, g_a, m);
  const LevelMap la = levelize(g_a);

  std::vector<Node> nodes = g_a.nodes();
  DeceptiveDesign d;
  std::size_t carriers = 0;
  std::set<NodeId> matched;
  for (const auto& [f, a] : m.assign) matched.insert(a);

  auto fresh_carrier_name = [&] {
    std::string name;
    do {
      name = kCarrierPrefix + std::to_string(carriers++);
    } while (g_a.find(name));
    return name;
  };

  for (NodeId fid : g_f.topological_order()) {
    const Node& f = g_f.node(fid);
    if (f.kind == GateKind::Input || f.kind == GateKind::OutputTap) continue;
    const NodeId a = *m.at(fid);
    std::vector<std::uint32_t> positions;
    for (NodeId fin : f.fanins) {
      const NodeId src = *m.at(fin);
      auto& fan = nodes[a].fanins;
      auto it = std::find(fan.begin(), fan.end(), src);
      if (it == fan.end()) {
        if (!accepts_carrier(nodes[a].kind)) {
          throw RoleConflict("'" + nodes[a].name + "' lacks the edge from '" + nodes[src].name +
                             "' and cannot take a carrier");
        }
        // Carriers are tied to the lowest-id node of the host's previous
        // layer, preferring one other than the carried signal.
        const auto& prev = la.layers[la.level[a] - 1];
        NodeId anchor = prev.front();
        if (anchor == src && prev.size() > 1) anchor = prev[1];
        const auto cid = static_cast<NodeId>(nodes.size());
        nodes.push_back({cid, fresh_carrier_name(), GateKind::Nand, {src, anchor}});
        d.covert.roles[cid] = TrueRole::wire(0);
        nodes[a].fanins.push_back(cid);
        positions.push_back(static_cast<std::uint32_t>(nodes[a].fanins.size() - 1));
      } else {
        positions.push_back(static_cast<std::uint32_t>(it - fan.begin()));
      }
    }
    TrueRole role = detail::role_for(nodes[a], f, positions);
    if (!role_realizable(nodes[a].kind, nodes[a].fanins.size(), role)) {
      throw RoleConflict("'" + nodes[a].name + "' cannot realize " + to_string(role));
    }
    if (!role.is_genuine()) d.covert.roles[a] = role;
  }

  for (const auto& node : g_a.nodes()) {
    if (node.kind == GateKind::Input || node.kind == GateKind::OutputTap || matched.count(node.id)) continue;
    TrueRole role = node.id % 2 == 0 ? TrueRole::const0() : TrueRole::const1();
    if (role_realizable(node.kind, node.fanins.size(), role) && !is_constant(node.kind)) {
      d.covert.roles[node.id] = role;
    }
    d.covert.dummies.insert(node.id);
  }

  std::vector<PrimaryOutput> outputs = g_a.outputs();
  std::set<std::string> po_names;
  for (const auto& po : outputs) po_names.insert(po.name);
  for (const auto& po : g_f.outputs()) {
    const NodeId a = *m.at(po.driver);
    auto it = std::find_if(outputs.begin(), outputs.end(), [&](const PrimaryOutput& o) { return o.driver == a; });
    if (it == outputs.end()) {
      std::string name = nodes[a].name;
      while (po_names.count(name)) name += "_o";
      po_names.insert(name);
      outputs.push_back({name, a});
      d.output_map.emplace_back(po.name, name);
    } else {
      d.output_map.emplace_back(po.name, it->name);
    }
  }
  for (NodeId id : g_f.inputs()) d.input_map.emplace_back(g_f.node(id).name, nodes[*m.at(id)].name);

  d.apparent = Netlist(std::move(nodes), g_a.inputs(), std::move(outputs));
  d.provenance.matching_id = m.id();
  d.provenance.config_hash = cfg.hash();
  return d;
}

enum class Padding { None, Count, Align, Auto };

inline const char* to_string(Padding p) {
  switch (p) {
    case Padding::None: return "none";
    case Padding::Count: return "count";
    case Padding::Align: return "align";
    case Padding::Auto: return "auto";
  }
  return "?";
}

struct DisguiseOptions {
  Padding padding = Padding::Auto;
  MatchOptions match;
};

struct DisguiseResult {
  DeceptiveDesign design;
  Matching matching;
  Netlist hosted;  // functional netlist after padding, as matched
  Padding padding_used = Padding::None;
  std::size_t pad_buffers = 0;
};

/// Match, pad if asked (or if strict matching fails under Auto), realize.
inline DisguiseResult disguise(const Netlist& g_f, const Netlist& g_a, const CostConfig& cfg,
                               const DisguiseOptions& opt = {}) {
  DisguiseResult r;
  auto run = [&](Netlist hosted, Padding used, std::size_t buffers) {
    r.matching = match_graphs(hosted, g_a, cfg, opt.match);
    r.matching.padding_buffers = buffers;
    r.design = realize(hosted, g_a, r.matching, cfg);
    r.hosted = std::move(hosted);
    r.padding_used = used;
    r.pad_buffers = buffers;
  };
  auto aligned = [&] {
    auto p = align_levels(g_f, g_a, cfg);
    run(std::move(p.netlist), Padding::Align, p.buffers_inserted);
  };
  switch (opt.padding) {
    case Padding::None: run(g_f, Padding::None, 0); break;
    case Padding::Count: {
      auto p = pad_levels(g_f, levelize(g_f), levelize(g_a));
      run(std::move(p.netlist), Padding::Count, p.buffers_inserted);
      break;
    }
    case Padding::Align: aligned(); break;
    case Padding::Auto:
      try {
        run(g_f, Padding::None, 0);
      } catch (const LayerOverfull&) {
        aligned();
      } catch (const UnrealizableMatch&) {
        aligned();
      }
      break;
  }
  return r;
}

/// The true view as fabricated: functional inputs in functional order, and
/// surplus apparent inputs tied to constant 0.
inline Netlist deployed_netlist(const DeceptiveDesign& d) {
  Netlist tv = true_view(d.apparent, d.covert);
  std::vector<Node> nodes = tv.nodes();
  std::vector<NodeId> inputs;
  for (const auto& [f, a] : d.input_map) inputs.push_back(tv.id_of(a));
  for (const auto& name : d.surplus_inputs()) {
    Node& n = nodes[tv.id_of(name)];
    n.kind = GateKind::Const0;
  }
  return Netlist(std::move(nodes), std::move(inputs), tv.outputs());
}

/// Design-level checks; failures are recorded, never thrown.
struct ValidationReport {
  bool containment = false;
  std::string containment_detail;  // witness summary or first missing element
  bool equivalence = false;
  std::optional<Verdict> verdict;
  std::string equivalence_detail;
  bool dummy_isolation = false;
  std::string isolation_detail;
  bool kinds_plausible = false;  // apparent kinds within kinds(g_a) + NAND
  std::size_t carrier_chains = 0;
  std::size_t extra_nodes = 0;
  std::size_t dummies = 0;

  bool ok() const { return containment && equivalence && dummy_isolation && kinds_plausible; }
};

/// Name-based subgraph check: every node of `small` exists in `big` with the
/// same kind, and every edge of `small` exists in `big`.
inline std::pair<bool, std::string> contains_subgraph(const Netlist& big, const Netlist& small) {
  for (const auto& n : small.nodes()) {
    auto id = big.find(n.name);
    if (!id) return {false, "missing node '" + n.name + "'"};
    if (big.kind(*id) != n.kind) {
      return {false, "node '" + n.name + "' is " + std::string(to_string(big.kind(*id))) + ", expected " +
                         std::string(to_string(n.kind))};
    }
    for (NodeId f : n.fanins) {
      auto fid = big.find(small.node(f).name);
      if (!fid || !big.has_edge(*fid, *id)) return {false, "missing edge " + small.node(f).name + " -> " + n.name};
    }
  }
  return {true, "name identity over " + std::to_string(small.size()) + " nodes and " +
                    std::to_string(small.edge_count()) + " edges"};
}

/// Fanins a node really reads under its covert role.
inline std::vector<NodeId> true_fanins(const Netlist& n, const CovertMap& c, NodeId id) {
  const TrueRole role = c.role_of(id);
  const auto& fan = n.fanins(id);
  switch (role.kind) {
    case TrueRole::Kind::Genuine: return fan;
    case TrueRole::Kind::Const0:
    case TrueRole::Kind::Const1: return {};
    default: break;
  }
  std::vector<NodeId> out;
  for (auto i : role.select) {
    if (i < fan.size()) out.push_back(fan[i]);
  }
  return out;
}

inline ValidationReport validate_design(const DeceptiveDesign& d, const Netlist& g_f, const Netlist& g_a,
                                        unsigned jobs = 1) {
  ValidationReport r;
  std::tie(r.containment, r.containment_detail) = contains_subgraph(d.apparent, g_a);
  r.carrier_chains = d.carrier_chains();
  r.extra_nodes = d.apparent.size() >= g_a.size() ? d.apparent.size() - g_a.size() : 0;
  r.dummies = d.covert.dummies.size();

  std::set<GateKind> allowed{GateKind::Nand};
  for (const auto& n : g_a.nodes()) allowed.insert(n.kind);
  r.kinds_plausible = std::all_of(d.apparent.nodes().begin(), d.apparent.nodes().end(),
                                  [&](const Node& n) { return allowed.count(n.kind) != 0; });

  // Dummy isolation: walk the true fanin cones of the mapped outputs.
  {
    std::vector<char> seen(d.apparent.size(), 0);
    std::vector<NodeId> stack;
    for (const auto& [fpo, apo] : d.output_map) {
      auto idx = d.apparent.output_index(apo);
      if (idx) stack.push_back(d.apparent.outputs()[*idx].driver);
    }
    r.dummy_isolation = true;
    while (!stack.empty() && r.dummy_isolation) {
      NodeId id = stack.back();
      stack.pop_back();
      if (id >= d.apparent.size() || seen[id]) continue;
      seen[id] = 1;
      if (d.covert.is_dummy(id)) {
        r.dummy_isolation = false;
        r.isolation_detail = "dummy '" + d.apparent.node(id).name + "' reaches a functional output";
        break;
      }
      for (NodeId f : true_fanins(d.apparent, d.covert, id)) stack.push_back(f);
    }
    if (r.dummy_isolation) r.isolation_detail = "no dummy in any functional output cone";
  }

  try {
    Netlist tv = true_view(d.apparent, d.covert);
    r.verdict = equiv_check(g_f, tv, d.io_map(), 100000, 1, jobs);
    r.equivalence = r.verdict->pass;
    if (r.verdict->pass) {
      r.equivalence_detail = r.verdict->exhaustive ? "exhaustive pass" : "random pass (probabilistic)";
    } else {
      r.equivalence_detail = "counterexample " + r.verdict->counterexample->hex();
    }
  } catch (const Error& e) {
    r.equivalence = false;
    r.equivalence_detail = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Files: <prefix>.bench, <prefix>.cmap, <prefix>.outmap, <prefix>.inmap

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

inline std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

inline std::string write_cmap_with_provenance(const DeceptiveDesign& d) {
  std::string out = "# matching " + detail::hex64(d.provenance.matching_id) + " config " +
                    detail::hex64(d.provenance.config_hash) + " version " + d.provenance.tool_version + "\n";
  return out + write_cmap(d.apparent, d.covert);
}

inline void save_design(const DeceptiveDesign& d, const std::string& prefix) {
  detail::write_file(prefix + ".bench", write_bench(d.apparent));
  detail::write_file(prefix + ".cmap", write_cmap_with_provenance(d));
  detail::write_file(prefix + ".outmap", write_name_map(d.output_map));
  detail::write_file(prefix + ".inmap", write_name_map(d.input_map));
}

inline DeceptiveDesign load_design(const std::string& prefix) {
  DeceptiveDesign d;
  d.apparent = parse_bench(detail::read_file(prefix + ".bench"));
  const std::string cmap = detail::read_file(prefix + ".cmap");
  d.covert = parse_cmap(cmap, d.apparent);
  {
    std::istringstream first(cmap.substr(0, cmap.find('\n')));
    std::string hash, k1, v1, k2, v2, k3, v3;
    if (first >> hash >> k1 >> v1 >> k2 >> v2 >> k3 >> v3 && hash == "#" && k1 == "matching" && k2 == "config") {
      d.provenance.matching_id = std::stoull(v1, nullptr, 16);
      d.provenance.config_hash = std::stoull(v2, nullptr, 16);
      d.provenance.tool_version = v3;
    }
  }
  d.output_map = parse_name_map(detail::read_file(prefix + ".outmap"));
  d.input_map = parse_name_map(detail::read_file(prefix + ".inmap"));
  for (const auto& [f, a] : d.output_map) {
    if (!d.apparent.output_index(a)) throw IoMapError("output map names unknown output '" + a + "'");
  }
  for (const auto& [f, a] : d.input_map) {
    auto id = d.apparent.find(a);
    if (!id || d.apparent.kind(*id) != GateKind::Input) throw IoMapError("input map names unknown input '" + a + "'");
  }
  return d;
}

}  // namespace mimicnet
