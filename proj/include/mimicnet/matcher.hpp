#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mimicnet/bench.hpp"
#include "mimicnet/error.hpp"
#include "mimicnet/hungarian.hpp"
#include "mimicnet/levelize.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"

namespace mimicnet {

/// Penalties of the layer assignment.
///
/// `pairs` lists (apparent kind, functional kind) combinations that covert
/// cells can realize, with their base cost. Identical kinds always cost 0,
/// except that a wider apparent AND/NAND/OR/NOR hosting a narrower gate of
/// its own kind pays `tied_input_cost` per input that must be tied off.
struct CostConfig {
  double p_incompat = 1e6;
  double p_conn = 100;
  double pad_cost = 0;
  double tied_input_cost = 1;
  std::map<std::pair<GateKind, GateKind>, double> pairs = default_pairs();

  static std::map<std::pair<GateKind, GateKind>, double> default_pairs() {
    std::map<std::pair<GateKind, GateKind>, double> r;
    for (GateKind host : {GateKind::Nand, GateKind::Nor}) {
      for (GateKind hidden : {GateKind::Buf, GateKind::Inv, GateKind::Const0, GateKind::Const1}) {
        r[{host, hidden}] = 0;
      }
    }
    for (GateKind hidden : {GateKind::Buf, GateKind::Const0, GateKind::Const1}) r[{GateKind::Inv, hidden}] = 0;
    for (GateKind hidden : {GateKind::Const0, GateKind::Const1}) r[{GateKind::Buf, hidden}] = 0;
    return r;
  }

  void validate(std::size_t max_fanin) const {
    if (p_incompat < 0 || p_conn < 0 || pad_cost < 0 || tied_input_cost < 0) {
      throw ConfigError("costs must be non-negative");
    }
    for (const auto& [pair, c] : pairs) {
      if (c < 0) throw ConfigError("pair costs must be non-negative");
    }
    if (!(p_incompat > p_conn * static_cast<double>(std::max<std::size_t>(max_fanin, 1)))) {
      throw ConfigError("p_incompat must exceed p_conn times the largest fanin count (" +
                        std::to_string(max_fanin) + ")");
    }
  }

  /// Stable text form; also what `parse_cost_config` reads.
  std::string to_text() const {
    std::ostringstream out;
    out.precision(17);
    out << "p_conn=" << p_conn << "\np_incompat=" << p_incompat << "\npad_cost=" << pad_cost
        << "\ntied_input_cost=" << tied_input_cost << '\n';
    for (const auto& [pair, c] : pairs) {
      out << "pair " << to_string(pair.first) << ' ' << to_string(pair.second) << ' ' << c << '\n';
    }
    return out.str();
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_text()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

/// Line-oriented: `p_conn=100`, `p_incompat=1000000`, `pad_cost=0`,
/// `tied_input_cost=1`, `pair NAND BUF 0`. Starts from the defaults.
inline CostConfig parse_cost_config(const std::string& text) {
  CostConfig cfg;
  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string s = lines[ln];
    if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    auto t = std::string(detail::trim(s));
    if (t.empty()) continue;
    auto number = [&](const std::string& v) {
      try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
      } catch (const std::exception&) {
        throw SyntaxError(ln + 1, v, "expected a number");
      }
    };
    if (t.rfind("pair", 0) == 0 && t.size() > 4 && std::isspace(static_cast<unsigned char>(t[4]))) {
      std::istringstream in(t.substr(4));
      std::string a, f, c, extra;
      if (!(in >> a >> f >> c) || (in >> extra)) throw SyntaxError(ln + 1, t, "expected 'pair <apparent> <true> <cost>'");
      auto ka = parse_gate_kind(a);
      auto kf = parse_gate_kind(f);
      if (!ka) throw SyntaxError(ln + 1, a, "unknown gate kind");
      if (!kf) throw SyntaxError(ln + 1, f, "unknown gate kind");
      cfg.pairs[{*ka, *kf}] = number(c);
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw SyntaxError(ln + 1, t, "expected key=value");
    auto key = std::string(detail::trim(std::string_view(t).substr(0, eq)));
    auto val = std::string(detail::trim(std::string_view(t).substr(eq + 1)));
    if (key == "p_conn") {
      cfg.p_conn = number(val);
    } else if (key == "p_incompat") {
      cfg.p_incompat = number(val);
    } else if (key == "pad_cost") {
      cfg.pad_cost = number(val);
    } else if (key == "tied_input_cost") {
      cfg.tied_input_cost = number(val);
    } else {
      throw SyntaxError(ln + 1, key, "unknown cost key");
    }
  }
  return cfg;
}

/// `functionalInput=appearanceInput` per line.
inline std::vector<std::pair<std::string, std::string>> parse_name_map(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string s = lines[ln];
    if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    auto t = detail::trim(s);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(ln + 1, std::string(t), "expected name=name");
    auto l = std::string(detail::trim(t.substr(0, eq)));
    auto r = std::string(detail::trim(t.substr(eq + 1)));
    if (!detail::valid_signal_name(l) || !detail::valid_signal_name(r)) {
      throw SyntaxError(ln + 1, std::string(t), "expected name=name");
    }
    out.emplace_back(l, r);
  }
  return out;
}

inline std::string write_name_map(const std::vector<std::pair<std::string, std::string>>& m) {
  std::string out;
  for (const auto& [l, r] : m) out += l + "=" + r + "\n";
  return out;
}

// ---------------------------------------------------------------------------

struct LayerCost {
  std::size_t level = 0;
  std::size_t functional_nodes = 0;
  std::size_t appearance_nodes = 0;
  double cost = 0;
  std::size_t missing_edges = 0;
};

/// Injective, level-preserving map from functional to appearance nodes.
struct Matching {
  std::map<NodeId, NodeId> assign;  // functional id -> appearance id
  std::vector<LayerCost> layers;
  double total_cost = 0;
  std::size_t missing_edges = 0;  // functional edges without an appearance counterpart
  std::size_t padding_buffers = 0;

  std::optional<NodeId> at(NodeId f) const {
    auto it = assign.find(f);
    if (it == assign.end()) return std::nullopt;
    return it->second;
  }

  /// FNV-1a over the sorted (functional, appearance) pairs.
  std::uint64_t id() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xFFU;
        h *= 0x100000001b3ULL;
      }
    };
    for (const auto& [f, a] : assign) {
      mix(f);
      mix(a);
    }
    return h;
  }
};

struct PairCost {
  double node = 0;
  double connection = 0;
  std::size_t missing_edges = 0;
  bool unroutable = false;

  double total() const { return node + connection; }
};

/// Whether an apparent cell can take an extra (carrier) fanin.
inline bool accepts_carrier(GateKind k) { return is_multi_input(k); }

inline double node_cost(GateKind a_kind, std::size_t a_arity, GateKind f_kind, std::size_t f_arity,
                        const CostConfig& cfg) {
  if (a_kind == f_kind) {
    if (is_multi_input(a_kind) && a_arity > f_arity) {
      return cfg.tied_input_cost * static_cast<double>(a_arity - f_arity);
    }
    return 0;
  }
  auto it = cfg.pairs.find({a_kind, f_kind});
  return it == cfg.pairs.end() ? cfg.p_incompat : it->second;
}

/// Cost of hosting functional node `f_id` on appearance node `a_id`, given the
/// assignment of everything below. A functional fanin edge whose image is not
/// an appearance edge costs `p_conn` (a carrier will be inserted); hosts that
/// cannot take an extra fanin make such an edge cost `p_incompat` instead.
/// Appearance edges without a functional counterpart are free.
inline PairCost pair_cost(NodeId a_id, NodeId f_id, const Matching& m_prev, const Netlist& g_a, const Netlist& g_f,
                          const CostConfig& cfg) {
  const Node& a = g_a.node(a_id);
  const Node& f = g_f.node(f_id);
  PairCost pc;
  pc.node = node_cost(a.kind, a.fanins.size(), f.kind, f.fanins.size(), cfg);
  std::set<NodeId> seen;
  for (NodeId fin : f.fanins) {
    if (!seen.insert(fin).second) continue;
    auto mapped = m_prev.at(fin);
    if (!mapped) {
      throw UnmatchedPredecessor("fanin '" + g_f.node(fin).name + "' of '" + f.name + "' is not matched yet");
    }
    if (g_a.has_edge(*mapped, a_id)) continue;
    ++pc.missing_edges;
    if (accepts_carrier(a.kind)) {
      pc.connection += cfg.p_conn;
    } else {
      pc.unroutable = true;
      pc.connection += cfg.p_incompat;
    }
  }
  return pc;
}

namespace detail {

/// Whether every functional node of a layer can sit on a distinct appearance
/// node of the other layer with finite node cost. Max-flow over kind counts.
inline bool kinds_fit(const std::map<GateKind, std::size_t>& need, const std::map<GateKind, std::size_t>& have,
                      const CostConfig& cfg) {
  std::vector<GateKind> fk, ak;
  for (const auto& [k, c] : need) fk.push_back(k);
  for (const auto& [k, c] : have) ak.push_back(k);
  // Nodes: 0 source, 1..F functional kinds, F+1..F+A appearance kinds, sink.
  const std::size_t F = fk.size(), A = ak.size(), n = F + A + 2, sink = n - 1;
  std::vector<std::vector<long>> cap(n, std::vector<long>(n, 0));
  long demand = 0;
  for (std::size_t i = 0; i < F; ++i) {
    cap[0][1 + i] = static_cast<long>(need.at(fk[i]));
    demand += cap[0][1 + i];
  }
  for (std::size_t j = 0; j < A; ++j) cap[1 + F + j][sink] = static_cast<long>(have.at(ak[j]));
  for (std::size_t i = 0; i < F; ++i) {
    for (std::size_t j = 0; j < A; ++j) {
      const bool multi = is_multi_input(ak[j]);
      if (node_cost(ak[j], multi ? 2 : 1, fk[i], multi ? 2 : 1, cfg) < cfg.p_incompat) cap[1 + i][1 + F + j] = demand;
    }
  }
  long flow = 0;
  while (true) {
    std::vector<std::size_t> prev(n, n);
    prev[0] = 0;
    std::vector<std::size_t> queue{0};
    for (std::size_t q = 0; q < queue.size() && prev[sink] == n; ++q) {
      for (std::size_t v = 0; v < n; ++v) {
        if (prev[v] == n && cap[queue[q]][v] > 0) {
          prev[v] = queue[q];
          queue.push_back(v);
        }
      }
    }
    if (prev[sink] == n) break;
    long push = demand;
    for (std::size_t v = sink; v != 0; v = prev[v]) push = std::min(push, cap[prev[v]][v]);
    for (std::size_t v = sink; v != 0; v = prev[v]) {
      cap[prev[v]][v] -= push;
      cap[v][prev[v]] += push;
    }
    flow += push;
  }
  return flow == demand;
}

}  // namespace detail

/// Delays whole functional layers so that each one can be hosted, kind for
/// kind, by the appearance layer at the same depth.
///
/// Layer k is moved up by inserting a chain of BUFs on one fanin of each of
/// its nodes (the lowest-id fanin on layer k-1; chains are shared per source).
/// The chain BUFs occupy the skipped appearance layers and must fit there too.
/// Layers are shifted by the smallest amount that fits, bottom up.
inline PadResult align_levels(const Netlist& f, const Netlist& a, const CostConfig& cfg) {
  const LevelMap lf = levelize(f);
  const LevelMap la = levelize(a);
  if (lf.width(0) > la.width(0)) throw LayerOverfull(0, lf.width(0), la.width(0));
  auto kinds_at = [&](std::size_t level) {
    std::map<GateKind, std::size_t> m;
    if (level < la.layers.size()) {
      for (NodeId id : la.layers[level]) ++m[a.kind(id)];
    }
    return m;
  };
  auto source_of = [&](NodeId v, std::size_t k) {
    NodeId best = 0;
    bool found = false;
    for (NodeId u : f.fanins(v)) {
      if (lf.level[u] + 1 == k && (!found || u < best)) {
        best = u;
        found = true;
      }
    }
    return found ? std::optional<NodeId>(best) : std::nullopt;
  };

  std::vector<std::size_t> shift(lf.layers.size(), 0);
  for (std::size_t k = 1; k < lf.layers.size(); ++k) {
    std::map<GateKind, std::size_t> need;
    std::set<NodeId> sources;
    bool movable = true;
    for (NodeId v : lf.layers[k]) {
      ++need[f.kind(v)];
      if (auto u = source_of(v, k)) {
        sources.insert(*u);
      } else {
        movable = false;
      }
    }
    const std::map<GateKind, std::size_t> chain{{GateKind::Buf, sources.size()}};
    std::size_t s = shift[k - 1];
    while (!detail::kinds_fit(need, kinds_at(k + s), cfg)) {
      if (!movable || k + s + 1 > la.max_level || !detail::kinds_fit(chain, kinds_at(k + s), cfg)) {
        throw Infeasible(k + s, lf.width(k));
      }
      ++s;
    }
    shift[k] = s;
  }

  std::vector<Node> nodes = f.nodes();
  std::size_t inserted = 0;
  for (std::size_t k = 1; k < lf.layers.size(); ++k) {
    const std::size_t delta = shift[k] - shift[k - 1];
    if (delta == 0) continue;
    std::map<NodeId, NodeId> chain_end;
    for (NodeId v : lf.layers[k]) {
      const NodeId u = *source_of(v, k);
      if (!chain_end.count(u)) {
        NodeId prev = u;
        for (std::size_t step = 1; step <= delta; ++step) {
          const auto id = static_cast<NodeId>(nodes.size());
          std::string name = f.node(u).name + "_pad" + std::to_string(k - 1 + shift[k - 1] + step);
          while (f.find(name)) name += "_";
          nodes.push_back({id, name, GateKind::Buf, {prev}});
          prev = id;
          ++inserted;
        }
        chain_end[u] = prev;
      }
      for (auto& fin : nodes[v].fanins) {
        if (fin == u) fin = chain_end[u];
      }
    }
  }
  return {Netlist(std::move(nodes), f.inputs(), f.outputs()), inserted};
}

struct MatchOptions {
  // functional input name -> appearance input name; empty pairs by position.
  std::vector<std::pair<std::string, std::string>> input_map;
  unsigned jobs = 1;
};

/// Layer-by-layer greedy matching. Layer k is solved as a min-cost assignment
/// of layer_k(g_f) into layer_k(g_a) given the committed layers below it.
inline Matching match_graphs(const Netlist& g_f, const Netlist& g_a, const CostConfig& cfg,
                             const MatchOptions& opt = {}) {
  std::size_t max_fanin = 0;
  for (const auto& n : g_f.nodes()) max_fanin = std::max(max_fanin, n.fanins.size());
  cfg.validate(max_fanin);

  const LevelMap lf = levelize(g_f);
  const LevelMap la = levelize(g_a);
  for (const auto& n : g_f.nodes()) {
    if (n.kind == GateKind::OutputTap) throw PreconditionError("OUTPUT_TAP nodes cannot be matched");
  }
  if (g_f.inputs().size() > g_a.inputs().size()) {
    throw LayerOverfull(0, g_f.inputs().size(), g_a.inputs().size());
  }
  for (std::size_t k = 1; k <= lf.max_level && !g_f.empty(); ++k) {
    if (lf.width(k) > la.width(k)) throw LayerOverfull(k, lf.width(k), la.width(k));
  }

  Matching m;
  // Level 0: primary inputs.
  {
    LayerCost lc{0, g_f.inputs().size(), g_a.inputs().size(), 0, 0};
    if (opt.input_map.empty()) {
      for (std::size_t i = 0; i < g_f.inputs().size(); ++i) m.assign[g_f.inputs()[i]] = g_a.inputs()[i];
    } else {
      std::set<NodeId> used;
      for (const auto& [fn, an] : opt.input_map) {
        auto fi = g_f.find(fn);
        auto ai = g_a.find(an);
        if (!fi || g_f.kind(*fi) != GateKind::Input) throw PreconditionError("input map: no functional input '" + fn + "'");
        if (!ai || g_a.kind(*ai) != GateKind::Input) throw PreconditionError("input map: no appearance input '" + an + "'");
        if (m.assign.count(*fi) || !used.insert(*ai).second) throw PreconditionError("input map is not injective");
        m.assign[*fi] = *ai;
      }
      for (NodeId id : g_f.inputs()) {
        if (!m.assign.count(id)) throw PreconditionError("input map misses '" + g_f.node(id).name + "'");
      }
    }
    m.layers.push_back(lc);
  }

  for (std::size_t k = 1; k <= lf.max_level && !g_f.empty(); ++k) {
    const auto& rows = lf.layers[k];
    const auto& cols = la.layers[k];
    std::vector<std::vector<double>> cost(rows.size(), std::vector<double>(cols.size(), 0));
    std::vector<std::vector<PairCost>> parts(rows.size(), std::vector<PairCost>(cols.size()));
    parallel_for(rows.size(), opt.jobs, [&](std::size_t i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        parts[i][j] = pair_cost(cols[j], rows[i], m, g_a, g_f, cfg);
        cost[i][j] = parts[i][j].total();
      }
    });
    auto sol = hungarian(cost, cfg.pad_cost);

    LayerCost lc{k, rows.size(), cols.size(), 0, 0};
    std::vector<std::string> faults;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t j = sol.row_to_col[i];
      const PairCost& pc = parts[i][j];
      if (pc.node >= cfg.p_incompat || pc.unroutable) {
        std::string why = pc.unroutable ? " (fixed-arity host missing an edge)" : "";
        faults.push_back(g_a.node(cols[j]).name + ":" + std::string(to_string(g_a.kind(cols[j]))) + " <- " +
                         g_f.node(rows[i]).name + ":" + std::string(to_string(g_f.kind(rows[i]))) + why);
      }
      m.assign[rows[i]] = cols[j];
      lc.cost += pc.total();
      lc.missing_edges += pc.missing_edges;
    }
    if (!faults.empty()) {
      std::string msg = "layer " + std::to_string(k) + ": unrealizable pairs";
      for (const auto& f : faults) msg += "\n  " + f;
      msg += "\nhint: run tech_map_nand on the functional netlist";
      throw UnrealizableMatch(msg);
    }
    m.total_cost += lc.cost;
    m.missing_edges += lc.missing_edges;
    m.layers.push_back(lc);
  }
  return m;
}

}  // namespace mimicnet
