#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"

namespace mimicnet {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool valid_signal_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == '=' ||
        c == '#') {
      return false;
    }
  }
  return true;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

/// Parses an ISCAS-85 style bench document.
///
///   INPUT(a)
///   OUTPUT(y)
///   y = NAND(a, b)     # comment
///   z = CONST1
///
/// Signals may be referenced before they are defined. Node ids follow
/// declaration order (INPUT lines and gate definitions interleaved as written).
inline Netlist parse_bench(const std::string& text) {
  struct Stmt {
    std::size_t line;
    std::string name;
    GateKind kind;
    std::vector<std::string> args;
  };
  std::vector<Stmt> defs;
  std::vector<std::pair<std::size_t, std::string>> outputs;
  std::map<std::string, std::size_t> defined_at;

  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t lineno = ln + 1;
    std::string_view s = lines[ln];
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;

    auto define = [&](const std::string& name, GateKind kind, std::vector<std::string> args) {
      if (!detail::valid_signal_name(name)) throw SyntaxError(lineno, name, "invalid signal name");
      if (defined_at.count(name)) throw SyntaxError(lineno, name, "signal defined twice");
      defined_at[name] = lineno;
      defs.push_back({lineno, name, kind, std::move(args)});
    };

    // Splits "KIND(arg, ...)" into the keyword and its argument list.
    auto call = [&](std::string_view expr, std::string& keyword, std::vector<std::string>& args) {
      auto open = expr.find('(');
      if (open == std::string_view::npos) {
        keyword = std::string(detail::trim(expr));
        return false;
      }
      keyword = std::string(detail::trim(expr.substr(0, open)));
      auto close = expr.rfind(')');
      if (close == std::string_view::npos || close < open) {
        throw SyntaxError(lineno, std::string(expr.substr(open)), "missing ')'");
      }
      if (!detail::trim(expr.substr(close + 1)).empty()) {
        throw SyntaxError(lineno, std::string(expr.substr(close + 1)), "trailing characters");
      }
      std::string_view inner = expr.substr(open + 1, close - open - 1);
      if (detail::trim(inner).empty()) return true;
      std::size_t start = 0;
      while (true) {
        auto comma = inner.find(',', start);
        auto piece = detail::trim(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start));
        if (!detail::valid_signal_name(piece)) {
          throw SyntaxError(lineno, std::string(piece.empty() ? inner : piece), "invalid argument");
        }
        args.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return true;
    };

    auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      std::string keyword;
      std::vector<std::string> args;
      if (!call(s, keyword, args)) throw SyntaxError(lineno, std::string(s), "expected declaration or assignment");
      std::string up = keyword;
      for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (args.size() != 1) throw SyntaxError(lineno, std::string(s), up + " takes one signal");
      if (up == "INPUT") {
        define(args[0], GateKind::Input, {});
      } else if (up == "OUTPUT") {
        outputs.emplace_back(lineno, args[0]);
      } else {
        throw SyntaxError(lineno, keyword, "unknown declaration");
      }
      continue;
    }

    std::string lhs(detail::trim(s.substr(0, eq)));
    std::string keyword;
    std::vector<std::string> args;
    bool has_parens = call(s.substr(eq + 1), keyword, args);
    auto kind = parse_gate_kind(keyword);
    if (!kind || *kind == GateKind::Input) throw SyntaxError(lineno, keyword, "unknown gate kind");
    if (!has_parens && !is_constant(*kind)) throw SyntaxError(lineno, keyword, "expected '('");
    if (!arity_ok(*kind, args.size())) {
      throw ArityError("line " + std::to_string(lineno) + ": '" + lhs + "' is " + std::string(to_string(*kind)) +
                       " with " + std::to_string(args.size()) + " fanins");
    }
    define(lhs, *kind, std::move(args));
  }

  std::map<std::string, NodeId> ids;
  for (std::size_t i = 0; i < defs.size(); ++i) ids[defs[i].name] = static_cast<NodeId>(i);

  std::vector<Node> nodes;
  std::vector<NodeId> inputs;
  nodes.reserve(defs.size());
  for (std::size_t i = 0; i < defs.size(); ++i) {
    Node n{static_cast<NodeId>(i), defs[i].name, defs[i].kind, {}};
    for (const auto& a : defs[i].args) {
      auto it = ids.find(a);
      if (it == ids.end()) {
        throw DanglingRef("line " + std::to_string(defs[i].line) + ": unknown signal '" + a + "'");
      }
      n.fanins.push_back(it->second);
    }
    if (n.kind == GateKind::Input) inputs.push_back(n.id);
    nodes.push_back(std::move(n));
  }
  std::vector<PrimaryOutput> pos;
  for (const auto& [line, name] : outputs) {
    auto it = ids.find(name);
    if (it == ids.end()) throw DanglingRef("line " + std::to_string(line) + ": unknown output '" + name + "'");
    pos.push_back({name, it->second});
  }
  return Netlist(std::move(nodes), std::move(inputs), std::move(pos));
}

/// Gate nodes in topological order, ties broken by name.
inline std::vector<NodeId> name_ordered_topology(const Netlist& n) {
  std::vector<std::size_t> pending(n.size());
  auto by_name = [&](NodeId a, NodeId b) { return n.node(a).name > n.node(b).name; };
  std::priority_queue<NodeId, std::vector<NodeId>, decltype(by_name)> ready(by_name);
  for (const auto& node : n.nodes()) {
    pending[node.id] = node.fanins.size();
    if (pending[node.id] == 0) ready.push(node.id);
  }
  std::vector<NodeId> order;
  order.reserve(n.size());
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId out : n.fanouts(id)) {
      if (--pending[out] == 0) ready.push(out);
    }
  }
  return order;
}

inline std::string write_bench(const Netlist& n) {
  std::string out;
  for (NodeId id : n.inputs()) out += "INPUT(" + n.node(id).name + ")\n";
  for (const auto& po : n.outputs()) out += "OUTPUT(" + n.node(po.driver).name + ")\n";
  for (NodeId id : name_ordered_topology(n)) {
    const Node& node = n.node(id);
    if (node.kind == GateKind::Input) continue;
    out += node.name;
    out += " = ";
    out += to_string(node.kind);
    if (!is_constant(node.kind)) {
      out += '(';
      for (std::size_t i = 0; i < node.fanins.size(); ++i) {
        if (i) out += ", ";
        out += n.node(node.fanins[i]).name;
      }
      out += ')';
    }
    out += '\n';
  }
  return out;
}

}  // namespace mimicnet
