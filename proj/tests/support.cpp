#include "support.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <set>

using namespace mimicnet;

namespace testing_support {

namespace {
std::mutex cache_mutex;
}

const Netlist& sop(const std::string& sbox) {
  static std::map<std::string, Netlist> cache;
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(sbox);
  if (it == cache.end()) it = cache.emplace(sbox, synth_sop(sbox_table(sbox))).first;
  return it->second;
}

const Netlist& nand(const std::string& sbox) {
  static std::map<std::string, Netlist> cache;
  const Netlist& s = sop(sbox);
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(sbox);
  if (it == cache.end()) it = cache.emplace(sbox, tech_map_nand(s)).first;
  return it->second;
}

const DisguiseResult& fixture_disguise() {
  static const DisguiseResult r = disguise(nand("PRESENT"), nand("DES_S1"), CostConfig{}, DisguiseOptions{});
  return r;
}

Netlist random_netlist(SplitMix64& g, std::size_t inputs, std::size_t gates, std::size_t outputs) {
  static const GateKind kinds[] = {GateKind::And, GateKind::Nand, GateKind::Or,  GateKind::Nor,   GateKind::Xor,
                                   GateKind::Xnor, GateKind::Inv, GateKind::Buf, GateKind::Const0, GateKind::Const1};
  Netlist n;
  for (std::size_t i = 0; i < inputs; ++i) n.add_input("i" + std::to_string(i));
  for (std::size_t k = 0; k < gates; ++k) {
    // constants are rare so most logic stays input dependent
    GateKind kind = kinds[g() % 8];
    if (g() % 20 == 0) kind = kinds[8 + g() % 2];
    std::size_t arity = 0;
    if (kind == GateKind::Inv || kind == GateKind::Buf) {
      arity = 1;
    } else if (kind == GateKind::Xor || kind == GateKind::Xnor) {
      arity = 2;
    } else if (is_multi_input(kind)) {
      arity = 2 + g() % 3;
    }
    std::vector<NodeId> fanins;
    for (std::size_t a = 0; a < arity; ++a) fanins.push_back(static_cast<NodeId>(g() % n.size()));
    n.add_gate("g" + std::to_string(k), kind, fanins);
  }
  // Outputs carry their driver's name, as in .bench files.
  std::set<NodeId> drivers;
  const std::size_t span = gates == 0 ? n.size() : gates;
  for (std::size_t o = 0; o < outputs; ++o) drivers.insert(static_cast<NodeId>(n.size() - 1 - g() % span));
  for (NodeId d : drivers) n.add_output(n.node(d).name, d);
  return n;
}

bool eval_gate(GateKind k, const std::vector<bool>& in) {
  std::size_t ones = 0;
  for (bool b : in) ones += b;
  switch (k) {
    case GateKind::And: return ones == in.size();
    case GateKind::Nand: return ones != in.size();
    case GateKind::Or: return ones > 0;
    case GateKind::Nor: return ones == 0;
    case GateKind::Xor: return ones % 2 == 1;
    case GateKind::Xnor: return ones % 2 == 0;
    case GateKind::Inv: return !in.at(0);
    case GateKind::Buf:
    case GateKind::OutputTap: return in.at(0);
    case GateKind::Const0: return false;
    case GateKind::Const1: return true;
    case GateKind::Input: break;
  }
  throw std::logic_error("eval_gate on input");
}

std::uint64_t reference_eval(const Netlist& n, std::uint64_t input) {
  const std::size_t w = n.inputs().size();
  std::map<NodeId, bool> memo;
  for (std::size_t i = 0; i < w; ++i) memo[n.inputs()[i]] = (input >> (w - 1 - i)) & 1U;
  std::function<bool(NodeId)> value = [&](NodeId id) -> bool {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::vector<bool> in;
    for (NodeId f : n.fanins(id)) in.push_back(value(f));
    return memo[id] = eval_gate(n.kind(id), in);
  };
  std::uint64_t out = 0;
  for (const auto& po : n.outputs()) out = (out << 1) | value(po.driver);
  return out;
}

std::string tmp_path(const std::string& name) {
  std::filesystem::path dir(MIMICNET_TEST_TMP);
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace testing_support
