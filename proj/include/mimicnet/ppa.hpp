#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "mimicnet/camouflage.hpp"
#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"
#include "mimicnet/rng.hpp"
#include "mimicnet/simulate.hpp"

namespace mimicnet {

inline unsigned area_weight(GateKind k, std::size_t fanins) {
  switch (k) {
    case GateKind::Input:
    case GateKind::OutputTap:
    case GateKind::Const0:
    case GateKind::Const1: return 0;
    case GateKind::Inv:
    case GateKind::Buf: return 1;
    case GateKind::Xor:
    case GateKind::Xnor: return 3;
    case GateKind::And:
    case GateKind::Nand:
    case GateKind::Or:
    case GateKind::Nor: return static_cast<unsigned>(fanins);
  }
  return 0;
}

inline double area_proxy(const Netlist& n) {
  std::uint64_t a = 0;
  for (const auto& node : n.nodes()) a += area_weight(node.kind, node.fanins.size());
  return static_cast<double>(a);
}

/// Mean weighted toggle count over `pairs` random consecutive input pairs.
/// Pair p is drawn from a stream derived from (seed, p / 64), so the value is
/// independent of the worker count.
inline double power_proxy(const Netlist& n, std::size_t pairs, std::uint64_t seed, unsigned jobs = 1) {
  if (pairs == 0) throw PreconditionError("power proxy needs at least one pair");
  const std::size_t blocks = (pairs + 63) / 64;
  std::vector<std::uint64_t> totals(blocks, 0);
  std::vector<unsigned> weight(n.size());
  for (const auto& node : n.nodes()) weight[node.id] = area_weight(node.kind, node.fanins.size());
  parallel_for(blocks, jobs, [&](std::size_t b) {
    SplitMix64 g(derive_seed(seed, {b}));
    std::vector<std::uint64_t> w0(n.inputs().size()), w1(n.inputs().size());
    for (auto& w : w0) w = g();
    for (auto& w : w1) w = g();
    const std::size_t lanes = std::min<std::size_t>(64, pairs - b * 64);
    const std::uint64_t mask = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
    auto v0 = simulate_words(n, w0);
    auto v1 = simulate_words(n, w1);
    std::uint64_t t = 0;
    for (std::size_t id = 0; id < n.size(); ++id) {
      t += static_cast<std::uint64_t>(weight[id]) * static_cast<std::uint64_t>(std::popcount((v0[id] ^ v1[id]) & mask));
    }
    totals[b] = t;
  });
  std::uint64_t total = 0;
  for (auto t : totals) total += t;
  return static_cast<double>(total) / static_cast<double>(pairs);
}

struct Overhead {
  double area_ratio = 0;
  double power_ratio = 0;
  std::size_t extra_nodes = 0;
  std::size_t carrier_chains = 0;
};

/// Proxies of the apparent netlist, simulated as drawn, relative to the
/// appearance circuit.
inline Overhead overhead(const DeceptiveDesign& d, const Netlist& a, std::size_t pairs, std::uint64_t seed,
                         unsigned jobs = 1) {
  if (d.apparent.inputs().size() != a.inputs().size()) {
    throw PreconditionError("apparent netlist and appearance circuit differ in input count");
  }
  Overhead o;
  const double area_a = area_proxy(a);
  const double power_a = power_proxy(a, pairs, seed, jobs);
  if (area_a == 0 || power_a == 0) throw RangeError("appearance circuit has zero area or power");
  o.area_ratio = area_proxy(d.apparent) / area_a;
  o.power_ratio = power_proxy(d.apparent, pairs, seed, jobs) / power_a;
  o.extra_nodes = d.apparent.size() >= a.size() ? d.apparent.size() - a.size() : 0;
  o.carrier_chains = d.carrier_chains();
  return o;
}

}  // namespace mimicnet
