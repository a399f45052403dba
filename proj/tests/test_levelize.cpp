#include <gtest/gtest.h>

#include "support.hpp"

using namespace mimicnet;

namespace {

// a -> p -> {x, y, c}; c -> d; z = NAND(x, y, d)
Netlist slack_pair() {
  Netlist f;
  auto a = f.add_input("a");
  auto p = f.add_gate("p", GateKind::Inv, {a});
  auto x = f.add_gate("x", GateKind::Inv, {p});
  auto y = f.add_gate("y", GateKind::Inv, {p});
  auto c = f.add_gate("c", GateKind::Inv, {p});
  auto d = f.add_gate("d", GateKind::Inv, {c});
  auto z = f.add_gate("z", GateKind::Nand, {x, y, d});
  f.add_output("z", z);
  return f;
}

// layer widths 1, 1, 2, 3, 1
Netlist capacity_host() {
  Netlist a;
  auto i = a.add_input("i");
  auto n1 = a.add_gate("n1", GateKind::Inv, {i});
  auto m1 = a.add_gate("m1", GateKind::Inv, {n1});
  auto m2 = a.add_gate("m2", GateKind::Inv, {n1});
  auto t1 = a.add_gate("t1", GateKind::Inv, {m1});
  auto t2 = a.add_gate("t2", GateKind::Inv, {m1});
  auto t3 = a.add_gate("t3", GateKind::Inv, {m2});
  auto o = a.add_gate("o", GateKind::Nand, {t1, t2, t3});
  a.add_output("o", o);
  return a;
}

}  // namespace

TEST(Levelize, ChainAndConstants) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(z)\nk = CONST1\nb = INV(a)\nc = BUF(b)\nz = AND(c, k)\n");
  LevelMap lv = levelize(n);
  EXPECT_EQ(lv.level[n.id_of("a")], 0u);
  EXPECT_EQ(lv.level[n.id_of("k")], 1u);
  EXPECT_EQ(lv.level[n.id_of("b")], 1u);
  EXPECT_EQ(lv.level[n.id_of("c")], 2u);
  EXPECT_EQ(lv.level[n.id_of("z")], 3u);
  EXPECT_EQ(lv.max_level, 3u);
  EXPECT_EQ(lv.width(1), 2u);
}

TEST(Levelize, LevelIsOnePlusDeepestFaninProperty) {
  SplitMix64 g(31);
  for (int t = 0; t < 60; ++t) {
    Netlist n = testing_support::random_netlist(g, 1 + g() % 6, g() % 80, 1);
    LevelMap lv = levelize(n);
    std::size_t total = 0;
    for (std::size_t k = 0; k < lv.layers.size(); ++k) {
      total += lv.layers[k].size();
      EXPECT_TRUE(std::is_sorted(lv.layers[k].begin(), lv.layers[k].end()));
      for (NodeId id : lv.layers[k]) EXPECT_EQ(lv.level[id], k);
    }
    EXPECT_EQ(total, n.size());
    for (const auto& node : n.nodes()) {
      if (node.kind == GateKind::Input) {
        EXPECT_EQ(lv.level[node.id], 0u);
        continue;
      }
      std::size_t deepest = 0;
      for (NodeId f : node.fanins) deepest = std::max(deepest, lv.level[f]);
      EXPECT_EQ(lv.level[node.id], deepest + 1);
    }
  }
}

TEST(PadLevels, SharedBufferRelievesLayer) {
  Netlist f = slack_pair();
  Netlist a = capacity_host();
  LevelMap la = levelize(a);
  PadResult r = pad_levels(f, levelize(f), la);
  EXPECT_EQ(r.buffers_inserted, 1u);
  LevelMap lr = levelize(r.netlist);
  for (std::size_t k = 0; k <= lr.max_level; ++k) EXPECT_LE(lr.width(k), la.width(k)) << k;
  auto before = truth_values(f), after = truth_values(r.netlist);
  EXPECT_EQ(before, after);
}

TEST(PadLevels, AlreadyFittingIsUnchanged) {
  Netlist a = capacity_host();
  PadResult r = pad_levels(a, levelize(a), levelize(a));
  EXPECT_EQ(r.buffers_inserted, 0u);
  EXPECT_TRUE(structurally_equal(r.netlist, a));
}

TEST(PadLevels, InfeasibleWithoutDeeperLayers) {
  Netlist f = parse_bench("INPUT(a)\nOUTPUT(y)\nOUTPUT(z)\ny = INV(a)\nz = BUF(a)\n");
  Netlist a = parse_bench("INPUT(i)\nINPUT(e)\nOUTPUT(x)\nx = INV(i)\n");
  EXPECT_THROW(pad_levels(f, levelize(f), levelize(a)), Infeasible);
  Netlist small = parse_bench("INPUT(i)\nOUTPUT(x)\nx = INV(i)\n");
  EXPECT_THROW(pad_levels(f, levelize(f), levelize(small)), PreconditionError);
}
