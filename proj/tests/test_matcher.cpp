#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace mimicnet;

namespace {

long brute_force(const std::vector<std::vector<long>>& c) {
  const std::size_t rows = c.size(), cols = c[0].size();
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  long best = std::numeric_limits<long>::max();
  do {
    long s = 0;
    for (std::size_t r = 0; r < rows; ++r) s += c[r][perm[r]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST(Hungarian, MatchesBruteForce) {
  SplitMix64 g(41);
  for (int t = 0; t < 300; ++t) {
    const std::size_t cols = 1 + g() % 6;
    const std::size_t rows = 1 + g() % cols;
    const long range = t % 3 == 0 ? 3 : 100;  // small ranges force ties
    std::vector<std::vector<long>> c(rows, std::vector<long>(cols));
    for (auto& r : c) {
      for (auto& v : r) v = static_cast<long>(g() % range);
    }
    auto a = hungarian(c);
    ASSERT_EQ(a.total, brute_force(c));
    long s = 0;
    std::vector<bool> used(cols, false);
    for (std::size_t r = 0; r < rows; ++r) {
      ASSERT_LT(a.row_to_col[r], cols);
      ASSERT_FALSE(used[a.row_to_col[r]]);
      used[a.row_to_col[r]] = true;
      s += c[r][a.row_to_col[r]];
    }
    EXPECT_EQ(s, a.total);
  }
}

TEST(Hungarian, TieBreakIsLexicographic) {
  std::vector<std::vector<long>> c = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  auto a = hungarian(c);
  EXPECT_EQ(a.row_to_col, (std::vector<std::size_t>{0, 1, 2}));
  std::vector<std::vector<double>> d = {{0, 0}, {5, 5}};
  EXPECT_EQ(hungarian(d).row_to_col, (std::vector<std::size_t>{0, 1}));
}

TEST(Hungarian, ShapeErrors) {
  EXPECT_THROW(hungarian(std::vector<std::vector<long>>{{1}, {2}}), ShapeError);
  EXPECT_THROW(hungarian(std::vector<std::vector<long>>{{1, 2}, {3}}), ShapeError);
  EXPECT_THROW(hungarian(std::vector<std::vector<long>>{{-1}}), ShapeError);
  EXPECT_EQ(hungarian(std::vector<std::vector<long>>{}).total, 0);
}

TEST(CostConfig, TextRoundTripAndValidation) {
  CostConfig c;
  c.p_conn = 7;
  c.pairs[{GateKind::Nand, GateKind::And}] = 3.5;
  CostConfig back = parse_cost_config(c.to_text());
  EXPECT_EQ(back.to_text(), c.to_text());
  EXPECT_EQ(back.hash(), c.hash());
  EXPECT_THROW(parse_cost_config("p_conn = x\n"), SyntaxError);
  EXPECT_THROW(parse_cost_config("bogus = 1\n"), SyntaxError);
  CostConfig bad;
  bad.p_incompat = 100;
  EXPECT_THROW(bad.validate(2), ConfigError);
  EXPECT_NO_THROW(CostConfig{}.validate(6));
}

TEST(NodeCost, Table) {
  CostConfig c;
  EXPECT_EQ(node_cost(GateKind::Nand, 2, GateKind::Nand, 2, c), 0);
  EXPECT_EQ(node_cost(GateKind::Nand, 4, GateKind::Nand, 2, c), 2 * c.tied_input_cost);
  EXPECT_EQ(node_cost(GateKind::Nand, 2, GateKind::Inv, 1, c), 0);
  EXPECT_EQ(node_cost(GateKind::Inv, 1, GateKind::Buf, 1, c), 0);
  EXPECT_EQ(node_cost(GateKind::Inv, 1, GateKind::Nand, 2, c), c.p_incompat);
  EXPECT_EQ(node_cost(GateKind::Xor, 2, GateKind::Inv, 1, c), c.p_incompat);
}

TEST(Matcher, SelfMatchIsIdentityAtZeroCost) {
  for (const char* s : {"PRESENT", "DES_S2"}) {
    const Netlist& n = testing_support::nand(s);
    Matching m = match_graphs(n, n, CostConfig{});
    EXPECT_EQ(m.total_cost, 0) << s;
    EXPECT_EQ(m.missing_edges, 0u);
    for (const auto& [f, a] : m.assign) EXPECT_EQ(f, a);
    EXPECT_EQ(m.assign.size(), n.size());
  }
}

TEST(Matcher, LevelPreservingAndInjective) {
  const Netlist& gf = testing_support::nand("PRESENT");
  const Netlist& ga = testing_support::nand("DES_S1");
  PadResult p = align_levels(gf, ga, CostConfig{});
  Matching m = match_graphs(p.netlist, ga, CostConfig{});
  LevelMap lf = levelize(p.netlist), la = levelize(ga);
  std::set<NodeId> images;
  for (const auto& [fid, aid] : m.assign) {
    EXPECT_EQ(lf.level[fid], la.level[aid]);
    EXPECT_TRUE(images.insert(aid).second);
  }
  EXPECT_EQ(m.assign.size(), p.netlist.size());
  double sum = 0;
  for (const auto& l : m.layers) sum += l.cost;
  EXPECT_DOUBLE_EQ(sum, m.total_cost);
}

TEST(Matcher, StrictFixtureIsUnrealizable) {
  EXPECT_THROW(match_graphs(testing_support::nand("PRESENT"), testing_support::nand("DES_S1"), CostConfig{}),
               UnrealizableMatch);
}

TEST(Matcher, OverfullLayerThrows) {
  Netlist f = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(x)\nOUTPUT(y)\nx = NAND(a, b)\ny = NOR(a, b)\n");
  Netlist a = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(x)\nx = NAND(a, b)\n");
  EXPECT_THROW(match_graphs(f, a, CostConfig{}), LayerOverfull);
}

TEST(Matcher, DeterministicAcrossJobs) {
  const Netlist& ga = testing_support::nand("DES_S1");
  PadResult p = align_levels(testing_support::nand("PRESENT"), ga, CostConfig{});
  MatchOptions one, many;
  many.jobs = 8;
  EXPECT_EQ(match_graphs(p.netlist, ga, CostConfig{}, one).id(), match_graphs(p.netlist, ga, CostConfig{}, many).id());
}

TEST(NameMap, RoundTrip) {
  std::vector<std::pair<std::string, std::string>> m = {{"x0", "a3"}, {"x1", "a1"}};
  EXPECT_EQ(parse_name_map(write_name_map(m)), m);
}
