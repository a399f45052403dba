#include <gtest/gtest.h>

#include "support.hpp"

using namespace mimicnet;

namespace {

Netlist with_kind(const Netlist& n, const std::string& name, GateKind k) {
  std::vector<Node> nodes = n.nodes();
  nodes[n.id_of(name)].kind = k;
  return Netlist(nodes, n.inputs(), n.outputs());
}

}  // namespace

TEST(Equivalence, SopEqualsNandMapping) {
  for (const char* s : {"PRESENT", "DES_S5", "AES"}) {
    const Netlist& a = testing_support::sop(s);
    const Netlist& b = testing_support::nand(s);
    Verdict v = equiv_exhaustive(a, b, positional_map(a, b));
    EXPECT_TRUE(v.pass) << s;
    EXPECT_TRUE(v.exhaustive);
    EXPECT_EQ(v.vectors_tested, 1ULL << a.inputs().size());
  }
}

TEST(Equivalence, CounterexampleIsSmallestDifference) {
  SplitMix64 g(51);
  int failures = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t w = 2 + g() % 7;
    Netlist a = testing_support::random_netlist(g, w, 10 + g() % 30, 1 + g() % 3);
    const Node& victim = a.node(a.outputs()[g() % a.outputs().size()].driver);
    GateKind k = victim.kind;
    if (k == GateKind::And) {
      k = GateKind::Or;
    } else if (k == GateKind::Nand) {
      k = GateKind::Nor;
    } else if (k == GateKind::Inv) {
      k = GateKind::Buf;
    } else if (k == GateKind::Xor) {
      k = GateKind::Xnor;
    } else {
      continue;
    }
    Netlist b = with_kind(a, victim.name, k);
    std::optional<std::uint64_t> first;
    for (std::uint64_t x = 0; x < (1ULL << w) && !first; ++x) {
      if (testing_support::reference_eval(a, x) != testing_support::reference_eval(b, x)) first = x;
    }
    for (unsigned jobs : {1u, 4u}) {
      Verdict v = equiv_exhaustive(a, b, positional_map(a, b), jobs);
      ASSERT_EQ(v.pass, !first.has_value());
      if (first) {
        ASSERT_TRUE(v.counterexample.has_value());
        EXPECT_EQ(v.counterexample->value, *first);
        EXPECT_EQ(v.counterexample->out1, testing_support::reference_eval(a, *first));
        EXPECT_EQ(v.counterexample->out2, testing_support::reference_eval(b, *first));
      }
    }
    failures += first.has_value();
  }
  EXPECT_GT(failures, 10);
}

TEST(Equivalence, NameMapsAndFixedInputs) {
  Netlist a = parse_bench("INPUT(p)\nINPUT(q)\nOUTPUT(z)\nz = AND(p, q)\n");
  // b reads its inputs swapped and has an extra input that must be held low.
  Netlist b = parse_bench("INPUT(x)\nINPUT(y)\nINPUT(s)\nOUTPUT(w)\nt = AND(y, x)\nw = XOR(t, s)\n");
  IoMap m;
  m.inputs = {{"p", "y"}, {"q", "x"}};
  m.outputs = {{"z", "w"}};
  m.fixed = {{"s", false}};
  EXPECT_TRUE(equiv_check(a, b, m).pass);
  m.fixed = {{"s", true}};
  Verdict v = equiv_check(a, b, m);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.counterexample->hex(), "0x0");
  m.fixed.clear();
  EXPECT_THROW(equiv_check(a, b, m), IoMapError);
  m.inputs = {{"p", "nope"}, {"q", "x"}};
  EXPECT_THROW(equiv_check(a, b, m), IoMapError);
}

TEST(Equivalence, RandomModeOnWideNetlists) {
  std::string text;
  for (int i = 0; i < 24; ++i) text += "INPUT(i" + std::to_string(i) + ")\n";
  text += "OUTPUT(z)\n";
  std::string a = text + "t = XOR(i0, i5)\nz = XOR(t, i23)\n";
  std::string b = text + "u = XNOR(i23, i5)\nz = XNOR(u, i0)\n";
  std::string c = text + "z = OR(i0, i5, i23)\n";
  Netlist na = parse_bench(a), nb = parse_bench(b), nc = parse_bench(c);
  Verdict same = equiv_check(na, nb, positional_map(na, nb), 2000, 3);
  EXPECT_TRUE(same.pass);
  EXPECT_FALSE(same.exhaustive);
  Verdict diff = equiv_check(na, nc, positional_map(na, nc), 2000, 3);
  EXPECT_FALSE(diff.pass);
  EXPECT_EQ(equiv_check(na, nc, positional_map(na, nc), 2000, 3, 8).counterexample->value,
            diff.counterexample->value);
}
