#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace mimicnet;

namespace {

// Noise-free leakage computed with the scalar simulator.
std::vector<double> leakage_oracle(const Netlist& n, std::uint64_t input, const std::vector<std::uint8_t>* prev,
                                   std::vector<std::uint8_t>* state) {
  LevelMap lv = levelize(n);
  auto r = simulate(n, unpack_bits(input, n.inputs().size()));
  std::vector<double> row(lv.max_level + 1, 0.0);
  for (const auto& node : n.nodes()) {
    if (node.kind == GateKind::Input) continue;
    unsigned v = r.values[node.id];
    if (prev) v ^= (*prev)[node.id];
    row[lv.level[node.id]] += v;
  }
  if (state) *state = r.values;
  return row;
}

TraceSet hand_traces() {
  TraceSet ts;
  ts.width = 2;
  ts.time_points = 1;
  ts.key = 0;
  ts.plaintexts = {0, 1, 2, 3};
  ts.samples = {1, 2, 3, 10};
  return ts;
}

}  // namespace

TEST(Traces, NoiseFreeSamplesMatchOracle) {
  const Netlist& n = testing_support::nand("PRESENT");
  Device dev(n, 0x9);
  TraceSet hw = simulate_traces(dev, 50, 0.0, Leakage::HW, 3);
  TraceSet hd = simulate_traces(dev, 50, 0.0, Leakage::HD, 3);
  EXPECT_EQ(hw.plaintexts, hd.plaintexts);
  std::vector<std::uint8_t> prev(n.size(), 0), state;
  for (std::size_t i = 0; i < 50; ++i) {
    auto want_hw = leakage_oracle(n, hw.plaintexts[i] ^ 0x9, nullptr, nullptr);
    auto want_hd = leakage_oracle(n, hw.plaintexts[i] ^ 0x9, &prev, &state);
    prev = state;
    for (std::size_t t = 0; t < hw.time_points; ++t) {
      ASSERT_EQ(hw.row(i)[t], want_hw[t]);
      ASSERT_EQ(hd.row(i)[t], want_hd[t]);
    }
    EXPECT_EQ(hw.row(i)[0], 0.0);  // inputs do not leak
  }
}

TEST(Traces, NoiseHasRequestedMoments) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(z)\nz = CONST0\n");
  Device dev(n, 0);
  TraceSet ts = simulate_traces(dev, 40000, 2.0, Leakage::HW, 17);
  double s = 0, s2 = 0;
  for (double v : ts.samples) {
    s += v;
    s2 += v * v;
  }
  const double m = s / static_cast<double>(ts.samples.size());
  const double var = s2 / static_cast<double>(ts.samples.size()) - m * m;
  EXPECT_NEAR(m, 0.0, 0.05);
  EXPECT_NEAR(std::sqrt(var), 2.0, 0.05);
}

TEST(Traces, DeterministicAcrossJobs) {
  Device dev(testing_support::sop("DES_S2"), 0x2A);
  TraceSet a = simulate_traces(dev, 3000, 1.5, Leakage::HD, 99, 1);
  TraceSet b = simulate_traces(dev, 3000, 1.5, Leakage::HD, 99, 8);
  EXPECT_EQ(a, b);
  TraceSet c = simulate_traces(dev, 3000, 1.5, Leakage::HD, 100, 1);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_EQ(dpa_attack(a, sbox_table("DES_S2"), "DES_S2", {}, Aggregation::Sum, 1),
            dpa_attack(b, sbox_table("DES_S2"), "DES_S2", {}, Aggregation::Sum, 8));
}

TEST(Traces, KeyAndSigmaPreconditions) {
  EXPECT_THROW(Device(testing_support::sop("PRESENT"), 16), RangeError);
  Device dev(testing_support::sop("PRESENT"), 3);
  EXPECT_THROW(simulate_traces(dev, 0, 1.0, Leakage::HW, 1), PreconditionError);
  EXPECT_THROW(simulate_traces(dev, 5, -1.0, Leakage::HW, 1), PreconditionError);
}

TEST(Selection, BitOfKeyedModel) {
  TruthTable p = sbox_table("PRESENT");
  for (std::uint64_t x = 0; x < 16; ++x) {
    for (std::uint64_t k = 0; k < 16; ++k) {
      for (unsigned j = 0; j < 4; ++j) ASSERT_EQ(selection_bit(p, x, k, j), (p[x ^ k] >> (3 - j)) & 1U);
    }
  }
  EXPECT_THROW(selection_bit(p, 0, 0, 4), IndexError);
  EXPECT_THROW(selection_bit(p, 16, 0, 0), IndexError);
}

TEST(Dpa, FourTraceHandComputation) {
  // One-bit AND model: D = 1 only where x ^ k = 3.
  TruthTable model(2, 1, {0, 0, 0, 1});
  AttackResult r = dpa_attack(hand_traces(), model, "AND");
  const double want[] = {10.0 - 2.0, 3.0 - 13.0 / 3.0, 2.0 - 14.0 / 3.0, 1.0 - 5.0};
  for (std::uint64_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(r.delta_at(k, 0, 0), want[k], 1e-12) << k;
    EXPECT_NEAR(r.scores[k], std::abs(want[k]), 1e-12) << k;
  }
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.rank_of(3), 2u);
  EXPECT_EQ(r.rank_of(2), 3u);
  EXPECT_EQ(r.rank_of(1), 4u);
  EXPECT_EQ(r.rank_max, 4u);
}

TEST(Dpa, RankTiesGoToSmallerHypothesis) {
  AttackResult r;
  r.scores = {1.0, 2.0, 2.0, 0.5};
  EXPECT_EQ(r.rank_of(1), 1u);
  EXPECT_EQ(r.rank_of(2), 2u);
  EXPECT_EQ(r.rank_of(0), 3u);
  EXPECT_EQ(r.rank_of(3), 4u);
}

TEST(Dpa, WiderModelZeroExtends) {
  Device dev(testing_support::sop("PRESENT"), 0x5);
  TraceSet ts = simulate_traces(dev, 500, 0.0, Leakage::HW, 4);
  AttackResult r = dpa_attack(ts, sbox_table("DES_S1"), "DES_S1");
  EXPECT_EQ(r.rank_max, 64u);
  EXPECT_EQ(r.true_key, 0x5u);
  EXPECT_LE(r.min_rank_over_extensions, r.rank);
  EXPECT_GE(r.min_rank_over_extensions, 1u);
  Device wide(testing_support::sop("DES_S1"), 0x5);
  TraceSet tw = simulate_traces(wide, 10, 0.0, Leakage::HW, 4);
  EXPECT_THROW(dpa_attack(tw, sbox_table("PRESENT"), "PRESENT"), WidthMismatch);
}

// Noise-free attack over the full plaintext space, correct model, all bits.
// DES S4 has a twin: K and K ^ 0x2F score exactly alike, and the smaller of
// the two takes rank 1.
TEST(Dpa, NoiseFreeConvergenceProperty) {
  for (const auto& name : sbox_names()) {
    const Netlist& n = testing_support::sop(name);
    TruthTable t = sbox_table(name);
    const unsigned w = t.n_inputs;
    SplitMix64 g(derive_seed(61, {w}));
    for (int trial = 0; trial < 4; ++trial) {
      const std::uint64_t key = g() & ((1ULL << w) - 1);
      Device dev(n, key);
      DpaAccumulator acc(w, dev.time_points());
      for (std::uint64_t x = 0; x < (1ULL << w); ++x) {
        auto row = leakage_oracle(n, x ^ key, nullptr, nullptr);
        acc.add(x, row.data());
      }
      AttackResult r = acc.attack(t, name, {}, key);
      if (name == "DES_S4" && r.rank == 2) {
        EXPECT_EQ(r.scores[key], r.scores[key ^ 0x2F]) << "key " << key;
        EXPECT_LT(key ^ 0x2F, key);
      } else {
        EXPECT_EQ(r.rank, 1u) << name << " key " << key;
      }
    }
  }
}

TEST(Dpa, DesS4TwinTie) {
  const Netlist& n = testing_support::sop("DES_S4");
  TruthTable t = sbox_table("DES_S4");
  Device dev(n, 0x30);
  DpaAccumulator acc(6, dev.time_points());
  for (std::uint64_t x = 0; x < 64; ++x) acc.add(x, leakage_oracle(n, x ^ 0x30, nullptr, nullptr).data());
  AttackResult r = acc.attack(t, "DES_S4", {}, 0x30);
  EXPECT_EQ(r.scores[0x30], r.scores[0x30 ^ 0x2F]);
  EXPECT_EQ(r.rank, 2u);
}

TEST(GuessingEntropy, ShapeAndDeterminism) {
  GeSpec s;
  s.trace_counts = {400, 100};
  s.experiments = 12;
  s.sigma = 2.0;
  s.seed = 5;
  auto a = guessing_entropy(testing_support::sop("PRESENT"), sbox_table("PRESENT"), "PRESENT", s);
  s.jobs = 8;
  auto b = guessing_entropy(testing_support::sop("PRESENT"), sbox_table("PRESENT"), "PRESENT", s);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].traces, 100u);
  EXPECT_EQ(a[1].traces, 400u);
  for (const auto& row : a) {
    EXPECT_EQ(row.ranks.size(), 12u);
    EXPECT_DOUBLE_EQ(row.ge_bits, std::log2(row.ge));
  }
}

TEST(ScoreDpa, Values) {
  EXPECT_NEAR(score_dpa(33, 1, 64), 0.5, 1e-12);
  EXPECT_NEAR(score_dpa(1, 1, 64), 0.0, 1e-12);
  EXPECT_THROW(score_dpa(0, 1, 64), RangeError);
  EXPECT_THROW(score_dpa(65, 1, 64), RangeError);
  EXPECT_THROW(score_dpa(1, 1, 0), RangeError);
}
