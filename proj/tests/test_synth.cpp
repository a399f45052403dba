#include <gtest/gtest.h>

#include "support.hpp"

using namespace mimicnet;

namespace {

// Independent AES S-box: multiplicative inverse in GF(2^8) followed by the
// affine map, computed by brute force.
std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1B : 0));
    b >>= 1;
  }
  return p;
}

std::uint8_t aes_oracle(std::uint8_t x) {
  std::uint8_t inv = 0;
  for (int c = 1; c < 256 && x; ++c) {
    if (gf_mul(x, static_cast<std::uint8_t>(c)) == 1) inv = static_cast<std::uint8_t>(c);
  }
  std::uint8_t s = 0x63;
  for (int i = 0; i < 8; ++i) {
    unsigned bit = 0;
    for (int k : {0, 4, 5, 6, 7}) bit ^= (inv >> ((i + k) % 8)) & 1U;
    s ^= static_cast<std::uint8_t>(bit << i);
  }
  return s;
}

}  // namespace

TEST(SBox, AesTableMatchesFieldConstruction) {
  TruthTable t = sbox_table("AES");
  for (unsigned x = 0; x < 256; ++x) ASSERT_EQ(t[x], aes_oracle(static_cast<std::uint8_t>(x))) << x;
}

TEST(SBox, KnownEntries) {
  EXPECT_EQ(sbox_table("PRESENT")[0x0], 0xCu);
  EXPECT_EQ(sbox_table("PRESENT")[0xF], 0x2u);
  // DES S1: row from the outer bits, column from the middle four.
  EXPECT_EQ(sbox_table("DES_S1")[0b000000], 14u);
  EXPECT_EQ(sbox_table("DES_S1")[0b000001], 0u);
  EXPECT_EQ(sbox_table("DES_S1")[0b111111], 13u);
  EXPECT_EQ(sbox_table("des_s8")[0b000001], 1u);
}

TEST(SBox, DesRowsArePermutations) {
  for (int s = 1; s <= 8; ++s) {
    TruthTable t = sbox_table("DES_S" + std::to_string(s));
    for (unsigned row = 0; row < 4; ++row) {
      unsigned seen = 0;
      for (unsigned col = 0; col < 16; ++col) {
        const unsigned x = ((row >> 1) << 5) | (col << 1) | (row & 1);
        seen |= 1U << t[x];
      }
      EXPECT_EQ(seen, 0xFFFFu) << "S" << s << " row " << row;
    }
  }
}

TEST(Synth, SopAndNandRealizeEveryTable) {
  for (const auto& name : sbox_names()) {
    TruthTable t = sbox_table(name);
    for (const Netlist* n : {&testing_support::sop(name), &testing_support::nand(name)}) {
      auto vals = truth_values(*n);
      for (std::size_t x = 0; x < t.size(); ++x) ASSERT_EQ(vals[x], t[x]) << name << " x=" << x;
    }
  }
}

TEST(Synth, NandMappingUsesOnlyNand2AndInv) {
  const Netlist& n = testing_support::nand("DES_S3");
  for (const auto& node : n.nodes()) {
    if (node.kind == GateKind::Input) continue;
    const bool ok = (node.kind == GateKind::Nand && node.fanins.size() == 2) || node.kind == GateKind::Inv ||
                    is_constant(node.kind);
    EXPECT_TRUE(ok) << node.name << " " << to_string(node.kind);
  }
}

TEST(Synth, RandomTablesProperty) {
  SplitMix64 g(21);
  for (int t = 0; t < 30; ++t) {
    const unsigned n_in = 1 + g() % 6, n_out = 1 + g() % 5;
    std::vector<std::uint32_t> rows(1U << n_in);
    // include degenerate all-zero / all-one columns now and then
    for (auto& r : rows) r = static_cast<std::uint32_t>(g() & ((1U << n_out) - 1));
    if (t % 5 == 0) {
      for (auto& r : rows) r &= ~1U;
    }
    if (t % 7 == 0) {
      for (auto& r : rows) r |= 1U << (n_out - 1);
    }
    TruthTable tt(n_in, n_out, rows);
    Netlist s = synth_sop(tt);
    Netlist m = tech_map_nand(s);
    auto vs = truth_values(s), vm = truth_values(m);
    for (std::size_t x = 0; x < rows.size(); ++x) {
      ASSERT_EQ(vs[x], rows[x]);
      ASSERT_EQ(vm[x], rows[x]);
    }
  }
}
