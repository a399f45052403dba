#include <gtest/gtest.h>

#include "support.hpp"

using namespace mimicnet;
using testing_support::nand;
using testing_support::sop;

namespace {

std::vector<LabeledNetlist> corpus(bool mapped) {
  auto pick = [&](const std::string& s) -> const Netlist* { return mapped ? &nand(s) : &sop(s); };
  std::vector<LabeledNetlist> c{{pick("PRESENT"), "PRESENT"}};
  for (int i = 1; i <= 8; ++i) c.push_back({pick("DES_S" + std::to_string(i)), "DES"});
  c.push_back({pick("AES"), "AES"});
  return c;
}

std::vector<LabeledNetlist> without(const std::vector<LabeledNetlist>& c, const std::string& label) {
  std::vector<LabeledNetlist> out;
  for (const auto& x : c) {
    if (x.second != label) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Features, BaseRowOfIsolatedInput) {
  Netlist n;
  n.add_input("a");
  NodeFeatures f = extract_features(n, 0);
  ASSERT_EQ(f.rows.size(), 1u);
  ASSERT_EQ(f.dim, NodeFeatures::kBaseLen);
  std::vector<double> want(NodeFeatures::kBaseLen, 0.0);
  want[index_of(GateKind::Input)] = 1.0;
  EXPECT_EQ(f.rows[0], want);
}

TEST(Features, ChainMiddleSeesBothNeighbours) {
  Netlist n = parse_bench("INPUT(a)\nOUTPUT(c)\nb = INV(a)\nc = BUF(b)\n");
  NodeFeatures f = extract_features(n, 2);
  EXPECT_EQ(f.dim, NodeFeatures::kBaseLen * 5);
  const auto& mid = f.rows[n.id_of("b")];
  const std::size_t base = NodeFeatures::kBaseLen;
  EXPECT_EQ(mid[base + index_of(GateKind::Input)], 1.0);
  EXPECT_EQ(mid[2 * base + index_of(GateKind::Buf)], 1.0);
}

TEST(Features, PermutationInvariant) {
  // Same circuit declared in a different order gets a different id layout.
  Netlist a = parse_bench("INPUT(x)\nINPUT(y)\nOUTPUT(z)\np = NAND(x, y)\nq = INV(p)\nz = NOR(q, x)\n");
  Netlist b = parse_bench("INPUT(y)\nINPUT(x)\nOUTPUT(z)\nz = NOR(q, x)\nq = INV(p)\np = NAND(x, y)\n");
  auto fa = extract_features(a, 2).rows;
  auto fb = extract_features(b, 2).rows;
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  EXPECT_EQ(fa, fb);
}

TEST(Classifier, TrainingBasics) {
  auto c = corpus(false);
  Classifier k = train_centroids(c, 1);
  EXPECT_EQ(k.labels, (std::vector<std::string>{"AES", "DES", "PRESENT"}));
  for (const auto& v : k.centroids) EXPECT_EQ(v.size(), k.mean.size());
  auto doubled = c;
  doubled.insert(doubled.end(), c.begin(), c.end());
  Classifier k2 = train_centroids(doubled, 1);
  for (std::size_t i = 0; i < k.centroids.size(); ++i) {
    for (std::size_t d = 0; d < k.mean.size(); ++d) EXPECT_NEAR(k.centroids[i][d], k2.centroids[i][d], 1e-9);
  }
  EXPECT_THROW(train_centroids({{&sop("PRESENT"), "PRESENT"}}, 1), EmptyClass);
}

TEST(Classifier, DeterministicAcrossJobs) {
  auto c = corpus(true);
  Classifier a = train_centroids(c, 2, 1);
  Classifier b = train_centroids(c, 2, 8);
  EXPECT_EQ(a.centroids, b.centroids);
  auto sa = classify_eval(a, nand("PRESENT"), "PRESENT", without(c, "PRESENT"), 1);
  auto sb = classify_eval(b, nand("PRESENT"), "PRESENT", without(c, "PRESENT"), 8);
  EXPECT_EQ(sa.f1, sb.f1);
  EXPECT_EQ(sa.target_predictions, sb.target_predictions);
}

TEST(Classifier, SelfConsistencyOnTwoLevelNetlists) {
  auto c = corpus(false);
  Classifier k = train_centroids(c, 2);
  auto des = classify_eval(k, sop("DES_S3"), "DES", without(c, "DES"));
  EXPECT_GE(des.f1.at("DES"), 0.8);
  auto aes = classify_eval(k, sop("AES"), "AES", without(c, "AES"));
  EXPECT_GE(aes.f1.at("AES"), 0.8);
}

TEST(Classifier, DistractorsMustCoverClasses) {
  auto c = corpus(false);
  Classifier k = train_centroids(c, 0);
  EXPECT_THROW(classify_eval(k, sop("AES"), "AES", {}), PreconditionError);
  EXPECT_THROW(classify_eval(k, sop("AES"), "SHA", without(c, "AES")), EmptyClass);
}

TEST(F1, Definition) {
  EXPECT_EQ(f1_score(5, 0, 0), 1.0);
  EXPECT_EQ(f1_score(0, 3, 4), 0.0);
  EXPECT_EQ(f1_score(0, 0, 0), 0.0);
  EXPECT_NEAR(f1_score(2, 1, 1), 2.0 / 3.0, 1e-12);
}

TEST(ScoreGnn, Values) {
  EXPECT_NEAR(score_gnn(0.84, 0.10).value, 7.40, 1e-9);
  EXPECT_NEAR(score_gnn(0.95, 0.05).value, 18.0, 1e-9);
  EXPECT_EQ(score_gnn(0.3, 0.3).value, 0.0);
  EXPECT_TRUE(score_gnn(0.5, 0.0).infinite);
  EXPECT_THROW(score_gnn(1.2, 0.1), RangeError);
  EXPECT_THROW(score_gnn(0.2, -0.1), RangeError);
}
