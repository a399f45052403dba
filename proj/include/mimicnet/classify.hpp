#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/levelize.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"

namespace mimicnet {

/// Per-node structural features: kind one-hot, in/out degree, relative level,
/// then `rounds` rounds each appending the mean fanin and mean fanout vector
/// of the previous round.
struct NodeFeatures {
  std::size_t rounds = 0;
  std::size_t dim = 0;
  std::vector<std::vector<double>> rows;  // by node id

  static constexpr std::size_t kBaseLen = kGateKindCount + 3;
};

inline NodeFeatures extract_features(const Netlist& n, std::size_t rounds, unsigned jobs = 1) {
  const LevelMap lv = levelize(n);
  const std::size_t base = NodeFeatures::kBaseLen;
  NodeFeatures f;
  f.rounds = rounds;
  f.dim = base * (2 * rounds + 1);
  f.rows.assign(n.size(), std::vector<double>(f.dim, 0.0));
  const double max_level = lv.max_level == 0 ? 1.0 : static_cast<double>(lv.max_level);
  for (const auto& node : n.nodes()) {
    auto& r = f.rows[node.id];
    r[index_of(node.kind)] = 1.0;
    r[kGateKindCount] = static_cast<double>(node.fanins.size());
    r[kGateKindCount + 1] = static_cast<double>(n.fanouts(node.id).size());
    r[kGateKindCount + 2] = static_cast<double>(lv.level[node.id]) / max_level;
  }
  // Round k reads the in/out blocks of round k-1 (the base block for k = 1)
  // and writes blocks 2k-1 (fanin mean) and 2k (fanout mean).
  for (std::size_t k = 1; k <= rounds; ++k) {
    const std::size_t in_src = k == 1 ? 0 : (2 * k - 3) * base;
    const std::size_t out_src = k == 1 ? 0 : (2 * k - 2) * base;
    const std::size_t in_dst = (2 * k - 1) * base;
    const std::size_t out_dst = 2 * k * base;
    parallel_for(n.size(), jobs, [&](std::size_t id) {
      auto& r = f.rows[id];
      const auto& fin = n.fanins(static_cast<NodeId>(id));
      const auto& fout = n.fanouts(static_cast<NodeId>(id));
      for (NodeId u : fin) {
        for (std::size_t d = 0; d < base; ++d) r[in_dst + d] += f.rows[u][in_src + d] / static_cast<double>(fin.size());
      }
      for (NodeId u : fout) {
        for (std::size_t d = 0; d < base; ++d) r[out_dst + d] += f.rows[u][out_src + d] / static_cast<double>(fout.size());
      }
    });
  }
  return f;
}

struct Classifier {
  std::size_t rounds = 2;
  std::vector<std::string> labels;  // sorted
  std::vector<std::vector<double>> centroids;
  std::vector<double> mean, stddev;

  std::vector<double> normalize(const std::vector<double>& x) const {
    if (x.size() != mean.size()) throw DimensionMismatch("feature length " + std::to_string(x.size()) + " vs " + std::to_string(mean.size()));
    std::vector<double> out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) out[d] = (x[d] - mean[d]) / stddev[d];
    return out;
  }

  /// Cosine-nearest centroid; ties go to the lexicographically first label.
  std::size_t predict(const std::vector<double>& raw) const {
    auto x = normalize(raw);
    double xn = 0;
    for (double v : x) xn += v * v;
    xn = std::sqrt(xn);
    std::size_t best = 0;
    double best_sim = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      double dot = 0, cn = 0;
      for (std::size_t d = 0; d < x.size(); ++d) {
        dot += x[d] * centroids[c][d];
        cn += centroids[c][d] * centroids[c][d];
      }
      const double denom = xn * std::sqrt(cn);
      const double sim = denom > 0 ? dot / denom : 0.0;
      if (sim > best_sim) {
        best_sim = sim;
        best = c;
      }
    }
    return best;
  }

  std::size_t label_index(const std::string& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) throw EmptyClass("unknown class '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }
};

using LabeledNetlist = std::pair<const Netlist*, std::string>;

inline Classifier train_centroids(const std::vector<LabeledNetlist>& corpus, std::size_t rounds, unsigned jobs = 1) {
  Classifier c;
  c.rounds = rounds;
  std::set<std::string> labels;
  for (const auto& [n, label] : corpus) labels.insert(label);
  if (labels.size() < 2) throw EmptyClass("training needs at least two classes");
  c.labels.assign(labels.begin(), labels.end());

  std::vector<NodeFeatures> feats(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) { feats[i] = extract_features(*corpus[i].first, rounds); });
  const std::size_t dim = NodeFeatures::kBaseLen * (2 * rounds + 1);
  std::vector<double> sum(dim, 0.0), sq(dim, 0.0);
  double count = 0;
  for (const auto& f : feats) {
    for (const auto& r : f.rows) {
      for (std::size_t d = 0; d < dim; ++d) {
        sum[d] += r[d];
        sq[d] += r[d] * r[d];
      }
      count += 1;
    }
  }
  if (count == 0) throw EmptyClass("training corpus has no nodes");
  c.mean.resize(dim);
  c.stddev.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    c.mean[d] = sum[d] / count;
    const double var = std::max(0.0, sq[d] / count - c.mean[d] * c.mean[d]);
    c.stddev[d] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  c.centroids.assign(c.labels.size(), std::vector<double>(dim, 0.0));
  std::vector<double> members(c.labels.size(), 0.0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::size_t k = c.label_index(corpus[i].second);
    for (const auto& r : feats[i].rows) {
      auto z = c.normalize(r);
      for (std::size_t d = 0; d < dim; ++d) c.centroids[k][d] += z[d];
      members[k] += 1;
    }
  }
  for (std::size_t k = 0; k < c.labels.size(); ++k) {
    if (members[k] == 0) throw EmptyClass("class '" + c.labels[k] + "' has no nodes");
    for (auto& v : c.centroids[k]) v /= members[k];
  }
  return c;
}

struct ClassScores {
  std::map<std::string, double> f1;  // per class
  std::vector<std::string> target_predictions;  // by target node id
  std::size_t nodes_evaluated = 0;
};

/// F1 = 2TP / (2TP + FP + FN), 0 when the class never occurs nor is predicted.
inline double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

/// Classifies every node of the target (truth `target_label`) and of the
/// distractors (their own labels), then scores each class.
inline ClassScores classify_eval(const Classifier& c, const Netlist& target, const std::string& target_label,
                                 const std::vector<LabeledNetlist>& distractors, unsigned jobs = 1) {
  const std::size_t truth_target = c.label_index(target_label);
  std::set<std::string> covered{target_label};
  for (const auto& [n, label] : distractors) covered.insert(label);
  for (const auto& label : c.labels) {
    if (!covered.count(label)) throw PreconditionError("distractors miss class '" + label + "'");
  }
  std::vector<const Netlist*> nets{&target};
  std::vector<std::size_t> truth{truth_target};
  for (const auto& [n, label] : distractors) {
    nets.push_back(n);
    truth.push_back(c.label_index(label));
  }
  std::vector<std::vector<std::size_t>> pred(nets.size());
  parallel_for(nets.size(), jobs, [&](std::size_t i) {
    auto f = extract_features(*nets[i], c.rounds);
    if (f.dim != c.mean.size()) throw DimensionMismatch("feature dimension differs from the classifier");
    for (const auto& r : f.rows) pred[i].push_back(c.predict(r));
  });
  const std::size_t k = c.labels.size();
  std::vector<std::size_t> tp(k, 0), fp(k, 0), fn(k, 0);
  ClassScores s;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    for (std::size_t p : pred[i]) {
      if (p == truth[i]) {
        ++tp[p];
      } else {
        ++fp[p];
        ++fn[truth[i]];
      }
      ++s.nodes_evaluated;
    }
  }
  for (std::size_t j = 0; j < k; ++j) s.f1[c.labels[j]] = f1_score(tp[j], fp[j], fn[j]);
  for (std::size_t p : pred[0]) s.target_predictions.push_back(c.labels[p]);
  return s;
}

struct GnnScore {
  double value = 0;
  bool infinite = false;  // the functional class was never recovered
};

inline GnnScore score_gnn(double f1_mimicry, double f1_expose) {
  for (double v : {f1_mimicry, f1_expose}) {
    if (!(v >= 0 && v <= 1)) throw RangeError("F1 value outside [0, 1]");
  }
  if (f1_expose == 0) return {std::numeric_limits<double>::infinity(), true};
  return {(f1_mimicry - f1_expose) / f1_expose, false};
}

}  // namespace mimicnet
