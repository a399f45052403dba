#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/levelize.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"
#include "mimicnet/rng.hpp"
#include "mimicnet/simulate.hpp"
#include "mimicnet/truth_table.hpp"

namespace mimicnet {

enum class Leakage { HW, HD };
enum class Aggregation { Sum, Max };

inline const char* to_string(Leakage l) { return l == Leakage::HW ? "HW" : "HD"; }
inline const char* to_string(Aggregation a) { return a == Aggregation::Sum ? "sum" : "max"; }

/// A keyed S-box in silicon: it evaluates its netlist on plaintext XOR key.
class Device {
 public:
  Device(Netlist n, std::uint64_t key) : netlist_(std::move(n)), levels_(levelize(netlist_)) {
    width_ = static_cast<unsigned>(netlist_.inputs().size());
    if (width_ == 0 || width_ > 24) throw PreconditionError("device needs 1..24 inputs");
    set_key(key);
    // Node values for every input value, so traces are table lookups.
    const std::size_t rows = std::size_t{1} << width_;
    values_.assign(rows * netlist_.size(), 0);
    for (std::uint64_t base = 0; base < rows; base += 64) {
      auto words = simulate_words(netlist_, counting_words(base, width_));
      for (std::uint64_t lane = 0; lane < 64 && base + lane < rows; ++lane) {
        for (std::size_t id = 0; id < netlist_.size(); ++id) {
          values_[(base + lane) * netlist_.size() + id] = static_cast<std::uint8_t>((words[id] >> lane) & 1U);
        }
      }
    }
  }

  void set_key(std::uint64_t key) {
    if (key >> width_) throw RangeError("key does not fit in " + std::to_string(width_) + " bits");
    key_ = key;
  }

  const Netlist& netlist() const noexcept { return netlist_; }
  const LevelMap& levels() const noexcept { return levels_; }
  unsigned width() const noexcept { return width_; }
  std::uint64_t key() const noexcept { return key_; }
  std::size_t time_points() const noexcept { return levels_.max_level + 1; }

  /// Node values when the S-box sees `input` (already keyed).
  const std::uint8_t* node_values(std::uint64_t input) const { return &values_[input * netlist_.size()]; }

 private:
  Netlist netlist_;
  LevelMap levels_;
  unsigned width_ = 0;
  std::uint64_t key_ = 0;
  std::vector<std::uint8_t> values_;
};

struct TraceSet {
  std::vector<std::uint64_t> plaintexts;
  std::vector<double> samples;  // row-major, plaintexts.size() x time_points
  std::size_t time_points = 0;
  double sigma = 0;
  Leakage model = Leakage::HW;
  std::uint64_t seed = 0;
  std::uint64_t key = 0;
  unsigned width = 0;

  std::size_t size() const noexcept { return plaintexts.size(); }
  const double* row(std::size_t i) const { return &samples[i * time_points]; }

  bool operator==(const TraceSet&) const = default;
};

/// Sample t sums the switching of the gates on level t; primary inputs do not
/// leak, so t = 0 carries noise only. Trace i depends only on (seed, i) apart
/// from the HD reference, which is the previous trace's noiseless state (all
/// zero before trace 0).
inline TraceSet simulate_traces(const Device& dev, std::size_t n, double sigma, Leakage model, std::uint64_t seed,
                                unsigned jobs = 1) {
  if (n == 0) throw PreconditionError("need at least one trace");
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw PreconditionError("sigma must be finite and non-negative");
  TraceSet ts;
  ts.time_points = dev.time_points();
  ts.sigma = sigma;
  ts.model = model;
  ts.seed = seed;
  ts.key = dev.key();
  ts.width = dev.width();
  ts.plaintexts.resize(n);
  ts.samples.assign(n * ts.time_points, 0.0);
  const std::uint64_t mask = (std::uint64_t{1} << dev.width()) - 1;
  const std::size_t nodes = dev.netlist().size();
  const auto& level = dev.levels().level;
  const auto& kind_of = dev.netlist();

  // Plaintexts first: the HD reference of trace i needs plaintext i-1.
  std::vector<std::uint64_t> noise_seed(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 g(derive_seed(seed, {i}));
    ts.plaintexts[i] = g() & mask;
    noise_seed[i] = g();
  }
  parallel_for(n, jobs, [&](std::size_t i) {
    double* row = &ts.samples[i * ts.time_points];
    const std::uint8_t* cur = dev.node_values(ts.plaintexts[i] ^ dev.key());
    const std::uint8_t* prev = i == 0 ? nullptr : dev.node_values(ts.plaintexts[i - 1] ^ dev.key());
    for (std::size_t id = 0; id < nodes; ++id) {
      const GateKind k = kind_of.kind(static_cast<NodeId>(id));
      if (k == GateKind::OutputTap || k == GateKind::Input) continue;
      unsigned v = cur[id];
      if (model == Leakage::HD) v ^= prev ? prev[id] : 0U;
      row[level[id]] += v;
    }
    if (sigma > 0) {
      SplitMix64 g(noise_seed[i]);
      for (std::size_t t = 0; t < ts.time_points; ++t) row[t] += sigma * g.normal();
    }
  });
  return ts;
}

/// Bit j (0 = most significant) of model[x XOR k].
inline unsigned selection_bit(const TruthTable& model, std::uint64_t x, std::uint64_t k, unsigned j) {
  if (j >= model.n_outputs) throw IndexError("bit " + std::to_string(j) + " of a " + std::to_string(model.n_outputs) + "-bit model");
  const std::uint64_t mask = (std::uint64_t{1} << model.n_inputs) - 1;
  if ((x | k) > mask) throw IndexError("plaintext or hypothesis wider than the model");
  return model.bit(static_cast<std::size_t>(x ^ k), j);
}

struct AttackResult {
  std::string model_name;
  std::uint64_t rank_max = 0;
  std::vector<unsigned> target_bits;
  Aggregation aggregation = Aggregation::Sum;
  std::vector<double> scores;  // by hypothesis
  // delta[(k * target_bits.size() + b) * time_points + t]
  std::vector<double> delta;
  std::size_t time_points = 0;
  std::uint64_t true_key = 0;  // device key, zero-extended to model width
  std::uint64_t rank = 0;
  std::uint64_t min_rank_over_extensions = 0;
  std::size_t traces = 0;

  /// 1-based rank: strictly better hypotheses first, ties by hypothesis value.
  std::uint64_t rank_of(std::uint64_t h) const {
    std::uint64_t r = 1;
    for (std::uint64_t k = 0; k < scores.size(); ++k) {
      if (scores[k] > scores[h] || (scores[k] == scores[h] && k < h)) ++r;
    }
    return r;
  }

  double delta_at(std::uint64_t k, std::size_t b, std::size_t t) const {
    return delta[(k * target_bits.size() + b) * time_points + t];
  }

  bool operator==(const AttackResult&) const = default;
};

/// Per-plaintext sums of the traces. Everything the difference of means
/// needs, and cheap to extend one trace at a time.
class DpaAccumulator {
 public:
  DpaAccumulator(unsigned width, std::size_t time_points)
      : width_(width), t_(time_points), count_(std::size_t{1} << width, 0), sum_((std::size_t{1} << width) * time_points, 0.0) {}

  void add(std::uint64_t plaintext, const double* row) {
    ++count_[plaintext];
    double* s = &sum_[plaintext * t_];
    for (std::size_t t = 0; t < t_; ++t) s[t] += row[t];
    ++n_;
  }

  void add_range(const TraceSet& ts, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) add(ts.plaintexts[i], ts.row(i));
  }

  std::size_t traces() const noexcept { return n_; }

  /// Differential traces for every hypothesis of the model. The model may be
  /// wider than the device; plaintexts and key are then zero-extended.
  AttackResult attack(const TruthTable& model, const std::string& model_name, std::vector<unsigned> target_bits,
                      std::uint64_t true_key, Aggregation agg = Aggregation::Sum, unsigned jobs = 1,
                      bool keep_delta = true) const {
    if (model.n_inputs < width_) {
      throw WidthMismatch("model has " + std::to_string(model.n_inputs) + " inputs, device has " +
                          std::to_string(width_));
    }
    if (model.n_inputs > 16) throw TooManyInputs("attack models support at most 16 inputs");
    if (n_ == 0) throw PreconditionError("attack needs at least one trace");
    if (target_bits.empty()) {
      for (unsigned j = 0; j < model.n_outputs; ++j) target_bits.push_back(j);
    }
    for (unsigned j : target_bits) {
      if (j >= model.n_outputs) throw IndexError("target bit " + std::to_string(j) + " out of range");
    }
    AttackResult r;
    r.model_name = model_name;
    r.rank_max = std::uint64_t{1} << model.n_inputs;
    r.target_bits = target_bits;
    r.aggregation = agg;
    r.time_points = t_;
    r.true_key = true_key;
    r.traces = n_;
    r.scores.assign(r.rank_max, 0.0);
    const std::size_t nb = target_bits.size();
    std::vector<double> delta(r.rank_max * nb * t_, 0.0);
    const std::size_t xs = count_.size();

    parallel_for(r.rank_max, jobs, [&](std::size_t k) {
      std::vector<double> s1(t_), s0(t_);
      double score = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        std::fill(s1.begin(), s1.end(), 0.0);
        std::fill(s0.begin(), s0.end(), 0.0);
        std::uint64_t n1 = 0, n0 = 0;
        for (std::size_t x = 0; x < xs; ++x) {
          if (count_[x] == 0) continue;
          const double* s = &sum_[x * t_];
          if (model.bit(x ^ k, target_bits[b])) {
            n1 += count_[x];
            for (std::size_t t = 0; t < t_; ++t) s1[t] += s[t];
          } else {
            n0 += count_[x];
            for (std::size_t t = 0; t < t_; ++t) s0[t] += s[t];
          }
        }
        double* d = &delta[(k * nb + b) * t_];
        if (n1 == 0 || n0 == 0) continue;  // empty partition: all-zero differential
        for (std::size_t t = 0; t < t_; ++t) {
          d[t] = s1[t] / static_cast<double>(n1) - s0[t] / static_cast<double>(n0);
          const double a = std::abs(d[t]);
          score = agg == Aggregation::Sum ? score + a : std::max(score, a);
        }
      }
      r.scores[k] = score;
    });
    if (keep_delta) r.delta = std::move(delta);
    r.rank = r.rank_of(true_key);
    r.min_rank_over_extensions = r.rank;
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << (model.n_inputs - width_)); ++e) {
      r.min_rank_over_extensions = std::min(r.min_rank_over_extensions, r.rank_of(true_key | (e << width_)));
    }
    return r;
  }

 private:
  unsigned width_;
  std::size_t t_;
  std::vector<std::uint64_t> count_;
  std::vector<double> sum_;
  std::size_t n_ = 0;
};

/// Difference-of-means DPA over all hypotheses of `model`.
inline AttackResult dpa_attack(const TraceSet& ts, const TruthTable& model, const std::string& model_name,
                               const std::vector<unsigned>& target_bits = {}, Aggregation agg = Aggregation::Sum,
                               unsigned jobs = 1) {
  if (ts.size() == 0) throw PreconditionError("empty trace set");
  DpaAccumulator acc(ts.width, ts.time_points);
  acc.add_range(ts, 0, ts.size());
  return acc.attack(model, model_name, target_bits, ts.key, agg, jobs);
}

struct GeRow {
  std::size_t traces = 0;
  double ge = 0;       // mean rank
  double ge_bits = 0;  // log2(mean rank)
  double ge_min_extension = 0;  // mean of the best rank over key extensions
  std::vector<std::uint64_t> ranks;  // per experiment

  bool operator==(const GeRow&) const = default;
};

struct GeSpec {
  std::vector<std::size_t> trace_counts;
  std::size_t experiments = 1;
  double sigma = 0;
  Leakage leakage = Leakage::HW;
  std::vector<unsigned> target_bits;
  Aggregation aggregation = Aggregation::Sum;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// Experiment e draws its key and traces from seeds derived from (seed, e);
/// the largest trace count is simulated once and attacked by prefixes.
inline std::vector<GeRow> guessing_entropy(const Netlist& device_netlist, const TruthTable& model,
                                           const std::string& model_name, const GeSpec& spec) {
  if (spec.experiments == 0) throw PreconditionError("need at least one experiment");
  if (spec.trace_counts.empty()) throw PreconditionError("need at least one trace count");
  std::vector<std::size_t> counts = spec.trace_counts;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  if (counts.front() == 0) throw PreconditionError("trace counts must be positive");

  const Device proto(device_netlist, 0);
  std::vector<std::vector<std::uint64_t>> ranks(spec.experiments), best(spec.experiments);
  // Experiments run in parallel; each attack inside is single-threaded.
  parallel_for(spec.experiments, spec.jobs, [&](std::size_t e) {
    Device dev = proto;
    SplitMix64 kg(derive_seed(spec.seed, {e, 0}));
    dev.set_key(kg() & ((std::uint64_t{1} << dev.width()) - 1));
    TraceSet ts = simulate_traces(dev, counts.back(), spec.sigma, spec.leakage, derive_seed(spec.seed, {e, 1}));
    DpaAccumulator acc(ts.width, ts.time_points);
    std::size_t done = 0;
    for (std::size_t n : counts) {
      acc.add_range(ts, done, n);
      done = n;
      auto r = acc.attack(model, model_name, spec.target_bits, dev.key(), spec.aggregation, 1, false);
      ranks[e].push_back(r.rank);
      best[e].push_back(r.min_rank_over_extensions);
    }
  });
  std::vector<GeRow> rows;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    GeRow row;
    row.traces = counts[c];
    double sum = 0, sum_best = 0;
    for (std::size_t e = 0; e < spec.experiments; ++e) {
      row.ranks.push_back(ranks[e][c]);
      sum += static_cast<double>(ranks[e][c]);
      sum_best += static_cast<double>(best[e][c]);
    }
    row.ge = sum / static_cast<double>(spec.experiments);
    row.ge_bits = std::log2(row.ge);
    row.ge_min_extension = sum_best / static_cast<double>(spec.experiments);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Normalized rank gap between a deceived and a correctly modeled attack.
inline double score_dpa(double rank_disguise, double rank_leak, double rank_max) {
  if (!(rank_max >= 1)) throw RangeError("rank_max must be at least 1");
  for (double r : {rank_disguise, rank_leak}) {
    if (!(r >= 1 && r <= rank_max)) throw RangeError("rank " + std::to_string(r) + " outside [1, rank_max]");
  }
  return (rank_disguise - rank_leak) / rank_max;
}

}  // namespace mimicnet
