#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"
#include "mimicnet/rng.hpp"
#include "mimicnet/simulate.hpp"

namespace mimicnet {

/// Correspondence between two netlists. Every input of n1 appears in
/// `inputs`; inputs of n2 are either paired or pinned in `fixed`.
struct IoMap {
  std::vector<std::pair<std::string, std::string>> inputs;   // n1 input -> n2 input
  std::vector<std::pair<std::string, std::string>> outputs;  // n1 output -> n2 output
  std::vector<std::pair<std::string, bool>> fixed;           // n2 input -> constant
};

/// Pairs inputs and outputs by position.
inline IoMap positional_map(const Netlist& n1, const Netlist& n2) {
  if (n1.inputs().size() != n2.inputs().size() || n1.outputs().size() != n2.outputs().size()) {
    throw IoMapError("netlists differ in input or output count");
  }
  IoMap m;
  for (std::size_t i = 0; i < n1.inputs().size(); ++i) {
    m.inputs.emplace_back(n1.node(n1.inputs()[i]).name, n2.node(n2.inputs()[i]).name);
  }
  for (std::size_t i = 0; i < n1.outputs().size(); ++i) {
    m.outputs.emplace_back(n1.outputs()[i].name, n2.outputs()[i].name);
  }
  return m;
}

struct Counterexample {
  std::uint64_t value = 0;  // mapped inputs, big-endian in IoMap order
  std::size_t width = 0;
  std::uint64_t out1 = 0;   // mapped outputs of n1, big-endian in IoMap order
  std::uint64_t out2 = 0;

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    std::uint64_t v = value;
    const std::size_t n = std::max<std::size_t>(1, (width + 3) / 4);
    for (std::size_t i = 0; i < n; ++i, v >>= 4) s.insert(s.begin(), digits[v & 0xF]);
    return "0x" + s;
  }
};

struct Verdict {
  bool pass = false;
  bool exhaustive = false;
  std::uint64_t vectors_tested = 0;
  std::optional<Counterexample> counterexample;
  std::vector<std::uint64_t> tested;  // random mode only, in test order
};

namespace detail {

struct BoundMap {
  std::size_t width = 0;
  std::vector<std::size_t> pos1, pos2;        // input position in n1 / n2 for mapped input i
  std::vector<std::pair<std::size_t, std::uint64_t>> fixed2;  // n2 input position -> word
  std::vector<NodeId> out1, out2;             // drivers, in IoMap output order
};

inline BoundMap bind(const Netlist& n1, const Netlist& n2, const IoMap& m) {
  auto input_pos = [](const Netlist& n, const std::string& name, const char* side) {
    auto id = n.find(name);
    if (id && n.kind(*id) == GateKind::Input) {
      auto it = std::find(n.inputs().begin(), n.inputs().end(), *id);
      return static_cast<std::size_t>(it - n.inputs().begin());
    }
    throw IoMapError(std::string("no input '") + name + "' in " + side);
  };
  BoundMap b;
  b.width = m.inputs.size();
  std::set<std::size_t> seen1, seen2;
  for (const auto& [a, c] : m.inputs) {
    auto p1 = input_pos(n1, a, "first netlist");
    auto p2 = input_pos(n2, c, "second netlist");
    if (!seen1.insert(p1).second || !seen2.insert(p2).second) throw IoMapError("input map is not one-to-one");
    b.pos1.push_back(p1);
    b.pos2.push_back(p2);
  }
  for (const auto& [name, value] : m.fixed) {
    auto p2 = input_pos(n2, name, "second netlist");
    if (!seen2.insert(p2).second) throw IoMapError("input '" + name + "' both mapped and fixed");
    b.fixed2.emplace_back(p2, value ? ~std::uint64_t{0} : 0);
  }
  if (seen1.size() != n1.inputs().size()) throw IoMapError("not every input of the first netlist is mapped");
  if (seen2.size() != n2.inputs().size()) throw IoMapError("second netlist has unmapped, unfixed inputs");
  if (m.outputs.empty()) throw IoMapError("no outputs to compare");
  for (const auto& [a, c] : m.outputs) {
    auto i1 = n1.output_index(a);
    auto i2 = n2.output_index(c);
    if (!i1) throw IoMapError("no output '" + a + "' in first netlist");
    if (!i2) throw IoMapError("no output '" + c + "' in second netlist");
    b.out1.push_back(n1.outputs()[*i1].driver);
    b.out2.push_back(n2.outputs()[*i2].driver);
  }
  if (b.width > 64) throw TooManyInputs("equivalence supports at most 64 mapped inputs");
  return b;
}

/// Simulates 64 mapped input vectors; returns the mask of mismatching lanes.
inline std::uint64_t compare_block(const Netlist& n1, const Netlist& n2, const BoundMap& b,
                                   const std::vector<std::uint64_t>& words, std::vector<std::uint64_t>* v1_out = nullptr,
                                   std::vector<std::uint64_t>* v2_out = nullptr) {
  std::vector<std::uint64_t> w1(n1.inputs().size(), 0), w2(n2.inputs().size(), 0);
  for (std::size_t i = 0; i < b.width; ++i) {
    w1[b.pos1[i]] = words[i];
    w2[b.pos2[i]] = words[i];
  }
  for (const auto& [p, w] : b.fixed2) w2[p] = w;
  auto v1 = simulate_words(n1, w1);
  auto v2 = simulate_words(n2, w2);
  std::uint64_t diff = 0;
  for (std::size_t k = 0; k < b.out1.size(); ++k) diff |= v1[b.out1[k]] ^ v2[b.out2[k]];
  if (v1_out) *v1_out = std::move(v1);
  if (v2_out) *v2_out = std::move(v2);
  return diff;
}

inline Counterexample make_cex(const Netlist& n1, const Netlist& n2, const BoundMap& b, std::uint64_t value) {
  std::vector<std::uint64_t> words(b.width, 0);
  for (std::size_t i = 0; i < b.width; ++i) {
    if ((value >> (b.width - 1 - i)) & 1U) words[i] = ~std::uint64_t{0};
  }
  std::vector<std::uint64_t> v1, v2;
  compare_block(n1, n2, b, words, &v1, &v2);
  Counterexample c{value, b.width, 0, 0};
  for (std::size_t k = 0; k < b.out1.size(); ++k) {
    c.out1 = (c.out1 << 1) | (v1[b.out1[k]] & 1U);
    c.out2 = (c.out2 << 1) | (v2[b.out2[k]] & 1U);
  }
  return c;
}

}  // namespace detail

/// Compares n1 and n2 on every assignment of the mapped inputs (at most 20).
/// A failing verdict carries the numerically smallest counterexample.
inline Verdict equiv_exhaustive(const Netlist& n1, const Netlist& n2, const IoMap& m, unsigned jobs = 1) {
  auto b = detail::bind(n1, n2, m);
  if (b.width > 20) throw TooManyInputs("exhaustive equivalence needs at most 20 mapped inputs");
  const std::uint64_t rows = std::uint64_t{1} << b.width;
  const std::uint64_t blocks = (rows + 63) / 64;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), blocks));
  std::vector<std::uint64_t> first_fail(workers, rows);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::uint64_t lo = blocks * w / workers, hi = blocks * (w + 1) / workers;
    for (std::uint64_t blk = lo; blk < hi; ++blk) {
      const std::uint64_t base = blk * 64;
      std::uint64_t diff = detail::compare_block(n1, n2, b, counting_words(base, b.width));
      if (rows - base < 64) diff &= (std::uint64_t{1} << (rows - base)) - 1;
      if (diff) {
        first_fail[w] = base + static_cast<std::uint64_t>(std::countr_zero(diff));
        return;
      }
    }
  });
  Verdict v;
  v.exhaustive = true;
  v.vectors_tested = rows;
  const std::uint64_t worst = *std::min_element(first_fail.begin(), first_fail.end());
  v.pass = worst == rows;
  if (!v.pass) v.counterexample = detail::make_cex(n1, n2, b, worst);
  return v;
}

/// The corner vectors (all zeros, all ones, each one-hot) followed by
/// `samples` uniform vectors drawn from `seed`.
inline std::vector<std::uint64_t> random_test_vectors(std::size_t width, std::size_t samples, std::uint64_t seed) {
  const std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  std::vector<std::uint64_t> vs{0, mask};
  for (std::size_t i = 0; i < width; ++i) vs.push_back(std::uint64_t{1} << (width - 1 - i));
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) vs.push_back(rng() & mask);
  return vs;
}

/// Probabilistic check for wide netlists. Pass only means no counterexample
/// among the tested vectors; a failure reports the first one in test order.
inline Verdict equiv_random(const Netlist& n1, const Netlist& n2, const IoMap& m, std::size_t samples,
                            std::uint64_t seed, unsigned jobs = 1) {
  if (samples == 0) throw PreconditionError("equiv_random needs at least one sample");
  auto b = detail::bind(n1, n2, m);
  Verdict v;
  v.tested = random_test_vectors(b.width, samples, seed);
  const std::size_t blocks = (v.tested.size() + 63) / 64;
  std::vector<std::uint64_t> diffs(blocks, 0);
  parallel_for(blocks, jobs, [&](std::size_t blk) {
    std::vector<std::uint64_t> words(b.width, 0);
    const std::size_t lo = blk * 64, hi = std::min(v.tested.size(), lo + 64);
    for (std::size_t k = lo; k < hi; ++k) {
      for (std::size_t i = 0; i < b.width; ++i) {
        if ((v.tested[k] >> (b.width - 1 - i)) & 1U) words[i] |= std::uint64_t{1} << (k - lo);
      }
    }
    std::uint64_t diff = detail::compare_block(n1, n2, b, words);
    if (hi - lo < 64) diff &= (std::uint64_t{1} << (hi - lo)) - 1;
    diffs[blk] = diff;
  });
  v.vectors_tested = v.tested.size();
  v.pass = true;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    if (diffs[blk]) {
      v.pass = false;
      v.counterexample = detail::make_cex(n1, n2, b, v.tested[blk * 64 + static_cast<std::size_t>(std::countr_zero(diffs[blk]))]);
      break;
    }
  }
  return v;
}

/// Exhaustive up to 20 mapped inputs, random beyond.
inline Verdict equiv_check(const Netlist& n1, const Netlist& n2, const IoMap& m, std::size_t samples = 100000,
                           std::uint64_t seed = 1, unsigned jobs = 1) {
  if (m.inputs.size() <= 20) return equiv_exhaustive(n1, n2, m, jobs);
  return equiv_random(n1, n2, m, samples, seed, jobs);
}

}  // namespace mimicnet
