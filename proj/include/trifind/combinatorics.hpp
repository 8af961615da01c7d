#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "trifind/errors.hpp"
#include "trifind/graph.hpp"
#include "trifind/ledger.hpp"
#include "trifind/numeric.hpp"
#include "trifind/pair_set.hpp"
#include "trifind/rng.hpp"

namespace trifind {

// Number of with-replacement draws used to build X: ceil(3 n^k ln n).
inline std::uint64_t sample_x_draws(std::size_t n, double k) {
  require(n >= 2, "sample_X: n must be at least 2");
  const double nd = static_cast<double>(n);
  return ceil_snap(3.0 * std::pow(nd, k) * std::log(nd));
}

// Uniform draws with replacement, deduplicated.
inline VertexSet sample_X(std::size_t n, double k, std::uint64_t seed) {
  const std::uint64_t draws = sample_x_draws(n, k);
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> picked;
  picked.reserve(draws);
  for (std::uint64_t i = 0; i < draws; ++i) picked.push_back(pick(rng));
  return VertexSet(n, std::move(picked));
}

// Uniformly random subset of [0, n) with the given size.
inline VertexSet random_subset(std::size_t n, std::size_t size, Rng& rng) {
  require(size <= n, "random_subset: size exceeds ground set");
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(size);
  return VertexSet(n, std::move(pool));
}

namespace detail {

// For every y in Y, the bitmask over X positions of the x in X adjacent to y.
// This is exactly the (v, N(v) ∩ X) record the walk data structure keeps, and
// reading it costs |Y| * |X| probes.
struct XProfiles {
  std::size_t words = 0;
  std::vector<Word> bits;

  [[nodiscard]] std::span<const Word> of(std::size_t i) const {
    return {bits.data() + i * words, words};
  }
};

inline XProfiles x_profiles(const Graph& g, const VertexSet& x, const VertexSet& y,
                            QueryLedger* probes) {
  XProfiles p;
  p.words = std::max<std::size_t>(1, words_for(x.size()));
  p.bits.assign(y.size() * p.words, 0);
  std::uint64_t reads = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::span<Word> row(p.bits.data() + i * p.words, p.words);
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t] == y[i]) continue;
      ++reads;
      if (g.adjacent(y[i], x[t])) set_bit(row, t);
    }
  }
  if (probes) probes->add_probes(reads);
  return p;
}

}  // namespace detail

// Visits, in lexicographic order, every pair of Y not contained in N(u) for any u in X.
template <class Fn>
void for_each_delta_pair(const Graph& g, const VertexSet& x, const VertexSet& y, Fn&& fn,
                         QueryLedger* probes = nullptr) {
  const auto prof = detail::x_profiles(g, x, y, probes);
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto pi = prof.of(i);
    for (std::size_t j = i + 1; j < y.size(); ++j)
      if (!intersects(pi, prof.of(j))) fn(VertexPair{y[i], y[j]});
  }
}

// Pairs of Y minus every pair inside the neighbourhood of some u in X.
inline PairSet delta_Y(const Graph& g, const VertexSet& x, const VertexSet& y,
                       QueryLedger* probes = nullptr) {
  std::vector<VertexPair> out;
  for_each_delta_pair(g, x, y, [&](VertexPair p) { out.push_back(p); }, probes);
  return PairSet::from_sorted(std::move(out));
}

// The part of delta_Y(g, X, Y) whose endpoints are both adjacent to w.
inline PairSet delta_Y_w(const Graph& g, const VertexSet& x, const VertexSet& y, Vertex w,
                         QueryLedger* probes = nullptr) {
  require(w < g.n(), "delta_Y_w: apex out of range");
  if (probes) probes->add_probes(y.size());
  std::vector<VertexPair> out;
  for_each_delta_pair(
      g, x, y,
      [&](VertexPair p) {
        if (g.adjacent(p.lo, w) && g.adjacent(p.hi, w)) out.push_back(p);
      },
      probes);
  return PairSet::from_sorted(std::move(out));
}

// The subset of an already computed delta set that lies under apex w.
inline PairSet restrict_to_apex(const Graph& g, const PairSet& delta, Vertex w) {
  std::vector<VertexPair> out;
  for (VertexPair p : delta)
    if (g.adjacent(p.lo, w) && g.adjacent(p.hi, w)) out.push_back(p);
  return PairSet::from_sorted(std::move(out));
}

// |Delta(A, w)| for every w, from a known Delta(A).
inline std::vector<std::uint64_t> apex_delta_sizes(const Graph& g, const PairSet& delta) {
  std::vector<std::uint64_t> sizes(g.n(), 0);
  for (VertexPair p : delta)
    for_each_common_bit(g.row(p.lo), g.row(p.hi), [&](std::size_t w) { ++sizes[w]; });
  return sizes;
}

// Every pair of Delta_X(V) has at most n^(1-k) common neighbours. This is the
// sufficient condition for k-goodness that can actually be scanned.
inline bool check_kgood_pointwise(const Graph& g, const VertexSet& x, double k) {
  const double limit = std::pow(static_cast<double>(g.n()), 1.0 - k);
  bool ok = true;
  const VertexSet all = VertexSet::all(g.n());
  const auto prof = detail::x_profiles(g, x, all, nullptr);
  for (Vertex u = 0; u < g.n() && ok; ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v) {
      if (static_cast<double>(g.common_neighbor_count(u, v)) <= limit) continue;
      if (!intersects(prof.of(u), prof.of(v))) {
        ok = false;
        break;
      }
    }
  }
  return ok;
}

// The defining inequality of k-goodness for one given Y:
// sum_w |Delta_X(Y, w)| <= |Y|^2 n^(1-k).
inline bool kgood_sum_spotcheck(const Graph& g, const VertexSet& x, const VertexSet& y,
                                double k) {
  std::uint64_t lhs = 0;
  for_each_delta_pair(g, x, y, [&](VertexPair p) { lhs += g.common_neighbor_count(p.lo, p.hi); });
  const double ys = static_cast<double>(y.size());
  return static_cast<double>(lhs) <= ys * ys * std::pow(static_cast<double>(g.n()), 1.0 - k);
}

namespace detail {
inline double lemma4_scale(std::uint64_t r, std::uint64_t size_a) {
  require(size_a > 3, "lemma4: |A| must exceed 3");
  require(r > 3 && r <= size_a, "lemma4: r must satisfy 3 < r <= |A|");
  const double rd = static_cast<double>(r);
  const double ad = static_cast<double>(size_a);
  return 8.0 * (rd - 2.0) * (rd - 3.0) / ((ad - 2.0) * (ad - 3.0));
}
}  // namespace detail

// Size cap of condition (ii): 8(r-2)(r-3)/((|A|-2)(|A|-3)) * |Delta(A,w)|/3 + 16r.
inline double lemma4_threshold(std::uint64_t r, std::uint64_t size_a, double delta_aw_size) {
  return detail::lemma4_scale(r, size_a) * delta_aw_size / 3.0 + 16.0 * static_cast<double>(r);
}

// Same cap with an estimate A(s, w) standing in for |Delta(A,w)|/3, as in the
// marked-state condition of the inner walk.
inline double lemma4_threshold_estimated(std::uint64_t r, std::uint64_t size_a, double estimate) {
  return detail::lemma4_scale(r, size_a) * estimate + 16.0 * static_cast<double>(r);
}

// Lower bound on Pr[B contains the pair and satisfies the cap]: (r-1)^2 / (2|A|^2).
inline double lemma4_bound(std::uint64_t r, std::uint64_t size_a) {
  const double rd = static_cast<double>(r);
  const double ad = static_cast<double>(size_a);
  return (rd - 1.0) * (rd - 1.0) / (2.0 * ad * ad);
}

}  // namespace trifind
