#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "trifind/combinatorics.hpp"
#include "trifind/generators.hpp"
#include "trifind/pair_set.hpp"

using namespace trifind;

namespace {

// Δ_X(Y) straight from the definition: pairs of Y not inside N(u) for any u in X.
PairSet delta_oracle(const Graph& g, const VertexSet& x, const VertexSet& y) {
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      bool removed = false;
      for (Vertex u : x)
        if (g.adjacent(u, y[i]) && g.adjacent(u, y[j])) removed = true;
      if (!removed) out.push_back({y[i], y[j]});
    }
  return PairSet::from_unsorted(out);
}

PairSet delta_w_oracle(const Graph& g, const VertexSet& x, const VertexSet& y, Vertex w) {
  std::vector<VertexPair> out;
  for (VertexPair p : delta_oracle(g, x, y))
    if (g.adjacent(p.lo, w) && g.adjacent(p.hi, w)) out.push_back(p);
  return PairSet::from_sorted(out);
}

VertexSet random_set(std::size_t n, double keep, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(keep);
  std::vector<Vertex> m;
  for (Vertex v = 0; v < n; ++v)
    if (coin(rng)) m.push_back(v);
  return VertexSet(n, m);
}

Graph path3() {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  return std::move(b).build();
}

Graph star(std::size_t leaves) {
  GraphBuilder b(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) b.add_edge(0, v);
  return std::move(b).build();
}

}  // namespace

TEST(SampleX, DrawCounts) {
  EXPECT_EQ(sample_x_draws(256, 0.5), 267u);  // ceil(3 * 16 * ln 256) = ceil(266.17)
  for (double k : {0.1, 0.5, 0.9})
    EXPECT_EQ(sample_x_draws(2, k),
              static_cast<std::uint64_t>(std::ceil(3.0 * std::pow(2.0, k) * std::log(2.0))));
  EXPECT_THROW(sample_x_draws(1, 0.5), ContractViolation);
}

TEST(SampleX, DeduplicatedAndBounded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const VertexSet x = sample_X(256, 0.5, seed);
    EXPECT_LE(x.size(), 267u);
    EXPECT_GT(x.size(), 100u);
    EXPECT_TRUE(std::is_sorted(x.begin(), x.end()));
    EXPECT_EQ(std::set<Vertex>(x.begin(), x.end()).size(), x.size());
    for (Vertex v : x) EXPECT_LT(v, 256u);
  }
}

TEST(SampleX, Deterministic) {
  EXPECT_EQ(sample_X(300, 0.5, 4), sample_X(300, 0.5, 4));
  EXPECT_FALSE(sample_X(300, 0.5, 4) == sample_X(300, 0.5, 5));
}

TEST(RandomSubset, SizeAndRange) {
  Rng rng = make_rng(3);
  for (std::size_t size : {0u, 1u, 17u, 64u}) {
    const VertexSet s = random_subset(64, size, rng);
    EXPECT_EQ(s.size(), size);
  }
  EXPECT_THROW(random_subset(5, 6, rng), ContractViolation);
}

TEST(RandomSubset, RoughlyUniformMembership) {
  Rng rng = make_rng(9);
  std::vector<int> hits(20, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t)
    for (Vertex v : random_subset(20, 5, rng)) ++hits[v];
  const double p = 0.25;
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (int h : hits) EXPECT_LE(std::abs(h - trials * p), 5 * sigma);
}

TEST(PairSet, CanonicalForm) {
  const PairSet s = PairSet::from_unsorted({{3, 4}, {0, 2}, {3, 4}, {0, 1}});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.pairs()[0], (VertexPair{0, 1}));
  EXPECT_EQ(s.pairs()[2], (VertexPair{3, 4}));
  EXPECT_TRUE(s.contains({0, 2}));
  EXPECT_FALSE(s.contains({1, 2}));
  EXPECT_EQ(VertexPair::of(5, 2), (VertexPair{2, 5}));
  EXPECT_THROW(VertexPair::of(3, 3), ContractViolation);
}

TEST(LocalPairIndex, BijectionOverPairs) {
  const VertexSet a(40, {3, 7, 8, 20, 33, 39});
  const LocalPairIndex idx(40, a);
  EXPECT_EQ(idx.pair_count(), 15u);
  std::set<std::uint64_t> seen;
  for (VertexPair p : all_pairs(a)) {
    EXPECT_TRUE(idx.covers(p));
    const auto i = idx.index_of(p);
    EXPECT_LT(i, 15u);
    seen.insert(i);
  }
  EXPECT_EQ(seen.size(), 15u);
  EXPECT_FALSE(idx.covers({3, 4}));
  EXPECT_THROW((void)idx.index_of({3, 4}), ContractViolation);
}

TEST(LocalPairIndex, DrawsAreUniformOverPairs) {
  const VertexSet a(10, {0, 1, 2, 3, 4});
  const LocalPairIndex idx(10, a);
  Rng rng = make_rng(5);
  std::vector<int> hits(10, 0);
  const int trials = 50000;
  for (int t = 0; t < trials; ++t) {
    const auto [i, j] = idx.draw_positions(rng);
    ASSERT_NE(i, j);
    ++hits[LocalPairIndex::index_of_positions(i, j)];
  }
  const double sigma = std::sqrt(trials * 0.1 * 0.9);
  for (int h : hits) EXPECT_LE(std::abs(h - trials * 0.1), 5 * sigma);
}

TEST(DeltaY, EmptyXGivesAllPairs) {
  const Graph g = gen_er(30, 0.5, 1);
  const VertexSet y = random_set(30, 0.5, 2);
  EXPECT_EQ(delta_Y(g, VertexSet(30, {}), y), all_pairs(y));
}

TEST(DeltaY, SingletonYEmpty) {
  const Graph g = complete_graph(5);
  EXPECT_TRUE(delta_Y(g, VertexSet(5, {}), VertexSet(5, {2})).empty());
}

TEST(DeltaY, PathExample) {
  const PairSet d = delta_Y(path3(), VertexSet(3, {1}), VertexSet::all(3));
  EXPECT_EQ(d, PairSet::from_sorted({{0, 1}, {1, 2}}));
}

TEST(DeltaY, MatchesDefinitionOnSmallGraphs) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 2 + seed % 31;
    const double p = 0.1 + 0.8 * static_cast<double>(seed % 7) / 6.0;
    const Graph g = gen_er(n, p, seed);
    const VertexSet x = random_set(n, 0.2, seed + 1000);
    const VertexSet y = random_set(n, 0.6, seed + 2000);
    ASSERT_EQ(delta_Y(g, x, y), delta_oracle(g, x, y)) << "seed " << seed;
    for (Vertex w = 0; w < n; w += 3)
      ASSERT_EQ(delta_Y_w(g, x, y, w), delta_w_oracle(g, x, y, w)) << "seed " << seed;
  }
}

TEST(DeltaY, ExhaustiveOnFiveVertices) {
  // Every graph on 5 vertices, every X, Y = V.
  const std::size_t n = 5;
  const VertexSet all = VertexSet::all(n);
  std::vector<VertexPair> pairs = all_pairs(all).pairs();
  for (unsigned mask = 0; mask < (1u << pairs.size()); mask += 7) {
    GraphBuilder b(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) b.add_edge(pairs[i].lo, pairs[i].hi);
    const Graph g = std::move(b).build();
    for (unsigned xm = 0; xm < 32; ++xm) {
      std::vector<Vertex> xs;
      for (Vertex v = 0; v < n; ++v)
        if (xm >> v & 1u) xs.push_back(v);
      const VertexSet x(n, xs);
      ASSERT_EQ(delta_Y(g, x, all), delta_oracle(g, x, all));
    }
  }
}

TEST(DeltaY, InclusionChain) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen_er(48, 0.3, seed);
    const VertexSet x = random_set(48, 0.1, seed + 1);
    const VertexSet y = random_set(48, 0.7, seed + 2);
    const PairSet d = delta_Y(g, x, y);
    EXPECT_TRUE(d.is_subset_of(all_pairs(y)));
    for (Vertex w = 0; w < 48; ++w) {
      const PairSet dw = delta_Y_w(g, x, y, w);
      EXPECT_TRUE(dw.is_subset_of(d));
      EXPECT_EQ(dw, restrict_to_apex(g, d, w));
    }
  }
}

TEST(DeltaY, MonotoneInX) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen_er(40, 0.2, seed);
    const VertexSet y = random_set(40, 0.8, seed + 5);
    const VertexSet x1 = random_set(40, 0.1, seed + 6);
    std::vector<Vertex> bigger = x1.members();
    for (Vertex v : random_set(40, 0.2, seed + 7)) bigger.push_back(v);
    const VertexSet x2(40, bigger);
    EXPECT_TRUE(delta_Y(g, x2, y).is_subset_of(delta_Y(g, x1, y)));
  }
}

TEST(DeltaY, CountsProbes) {
  const Graph g = gen_er(30, 0.5, 1);
  const VertexSet x(30, {1, 2, 3});
  const VertexSet y(30, {3, 4, 5, 6});
  QueryLedger probes;
  delta_Y(g, x, y, &probes);
  EXPECT_EQ(probes.raw_probes(), 4u * 3u - 1u);  // the pair (3, 3) is skipped
  EXPECT_TRUE(probes.charges().empty());
}

TEST(DeltaYw, IsolatedApexEmpty) {
  GraphBuilder b(6);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  const Graph g = std::move(b).build();
  EXPECT_TRUE(delta_Y_w(g, VertexSet(6, {}), VertexSet::all(6), 5).empty());
}

TEST(DeltaYw, K4Example) {
  const Graph k4 = complete_graph(4);
  const PairSet d = delta_Y_w(k4, VertexSet(4, {}), VertexSet(4, {0, 1, 2}), 3);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d, all_pairs(VertexSet(4, {0, 1, 2})));
}

TEST(DeltaYw, ApexOutOfRange) {
  EXPECT_THROW(delta_Y_w(complete_graph(4), VertexSet(4, {}), VertexSet::all(4), 4),
               ContractViolation);
}

TEST(ApexDeltaSizes, MatchesPerApexSets) {
  const Graph g = gen_er(50, 0.4, 3);
  const VertexSet x = random_set(50, 0.05, 4);
  const VertexSet y = random_set(50, 0.5, 5);
  const PairSet d = delta_Y(g, x, y);
  const auto sizes = apex_delta_sizes(g, d);
  for (Vertex w = 0; w < 50; ++w) EXPECT_EQ(sizes[w], delta_Y_w(g, x, y, w).size());
}

TEST(KGood, EdgelessAlwaysGood) {
  const Graph g = empty_graph(40);
  EXPECT_TRUE(check_kgood_pointwise(g, VertexSet(40, {}), 0.5));
  EXPECT_TRUE(check_kgood_pointwise(g, sample_X(40, 0.5, 1), 0.9));
}

TEST(KGood, FullXAlwaysGood) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_er(60, 0.7, seed);
    EXPECT_TRUE(check_kgood_pointwise(g, VertexSet::all(60), 0.99));
    EXPECT_TRUE(delta_Y_w(g, VertexSet::all(60), VertexSet::all(60), 0).empty());
  }
}

TEST(KGood, StarLeavesShareOneNeighbour) {
  const Graph g = star(5);
  EXPECT_TRUE(check_kgood_pointwise(g, VertexSet(6, {}), 0.5));
  EXPECT_TRUE(check_kgood_pointwise(g, VertexSet(6, {}), 0.999));
}

TEST(KGood, DetectsViolation) {
  // K_{2,10}: the two hubs share 10 > sqrt(12) common neighbours and X = ∅ keeps them.
  GraphBuilder b(12);
  for (Vertex v = 2; v < 12; ++v) {
    b.add_edge(0, v);
    b.add_edge(1, v);
  }
  const Graph g = std::move(b).build();
  EXPECT_FALSE(check_kgood_pointwise(g, VertexSet(12, {}), 0.5));
  // Any leaf in X removes the hub pair.
  EXPECT_TRUE(check_kgood_pointwise(g, VertexSet(12, {5}), 0.5));
}

TEST(KGood, PointwiseAgreesWithScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 24;
    const Graph g = gen_er(n, 0.6, seed);
    const VertexSet x = random_set(n, 0.08, seed + 50);
    const double k = 0.3;
    const double limit = std::pow(static_cast<double>(n), 1.0 - k);
    bool ok = true;
    for (VertexPair p : delta_oracle(g, x, VertexSet::all(n)))
      if (static_cast<double>(g.common_neighbor_count(p.lo, p.hi)) > limit) ok = false;
    EXPECT_EQ(check_kgood_pointwise(g, x, k), ok) << "seed " << seed;
  }
}

TEST(KGoodSum, TrivialSets) {
  const Graph g = gen_er(30, 0.5, 1);
  EXPECT_TRUE(kgood_sum_spotcheck(g, VertexSet(30, {}), VertexSet(30, {}), 0.5));
  EXPECT_TRUE(kgood_sum_spotcheck(g, VertexSet(30, {}), VertexSet(30, {7}), 0.5));
  EXPECT_TRUE(kgood_sum_spotcheck(g, VertexSet::all(30), VertexSet::all(30), 0.99));
}

TEST(KGoodSum, LeftSideIsSumOfApexDeltas) {
  // Pick k so that the inequality is tight around the measured sum.
  const Graph g = gen_er(40, 0.5, 2);
  const VertexSet x = random_set(40, 0.05, 3);
  const VertexSet y = random_set(40, 0.5, 4);
  std::uint64_t lhs = 0;
  for (Vertex w = 0; w < 40; ++w) lhs += delta_Y_w(g, x, y, w).size();
  const double ys = static_cast<double>(y.size());
  const double k_tight = 1.0 - std::log(static_cast<double>(lhs) / (ys * ys)) / std::log(40.0);
  EXPECT_TRUE(kgood_sum_spotcheck(g, x, y, k_tight - 1e-6));
  EXPECT_FALSE(kgood_sum_spotcheck(g, x, y, k_tight + 1e-3));
}

TEST(KGoodSum, SampledXOnDenseER) {
  const Graph g = gen_er(128, 0.5, 1);
  const VertexSet x = sample_X(128, 0.5, 2);
  int good = 0;
  Rng rng = make_rng(3);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<std::size_t> size(0, 128);
    good += kgood_sum_spotcheck(g, x, random_subset(128, size(rng), rng), 0.5);
  }
  EXPECT_GE(good, 99);
}

TEST(Lemma4Threshold, Examples) {
  EXPECT_DOUBLE_EQ(lemma4_threshold(5, 9, 0), 80.0);
  EXPECT_DOUBLE_EQ(lemma4_threshold(4, 6, 9), 68.0);
  for (std::uint64_t r : {4u, 10u, 64u})
    EXPECT_NEAR(lemma4_threshold(r, r, 30.0), 8.0 / 3.0 * 30.0 + 16.0 * r, 1e-12);
}

TEST(Lemma4Threshold, EstimatedFormUsesEstimateDirectly) {
  EXPECT_DOUBLE_EQ(lemma4_threshold_estimated(4, 6, 3.0), lemma4_threshold(4, 6, 9.0));
}

TEST(Lemma4Threshold, Errors) {
  EXPECT_THROW(lemma4_threshold(3, 10, 1), ContractViolation);
  EXPECT_THROW(lemma4_threshold(11, 10, 1), ContractViolation);
  EXPECT_THROW(lemma4_threshold(4, 3, 1), ContractViolation);
  EXPECT_THROW(lemma4_threshold_estimated(2, 10, 1), ContractViolation);
}

TEST(Lemma4Bound, Value) {
  EXPECT_NEAR(lemma4_bound(16, 128), 225.0 / 32768.0, 1e-15);
  EXPECT_NEAR(lemma4_bound(16, 128), 0.006866, 1e-6);
}
