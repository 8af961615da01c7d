#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "trifind/errors.hpp"
#include "trifind/graph.hpp"
#include "trifind/ledger.hpp"
#include "trifind/numeric.hpp"
#include "trifind/pair_set.hpp"
#include "trifind/rng.hpp"

namespace trifind {

struct EstimatorConfig {
  // Charged as ceil(charge_constant * m * ln n) queries per run.
  double charge_constant = 1.0;
};

// One run of the sampling estimator of |Delta_X(A, w)|.
struct EstimatorRun {
  std::uint64_t seed = 0;
  std::uint64_t m = 0;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;
  std::uint64_t rounds = 0;        // ceil(240 ln n)
  std::uint64_t second_draws = 0;  // ceil(72 m ln n), or 0 when the second stage is skipped
  bool second_stage = false;
  double output = 0.0;
  std::uint64_t probes_used = 0;
};

inline std::uint64_t estimator_rounds(std::size_t n) {
  return ceil_snap(240.0 * std::log(static_cast<double>(n)));
}

inline std::uint64_t estimator_second_draws(std::size_t n, std::uint64_t m) {
  return ceil_snap(72.0 * static_cast<double>(m) * std::log(static_cast<double>(n)));
}

inline double estimator_charge(std::size_t n, std::uint64_t m, const EstimatorConfig& cfg = {}) {
  return static_cast<double>(
      ceil_snap(cfg.charge_constant * static_cast<double>(m) * std::log(static_cast<double>(n))));
}

// Delta_X(A) indexed against the canonical enumeration of pairs of A. Built once
// per A and shared by the runs for every apex w.
class DeltaIndex {
 public:
  DeltaIndex(const Graph& g, const VertexSet& a, const PairSet& delta_a)
      : pairs_(g.n(), a), mask_(pairs_.mask_of(delta_a)), empty_(delta_a.empty()) {
    require(a.size() >= 2, "estimator: |A| must be at least 2");
  }

  [[nodiscard]] const LocalPairIndex& pairs() const { return pairs_; }
  [[nodiscard]] bool in_delta(std::size_t i, std::size_t j) const {
    return test_bit(mask_, LocalPairIndex::index_of_positions(i, j));
  }
  [[nodiscard]] bool delta_empty() const { return empty_; }

 private:
  LocalPairIndex pairs_;
  std::vector<Word> mask_;
  bool empty_;
};

namespace detail {

// One draw of the sampler: a pair of A qualifies if it is in Delta_X(A) (free to
// test) and both endpoints are adjacent to w (one probe each, short-circuit).
struct PairProbe {
  const Graph& g;
  const DeltaIndex& index;
  Vertex w;
  std::uint64_t probes = 0;

  bool qualifies(std::size_t i, std::size_t j) {
    if (!index.in_delta(i, j)) return false;
    const Vertex u = index.pairs().member(i);
    const Vertex v = index.pairs().member(j);
    if (u == w || v == w) return false;
    return adjacent_to_apex(u) && adjacent_to_apex(v);
  }

  bool adjacent_to_apex(Vertex v) {
    ++probes;
    return g.adjacent(v, w);
  }
};

}  // namespace detail

// The two-stage sampling estimator with a fixed random string (here: seed).
// Stage 1 repeats ceil(240 ln n) rounds of m uniform pair draws and counts in c1
// the rounds with a qualifying draw. If c1 <= rounds/2 the output is |E(A)|/m.
// Otherwise stage 2 draws ceil(72 m ln n) single pairs, counts qualifying ones
// in c2, and outputs c2 |E(A)| / ceil(72 m ln n).
inline EstimatorRun estimate_delta_size(const Graph& g, const DeltaIndex& index, std::uint64_t m,
                                        Vertex w, std::uint64_t seed, QueryLedger& ledger,
                                        std::string_view phase = "estimator",
                                        const EstimatorConfig& cfg = {}) {
  require(m >= 1, "estimator: m must be positive");
  require(w < g.n(), "estimator: apex out of range");
  const std::size_t n = g.n();
  const double pair_universe = static_cast<double>(index.pairs().pair_count());

  EstimatorRun run;
  run.seed = seed;
  run.m = m;
  run.rounds = estimator_rounds(n);
  ledger.charge(phase, estimator_charge(n, m, cfg));

  // With an empty Delta_X(A) no draw can qualify and no probe is ever made, so
  // stage 1 ends with c1 = 0 whatever the random string.
  if (index.delta_empty()) {
    run.output = pair_universe / static_cast<double>(m);
    return run;
  }

  Rng rng = make_rng(seed);
  detail::PairProbe probe{g, index, w};
  for (std::uint64_t round = 0; round < run.rounds; ++round) {
    bool hit = false;
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto [a, b] = index.pairs().draw_positions(rng);
      if (!hit && probe.qualifies(a, b)) hit = true;
    }
    if (hit) ++run.c1;
  }

  if (static_cast<double>(run.c1) <= static_cast<double>(run.rounds) / 2.0) {
    run.output = pair_universe / static_cast<double>(m);
  } else {
    run.second_stage = true;
    run.second_draws = estimator_second_draws(n, m);
    for (std::uint64_t i = 0; i < run.second_draws; ++i) {
      const auto [a, b] = index.pairs().draw_positions(rng);
      if (probe.qualifies(a, b)) ++run.c2;
    }
    run.output = static_cast<double>(run.c2) * pair_universe /
                 static_cast<double>(run.second_draws);
  }
  run.probes_used = probe.probes;
  ledger.add_probes(probe.probes);
  return run;
}

// Convenience form taking A and Delta_X(A) directly.
inline EstimatorRun estimator_A(const Graph& g, const VertexSet& a, const PairSet& delta_a,
                                std::uint64_t m, Vertex w, std::uint64_t seed,
                                QueryLedger& ledger, const EstimatorConfig& cfg = {}) {
  require(a.size() >= 2, "estimator: |A| must be at least 2");
  const DeltaIndex index(g, a, delta_a);
  return estimate_delta_size(g, index, m, w, seed, ledger, "estimator", cfg);
}

// Per-apex seed derived from the shared random string.
inline std::uint64_t apex_stream(std::uint64_t string_seed, Vertex w) {
  return derive_seed(string_seed, {static_cast<std::uint64_t>(w)});
}

// The accuracy condition the estimator guarantees with high probability:
// |Delta|/3 <= output <= 3/2 max(|A|(|A|-1)/(2m), |Delta|).
inline bool estimate_within_bounds(double output, std::uint64_t true_size, std::uint64_t size_a,
                                   std::uint64_t m) {
  const double truth = static_cast<double>(true_size);
  const double floor_term =
      static_cast<double>(size_a) * static_cast<double>(size_a - 1) / (2.0 * static_cast<double>(m));
  return truth / 3.0 <= output && output <= 1.5 * std::max(floor_term, truth);
}

}  // namespace trifind
