#pragma once

#include <chrono>
#include <cmath>

#include "trifind/cost_model.hpp"
#include "trifind/graph.hpp"
#include "trifind/lg_algorithm.hpp"
#include "trifind/numeric.hpp"

namespace trifind {

// Grover over all C(n,3) vertex triples, one evaluation = 3 queries folded into t = 1.
inline RunReport naive_grover_baseline(const Graph& g, const CostConfig& cfg = {}) {
  const auto started = std::chrono::steady_clock::now();
  RunReport rep;
  rep.algorithm = "naive";
  rep.n = g.n();
  rep.params.cost = cfg;
  rep.ledger.declare(phase::kNaive);
  const double triples = static_cast<double>(choose3(g.n()));
  auto found = charged_search(
      std::max(1.0, triples), 1.0, [&] { return brute_force_triangle(g); }, rep.ledger,
      phase::kNaive, cfg);
  if (found && verify_triangle(g, rep.ledger, *found)) rep.outcome = found;
  rep.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - started);
  return rep;
}

// Charge n + sqrt(n m) for m edges; the edge count is read off the emulation for free.
inline double buhrman_cost(std::size_t n, std::size_t m, const CostConfig& cfg = {}) {
  validate(cfg);
  const double nd = static_cast<double>(n);
  return cfg.leading_constant * (nd + std::sqrt(nd * static_cast<double>(m)));
}

inline RunReport buhrman_baseline(const Graph& g, const CostConfig& cfg = {}) {
  const auto started = std::chrono::steady_clock::now();
  RunReport rep;
  rep.algorithm = "buhrman";
  rep.n = g.n();
  rep.params.cost = cfg;
  rep.ledger.charge(phase::kBuhrman, buhrman_cost(g.n(), g.edge_count(), cfg));
  if (auto found = brute_force_triangle(g); found && verify_triangle(g, rep.ledger, *found))
    rep.outcome = found;
  rep.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - started);
  return rep;
}

}  // namespace trifind
