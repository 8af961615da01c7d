#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "trifind/errors.hpp"
#include "trifind/graph.hpp"
#include "trifind/rng.hpp"

namespace trifind {

// G(n, p): pairs visited in lexicographic order, one Bernoulli draw each.
inline Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 1, "gen_er: n must be at least 1");
  require(p >= 0.0 && p <= 1.0, "gen_er: p must lie in [0, 1]");
  GraphBuilder b(n);
  if (p == 0.0) return std::move(b).build();
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  return std::move(b).build();
}

namespace detail {

// Random balanced bipartition; every cross pair is an edge with probability 1/2.
inline GraphBuilder bipartite_base(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> left(n, 0);
  for (std::size_t i = 0; i < n / 2; ++i) left[order[i]] = 1;
  GraphBuilder b(n);
  std::bernoulli_distribution coin(0.5);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (left[u] != left[v] && coin(rng)) b.add_edge(u, v);
  return b;
}

}  // namespace detail

inline Graph gen_triangle_free(std::size_t n, std::uint64_t seed) {
  require(n >= 2, "gen_triangle_free: n must be at least 2");
  Rng rng = make_rng(seed);
  return detail::bipartite_base(n, rng).build();
}

struct PlantedInstance {
  Graph graph;
  Triangle planted;
};

// Bipartite base plus one triangle on three uniformly random vertices. Any outside
// vertex adjacent to two or more planted vertices keeps only the edge to the
// smallest of them, so the planted triangle is the unique triangle.
inline PlantedInstance gen_planted_instance(std::size_t n, std::uint64_t seed) {
  require(n >= 3, "gen_planted: n must be at least 3");
  Rng rng = make_rng(seed);
  GraphBuilder b = detail::bipartite_base(n, rng);

  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t i = 0; i < 3; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  const Triangle t = Triangle::of(pool[0], pool[1], pool[2]);

  for (Vertex u = 0; u < n; ++u) {
    if (u == t.v[0] || u == t.v[1] || u == t.v[2]) continue;
    bool kept = false;
    for (Vertex p : t.v) {
      if (!b.has_edge(u, p)) continue;
      if (kept) {
        b.remove_edge(u, p);
      } else {
        kept = true;
      }
    }
  }
  b.add_edge(t.v[0], t.v[1]);
  b.add_edge(t.v[1], t.v[2]);
  b.add_edge(t.v[0], t.v[2]);
  return {std::move(b).build(), t};
}

inline Graph gen_planted(std::size_t n, std::uint64_t seed) {
  return gen_planted_instance(n, seed).graph;
}

}  // namespace trifind
