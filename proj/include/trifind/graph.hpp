#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trifind/errors.hpp"
#include "trifind/ledger.hpp"

namespace trifind {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

inline bool test_bit(std::span<const Word> row, std::size_t i) {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set_bit(std::span<Word> row, std::size_t i) {
  row[i / kWordBits] |= Word{1} << (i % kWordBits);
}

inline void clear_bit(std::span<Word> row, std::size_t i) {
  row[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += std::popcount(a[i] & b[i]);
  return count;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

// First index >= from set in (a & b), or npos.
inline std::size_t first_common_from(std::span<const Word> a, std::span<const Word> b,
                                     std::size_t from) {
  std::size_t w = from / kWordBits;
  if (w >= a.size()) return SIZE_MAX;
  Word mask = ~Word{0} << (from % kWordBits);
  for (; w < a.size(); ++w, mask = ~Word{0}) {
    Word bits = a[w] & b[w] & mask;
    if (bits) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
  }
  return SIZE_MAX;
}

template <class Fn>
void for_each_bit(std::span<const Word> row, Fn&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    Word bits = row[w];
    while (bits) {
      fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

template <class Fn>
void for_each_common_bit(std::span<const Word> a, std::span<const Word> b, Fn&& fn) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    Word bits = a[w] & b[w];
    while (bits) {
      fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

// Undirected, unweighted graph on vertices [0, n) stored as packed adjacency rows.
// Immutable once built; see GraphBuilder.
class Graph {
 public:
  Graph() = default;

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t words_per_row() const { return words_; }

  [[nodiscard]] std::span<const Word> row(Vertex u) const {
    return {rows_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  // Emulation-side adjacency read: no bounds contract, no probe accounting.
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return test_bit(row(u), v); }

  [[nodiscard]] std::size_t degree(Vertex u) const {
    std::size_t d = 0;
    for (Word w : row(u)) d += std::popcount(w);
    return d;
  }

  [[nodiscard]] std::size_t edge_count() const {
    std::size_t total = 0;
    for (Word w : rows_) total += std::popcount(w);
    return total / 2;
  }

  [[nodiscard]] std::size_t common_neighbor_count(Vertex u, Vertex v) const {
    return popcount_and(row(u), row(v));
  }

  [[nodiscard]] std::vector<Vertex> neighbors(Vertex u) const {
    std::vector<Vertex> out;
    for_each_bit(row(u), [&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
    return out;
  }

  [[nodiscard]] std::vector<std::array<Vertex, 2>> edges() const {
    std::vector<std::array<Vertex, 2>> out;
    for (Vertex u = 0; u < n_; ++u)
      for_each_bit(row(u), [&](std::size_t v) {
        if (v > u) out.push_back({u, static_cast<Vertex>(v)});
      });
    return out;
  }

  [[nodiscard]] std::span<const Word> raw_rows() const { return rows_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> rows_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) {
    require(n >= 1, "graph needs at least one vertex");
    g_.n_ = n;
    g_.words_ = words_for(n);
    g_.rows_.assign(n * g_.words_, 0);
  }

  [[nodiscard]] std::size_t n() const { return g_.n_; }

  void add_edge(Vertex u, Vertex v) {
    check(u, v);
    set_bit(row(u), v);
    set_bit(row(v), u);
  }

  void remove_edge(Vertex u, Vertex v) {
    check(u, v);
    clear_bit(row(u), v);
    clear_bit(row(v), u);
  }

  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return g_.adjacent(u, v); }
  [[nodiscard]] const Graph& peek() const { return g_; }

  [[nodiscard]] Graph build() && { return std::move(g_); }
  [[nodiscard]] Graph build() const& { return g_; }

 private:
  void check(Vertex u, Vertex v) const {
    require(u < g_.n_ && v < g_.n_, "vertex out of range");
    require(u != v, "self-loops are not representable");
  }
  std::span<Word> row(Vertex u) {
    return {g_.rows_.data() + static_cast<std::size_t>(u) * g_.words_, g_.words_};
  }
  Graph g_;
};

// Sorted, duplicate-free vertex subset with a membership bitmask over [0, n).
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::size_t n, std::vector<Vertex> members) : mask_(words_for(n), 0) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (Vertex v : members) {
      require(v < n, "vertex set member out of range");
      set_bit(mask_, v);
    }
    members_ = std::move(members);
  }

  static VertexSet all(std::size_t n) {
    std::vector<Vertex> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = static_cast<Vertex>(i);
    return VertexSet(n, std::move(members));
  }

  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] bool contains(Vertex v) const {
    return v / kWordBits < mask_.size() && test_bit(mask_, v);
  }
  [[nodiscard]] const std::vector<Vertex>& members() const { return members_; }
  [[nodiscard]] std::span<const Word> mask() const { return mask_; }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return members_[i]; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<Vertex> members_;
  std::vector<Word> mask_;
};

// Three distinct vertices, kept sorted ascending.
struct Triangle {
  std::array<Vertex, 3> v{};

  static Triangle of(Vertex a, Vertex b, Vertex c) {
    Triangle t{{a, b, c}};
    std::sort(t.v.begin(), t.v.end());
    return t;
  }

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

inline bool is_triangle(const Graph& g, const Triangle& t) {
  const auto [a, b, c] = t.v;
  if (a == b || b == c || a == c) return false;
  if (c >= g.n()) return false;
  return g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
}

// The counted edge oracle.
inline bool query(const Graph& g, QueryLedger& ledger, Vertex u, Vertex v) {
  require(u < g.n() && v < g.n(), "query vertex out of range");
  require(u != v, "query on a self pair");
  ledger.add_probes(1);
  return g.adjacent(u, v);
}

// Re-checks a candidate through the counted oracle before it is reported.
inline bool verify_triangle(const Graph& g, QueryLedger& ledger, const Triangle& t) {
  const auto [a, b, c] = t.v;
  if (a == b || b == c || a == c || c >= g.n()) return false;
  return query(g, ledger, a, b) && query(g, ledger, b, c) && query(g, ledger, a, c);
}

// Ground truth: lexicographically smallest triangle, uncharged.
inline std::optional<Triangle> brute_force_triangle(const Graph& g) {
  const auto n = static_cast<Vertex>(g.n());
  for (Vertex a = 0; a < n; ++a) {
    auto ra = g.row(a);
    for (std::size_t b = first_common_from(ra, ra, a + 1); b < n;
         b = first_common_from(ra, ra, b + 1)) {
      std::size_t c = first_common_from(ra, g.row(static_cast<Vertex>(b)), b + 1);
      if (c < n) return Triangle{{a, static_cast<Vertex>(b), static_cast<Vertex>(c)}};
    }
  }
  return std::nullopt;
}

inline std::size_t count_triangles(const Graph& g) {
  std::size_t count = 0;
  const auto n = static_cast<Vertex>(g.n());
  for (Vertex a = 0; a < n; ++a) {
    auto ra = g.row(a);
    for_each_bit(ra, [&](std::size_t b) {
      if (b <= a) return;
      for_each_common_bit(ra, g.row(static_cast<Vertex>(b)), [&](std::size_t c) {
        if (c > b) ++count;
      });
    });
  }
  return count;
}

inline Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

inline Graph empty_graph(std::size_t n) { return GraphBuilder(n).build(); }

}  // namespace trifind
