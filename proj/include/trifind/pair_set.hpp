#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "trifind/errors.hpp"
#include "trifind/graph.hpp"
#include "trifind/numeric.hpp"

namespace trifind {

// Unordered vertex pair stored with lo < hi.
struct VertexPair {
  Vertex lo = 0;
  Vertex hi = 0;

  static VertexPair of(Vertex a, Vertex b) {
    require(a != b, "a vertex pair needs distinct endpoints");
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
  }

  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

// Canonically ordered, duplicate-free set of vertex pairs.
class PairSet {
 public:
  PairSet() = default;

  static PairSet from_unsorted(std::vector<VertexPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return from_sorted(std::move(pairs));
  }

  // Caller guarantees strictly increasing order.
  static PairSet from_sorted(std::vector<VertexPair> pairs) {
    PairSet s;
    s.pairs_ = std::move(pairs);
    return s;
  }

  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] bool empty() const { return pairs_.empty(); }
  [[nodiscard]] bool contains(VertexPair p) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
  }
  [[nodiscard]] const std::vector<VertexPair>& pairs() const { return pairs_; }

  [[nodiscard]] bool is_subset_of(const PairSet& other) const {
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
  }

  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::vector<VertexPair> pairs_;
};

// All pairs of a vertex set, in lexicographic order.
inline PairSet all_pairs(const VertexSet& y) {
  std::vector<VertexPair> out;
  out.reserve(choose2(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) out.push_back({y[i], y[j]});
  return PairSet::from_sorted(std::move(out));
}

// Enumeration of the pairs of a fixed vertex set A by member positions:
// pair (i, j), i < j, has index j (j - 1) / 2 + i. Supports O(1) uniform
// pair draws and a membership mask for any subset of those pairs.
class LocalPairIndex {
 public:
  LocalPairIndex(std::size_t n, const VertexSet& a)
      : members_(a.members()), position_(n, kAbsent) {
    for (std::size_t i = 0; i < members_.size(); ++i) position_[members_[i]] = i;
  }

  [[nodiscard]] std::size_t set_size() const { return members_.size(); }
  [[nodiscard]] std::uint64_t pair_count() const { return choose2(members_.size()); }

  static constexpr std::uint64_t index_of_positions(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::uint64_t>(j) * (j - 1) / 2 + i;
  }

  [[nodiscard]] bool covers(VertexPair p) const {
    return p.hi < position_.size() && position_[p.lo] != kAbsent &&
           position_[p.hi] != kAbsent;
  }

  [[nodiscard]] std::uint64_t index_of(VertexPair p) const {
    require(covers(p), "pair is not inside the indexed set");
    return index_of_positions(position_[p.lo], position_[p.hi]);
  }

  [[nodiscard]] Vertex member(std::size_t i) const { return members_[i]; }

  // Uniform draw over unordered pairs of positions.
  template <class Gen>
  std::pair<std::size_t, std::size_t> draw_positions(Gen& rng) const {
    const std::size_t s = members_.size();
    std::uniform_int_distribution<std::size_t> first(0, s - 1);
    std::uniform_int_distribution<std::size_t> second(0, s - 2);
    std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    return {i, j};
  }

  [[nodiscard]] std::vector<Word> mask_of(const PairSet& subset) const {
    std::vector<Word> mask(words_for(pair_count()), 0);
    for (VertexPair p : subset) set_bit(mask, index_of(p));
    return mask;
  }

 private:
  static constexpr std::size_t kAbsent = SIZE_MAX;
  std::vector<Vertex> members_;
  std::vector<std::size_t> position_;
};

}  // namespace trifind
