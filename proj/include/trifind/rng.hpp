#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace trifind {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, used to turn stream labels into seed material.
inline constexpr std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Child seed for an independent stream: derive_seed(trial_seed, {index, ...}).
inline constexpr std::uint64_t derive_seed(std::uint64_t base,
                                           std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                                           std::uint64_t index = 0) {
  return derive_seed(base, {label_hash(label), index});
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace trifind
