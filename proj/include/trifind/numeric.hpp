#pragma once

#include <cmath>
#include <cstdint>

namespace trifind {

// ceil() that treats values within a few ulps of an integer as that integer,
// so ceil(256^0.75) is 64 rather than 65.
inline std::uint64_t ceil_snap(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)))
    return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

// ceil(n^e)
inline std::uint64_t ceil_pow(double n, double e) { return ceil_snap(std::pow(n, e)); }

inline constexpr std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline constexpr std::uint64_t choose3(std::uint64_t n) {
  return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3;
}

}  // namespace trifind
