#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trifind/errors.hpp"

namespace trifind {

// Standard deviation units used for every probability verdict.
inline constexpr double kSigmaSlack = 5.0;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval at z standard deviations.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  require(trials > 0, "wilson_interval: need at least one trial");
  require(successes <= trials, "wilson_interval: successes exceed trials");
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// Binomial standard error of a frequency with true probability `bound`.
inline double binomial_sigma(double bound, std::uint64_t trials) {
  require(trials > 0, "binomial_sigma: need at least one trial");
  return std::sqrt(std::max(0.0, bound * (1.0 - bound)) / static_cast<double>(trials));
}

// Pass line for "frequency >= bound" with kSigmaSlack sampling tolerance.
inline double pass_line(double bound, std::uint64_t trials) {
  return bound - kSigmaSlack * binomial_sigma(bound, trials);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope x + intercept.
inline LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), "least_squares: length mismatch");
  require(xs.size() >= 2, "least_squares: need at least two points");
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  require(sxx > 0.0, "least_squares: need at least two distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

inline MeanStd mean_std(std::span<const double> values) {
  require(!values.empty(), "mean_std: empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

}  // namespace trifind
