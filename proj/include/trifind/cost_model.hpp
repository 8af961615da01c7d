#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "trifind/errors.hpp"
#include "trifind/ledger.hpp"
#include "trifind/rng.hpp"

namespace trifind {

// Charged-cost convention. With log_factors off every formula is its bare
// polynomial form; with it on, each formula gains a ceil(ln base) multiplier
// (minimum 1) standing in for the hidden polylog.
struct CostConfig {
  bool log_factors = false;
  double leading_constant = 1.0;
};

inline void validate(const CostConfig& cfg) {
  require(std::isfinite(cfg.leading_constant) && cfg.leading_constant > 0.0,
          "leading_constant must be positive");
}

inline double log_multiplier(double base, const CostConfig& cfg) {
  if (!cfg.log_factors) return 1.0;
  return std::max(1.0, std::ceil(std::log(base)));
}

// Setup / update / check costs of a search on the Johnson graph J(T, r), with
// eps a lower bound on the marked fraction whenever a marked state exists.
struct WalkCharge {
  double setup = 0.0;
  double update = 0.0;
  double check = 0.0;
  std::uint64_t r = 1;
  double eps = 1.0;
  std::string domain;
};

inline void validate(const WalkCharge& w) {
  require(w.eps > 0.0 && w.eps <= 1.0, "walk eps must lie in (0, 1]");
  require(w.r >= 1, "walk subset size r must be positive");
  require(w.setup >= 0.0 && w.update >= 0.0 && w.check >= 0.0,
          "walk costs must be nonnegative");
}

// Grover search over m items at t queries per evaluation: c * t * sqrt(m).
inline double grover_cost(double m, double t, const CostConfig& cfg = {}) {
  validate(cfg);
  require(m >= 1.0, "grover_cost: domain must be nonempty");
  require(t >= 0.0, "grover_cost: per-evaluation cost must be nonnegative");
  return cfg.leading_constant * t * std::sqrt(m) * log_multiplier(m, cfg);
}

// Variable-cost search: c * sqrt(sum t_s^2). Scaled by the largest entry so that
// m equal entries give exactly t * sqrt(m).
inline double variable_search_cost(std::span<const double> costs, const CostConfig& cfg = {}) {
  validate(cfg);
  require(!costs.empty(), "variable_search_cost: cost list must be nonempty");
  double peak = 0.0;
  for (double t : costs) {
    require(t >= 0.0 && std::isfinite(t), "variable_search_cost: costs must be nonnegative");
    peak = std::max(peak, t);
  }
  double norm = 0.0;
  if (peak > 0.0) {
    double sum = 0.0;
    for (double t : costs) {
      const double x = t / peak;
      sum += x * x;
    }
    norm = peak * std::sqrt(sum);
  }
  return cfg.leading_constant * norm * log_multiplier(static_cast<double>(costs.size()), cfg);
}

// The three additive parts of a Johnson-walk cost, each already scaled.
struct WalkTerms {
  double setup = 0.0;
  double update = 0.0;
  double check = 0.0;
  [[nodiscard]] double sum() const { return setup + update + check; }
};

inline WalkTerms walk_terms(const WalkCharge& w, const CostConfig& cfg = {}) {
  validate(cfg);
  validate(w);
  const double scale = cfg.leading_constant * log_multiplier(static_cast<double>(w.r), cfg);
  const double inv_sqrt_eps = 1.0 / std::sqrt(w.eps);
  return {scale * w.setup,
          scale * inv_sqrt_eps * std::sqrt(static_cast<double>(w.r)) * w.update,
          scale * inv_sqrt_eps * w.check};
}

// S + (1/sqrt(eps)) (sqrt(r) U + C), times the configured constant.
inline double walk_cost(const WalkCharge& w, const CostConfig& cfg = {}) {
  validate(cfg);
  validate(w);
  const double body =
      w.setup + (std::sqrt(static_cast<double>(w.r)) * w.update + w.check) / std::sqrt(w.eps);
  return cfg.leading_constant * log_multiplier(static_cast<double>(w.r), cfg) * body;
}

// Opt-in suppression of a positive answer, modelling bounded-error subroutines.
struct FailureInjection {
  double failure_probability = 0.0;
  std::uint64_t seed = 0;
};

inline bool injected_failure(const std::optional<FailureInjection>& injection) {
  if (!injection || injection->failure_probability <= 0.0) return false;
  require(injection->failure_probability <= 1.0, "failure probability must be at most 1");
  Rng rng = make_rng(injection->seed);
  return std::bernoulli_distribution(injection->failure_probability)(rng);
}

// Charges a Grover search over m items and returns whatever the exact classical
// finder reports. The finder's own work is never charged.
template <class Finder>
auto charged_search(double m, double t, Finder&& finder, QueryLedger& ledger,
                    std::string_view phase, const CostConfig& cfg = {}) {
  ledger.charge(phase, grover_cost(m, t, cfg));
  return finder();
}

// Emulated Grover over an explicit domain: the smallest satisfying item, or none.
template <class Item, class Predicate>
std::optional<Item> charged_grover(std::span<const Item> domain, Predicate&& predicate,
                                   double t_per_eval, QueryLedger& ledger,
                                   std::string_view phase, const CostConfig& cfg = {}) {
  require(!domain.empty(), "charged_grover: domain must be nonempty");
  return charged_search(
      static_cast<double>(domain.size()), t_per_eval,
      [&]() -> std::optional<Item> {
        std::optional<Item> best;
        for (const Item& item : domain)
          if ((!best || item < *best) && predicate(item)) best = item;
        return best;
      },
      ledger, phase, cfg);
}

// Emulated Johnson-walk decision: charges walk_cost(w) and returns the witness
// when a marked state exists (unless an injected failure suppresses it).
template <class Payload>
std::optional<Payload> charged_walk_decide(const WalkCharge& w, bool marked_exists,
                                           std::optional<Payload> witness, QueryLedger& ledger,
                                           std::string_view phase, const CostConfig& cfg = {},
                                           const std::optional<FailureInjection>& injection = {}) {
  require(!marked_exists || witness.has_value(),
          "charged_walk_decide: a marked state needs a witness");
  ledger.charge(phase, walk_cost(w, cfg));
  if (!marked_exists) return std::nullopt;
  if (injected_failure(injection)) return std::nullopt;
  return witness;
}

}  // namespace trifind
