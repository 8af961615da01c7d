#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "trifind/baselines.hpp"
#include "trifind/combinatorics.hpp"
#include "trifind/estimator.hpp"
#include "trifind/family.hpp"
#include "trifind/lg_algorithm.hpp"
#include "trifind/numeric.hpp"
#include "trifind/parallel.hpp"
#include "trifind/report.hpp"
#include "trifind/rng.hpp"
#include "trifind/stats.hpp"

namespace trifind {

// Seeds of trial `index`: stream 1 builds the graph, stream 2 draws X, and so on.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  return derive_seed(seed, {index, stream});
}

// ---------------------------------------------------------------------------
// k-good sampling: frequency of the pointwise common-neighbour bound over X.

inline CampaignReport mc_lemma2(std::size_t n, double k, std::uint64_t trials,
                                const Family& family, std::uint64_t seed,
                                std::size_t workers = default_workers()) {
  require(trials >= 1, "mc_lemma2: need at least one trial");
  require(n >= 2, "mc_lemma2: n must be at least 2");
  std::vector<char> ok(trials, 0);
  std::vector<std::uint64_t> x_sizes(trials, 0);
  parallel_for(trials, workers, [&](std::size_t i) {
    const Graph g = make_graph(family, n, trial_seed(seed, i, 1));
    const VertexSet x = sample_X(n, k, trial_seed(seed, i, 2));
    x_sizes[i] = x.size();
    ok[i] = check_kgood_pointwise(g, x, k) ? 1 : 0;
  });

  CampaignReport rep;
  rep.campaign = "lemma2";
  rep.config = Json{{"n", n}, {"k", k}, {"trials", trials}, {"family", family.name()},
                    {"seed", seed}};
  Aggregate agg{"kgood_pointwise", 1.0 - 1.0 / static_cast<double>(n), {}};
  for (char c : ok) agg.record(c != 0);
  rep.aggregates.push_back(std::move(agg));
  double mean_x = 0.0;
  for (auto s : x_sizes) mean_x += static_cast<double>(s);
  rep.details = Json{{"x_draws", sample_x_draws(n, k)},
                     {"mean_x_size", mean_x / static_cast<double>(trials)},
                     {"common_neighbour_limit", std::pow(static_cast<double>(n), 1.0 - k)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Estimator accuracy: all apexes simultaneously inside the guaranteed range.

inline CampaignReport mc_lemma3(std::size_t n, double a, double k, std::uint64_t trials,
                                const Family& family, std::uint64_t seed,
                                std::optional<std::uint64_t> m_override = std::nullopt,
                                std::size_t workers = default_workers()) {
  require(trials >= 1, "mc_lemma3: need at least one trial");
  require(n >= 4, "mc_lemma3: n must be at least 4");
  const Sizes s = derive_sizes(n, a, k);
  const std::uint64_t m = m_override.value_or(s.m);
  require(m >= 1, "mc_lemma3: m must be positive");
  require(s.size_a >= 2, "mc_lemma3: |A| must be at least 2");

  struct Trial {
    bool ok = false;
    std::uint64_t delta_a = 0;
    std::uint64_t second_stage = 0;
    std::uint64_t nonempty_apexes = 0;
    std::uint64_t failing_apexes = 0;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    const Graph g = make_graph(family, n, trial_seed(seed, i, 1));
    const VertexSet x = sample_X(n, k, trial_seed(seed, i, 2));
    Rng rng = make_rng(trial_seed(seed, i, 3));
    const VertexSet set_a = random_subset(n, s.size_a, rng);
    const PairSet delta_a = delta_Y(g, x, set_a);
    const auto truth = apex_delta_sizes(g, delta_a);
    const DeltaIndex index(g, set_a, delta_a);
    const std::uint64_t string_seed = trial_seed(seed, i, 4);
    Trial t;
    t.delta_a = delta_a.size();
    QueryLedger scratch;
    for (Vertex w = 0; w < n; ++w) {
      const auto run =
          estimate_delta_size(g, index, m, w, apex_stream(string_seed, w), scratch);
      if (run.second_stage) ++t.second_stage;
      if (truth[w] > 0) ++t.nonempty_apexes;
      if (!estimate_within_bounds(run.output, truth[w], set_a.size(), m)) ++t.failing_apexes;
    }
    t.ok = t.failing_apexes == 0;
    results[i] = t;
  });

  CampaignReport rep;
  rep.campaign = "lemma3";
  rep.config = Json{{"n", n}, {"a", a}, {"k", k}, {"m", m}, {"size_a", s.size_a},
                    {"trials", trials}, {"family", family.name()}, {"seed", seed}};
  Aggregate agg{"all_apexes_within_bounds", 1.0 - 3.0 / static_cast<double>(n), {}};
  double delta_sum = 0.0, second = 0.0, nonempty = 0.0;
  for (const auto& t : results) {
    agg.record(t.ok);
    delta_sum += static_cast<double>(t.delta_a);
    second += static_cast<double>(t.second_stage);
    nonempty += static_cast<double>(t.nonempty_apexes);
  }
  rep.aggregates.push_back(std::move(agg));
  const double td = static_cast<double>(trials);
  rep.details = Json{{"mean_delta_a", delta_sum / td},
                     {"mean_second_stage_apexes", second / td},
                     {"mean_nonempty_apexes", nonempty / td},
                     {"rounds", estimator_rounds(n)},
                     {"second_draws", estimator_second_draws(n, m)}};
  return rep;
}

// ---------------------------------------------------------------------------
// Size-cap lemma: Pr[pair inside random r-subset B and |Delta(B,w)| capped].

struct Lemma4Config {
  std::string name;
  Family family = Family::er(0.5);
  bool sample_x = true;  // false: X is empty, so Delta_X(A) is all of E(A)
  double k = 0.5;
};

inline std::vector<Lemma4Config> default_lemma4_configs() {
  return {{"dense_empty_x", Family::er(0.5), false, 0.5},
          {"sparse_sampled_x", Family::er(0.1), true, 0.5},
          {"dense_sampled_x", Family::er(0.5), true, 0.5}};
}

inline CampaignReport mc_lemma4(std::uint64_t size_a, std::uint64_t r, std::uint64_t trials,
                                const std::vector<Lemma4Config>& configs, std::uint64_t seed,
                                std::size_t workers = default_workers()) {
  require(size_a > 3, "mc_lemma4: |A| must exceed 3");
  require(r > 3 && r <= size_a, "mc_lemma4: need 3 < r <= |A|");
  require(trials >= 1, "mc_lemma4: need at least one trial");
  require(!configs.empty(), "mc_lemma4: need at least one configuration");
  const std::size_t n = 2 * size_a;
  const double bound = lemma4_bound(r, size_a);

  CampaignReport rep;
  rep.campaign = "lemma4";
  Json cfg_names = Json::array();
  for (const auto& c : configs) cfg_names.push_back(c.name);
  rep.config = Json{{"size_a", size_a}, {"r", r},         {"trials", trials},
                    {"n", n},           {"seed", seed},   {"configs", cfg_names}};
  rep.details = Json::object();
  rep.aggregates.resize(configs.size());

  parallel_for(configs.size(), workers, [&](std::size_t ci) {
    const Lemma4Config& c = configs[ci];
    const Graph g = make_graph(c.family, n, derive_seed(seed, {ci, 1}));
    const VertexSet x = c.sample_x ? sample_X(n, c.k, derive_seed(seed, {ci, 2}))
                                   : VertexSet(n, {});
    Rng rng = make_rng(derive_seed(seed, {ci, 3}));
    const VertexSet set_a = random_subset(n, size_a, rng);
    const PairSet delta_a = delta_Y(g, x, set_a);
    const auto sizes = apex_delta_sizes(g, delta_a);
    const Vertex w = static_cast<Vertex>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    const PairSet delta_aw = restrict_to_apex(g, delta_a, w);
    const VertexPair target = delta_aw.empty() ? VertexPair{set_a[0], set_a[1]}
                                               : delta_aw.pairs().front();
    const double cap = lemma4_threshold(r, size_a, static_cast<double>(delta_aw.size()));

    const LocalPairIndex index(n, set_a);
    const auto mask = index.mask_of(delta_aw);
    std::size_t target_i = 0, target_j = 0;
    for (std::size_t i = 0; i < set_a.size(); ++i) {
      if (set_a[i] == target.lo) target_i = i;
      if (set_a[i] == target.hi) target_j = i;
    }

    std::vector<std::size_t> positions(set_a.size());
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    std::vector<char> in_b(set_a.size(), 0);
    Aggregate agg{c.name, bound, {}};
    agg.outcomes.reserve(trials);
    std::uint64_t cond_i = 0, cond_ii = 0;
    Rng sampler = make_rng(derive_seed(seed, {ci, 4}));
    for (std::uint64_t t = 0; t < trials; ++t) {
      for (std::size_t i = 0; i < r; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, positions.size() - 1);
        std::swap(positions[i], positions[pick(sampler)]);
        in_b[positions[i]] = 1;
      }
      const bool contains_pair = in_b[target_i] && in_b[target_j];
      std::uint64_t delta_bw = 0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
          if (test_bit(mask, LocalPairIndex::index_of_positions(positions[i], positions[j])))
            ++delta_bw;
      const bool capped = static_cast<double>(delta_bw) <= cap;
      cond_i += contains_pair;
      cond_ii += capped;
      agg.record(contains_pair && capped);
      for (std::size_t i = 0; i < r; ++i) in_b[positions[i]] = 0;
    }
    rep.aggregates[ci] = std::move(agg);
    const double td = static_cast<double>(trials);
    const double sa = static_cast<double>(size_a);
    const double rd = static_cast<double>(r);
    rep.details[c.name] = Json{{"apex", w},
                               {"delta_aw", delta_aw.size()},
                               {"delta_a", delta_a.size()},
                               {"x_size", x.size()},
                               {"cap", cap},
                               {"pair", {target.lo, target.hi}},
                               {"freq_condition_i", static_cast<double>(cond_i) / td},
                               {"freq_condition_ii", static_cast<double>(cond_ii) / td},
                               {"exact_inclusion", rd * (rd - 1.0) / (sa * (sa - 1.0))}};
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Agreement with brute force, detection under injected failures.

struct CaseGroup {
  Family family;
  std::size_t n_lo = 10;
  std::size_t n_hi = 64;
  std::uint64_t count = 0;
};

struct CorrectnessConfig {
  std::vector<CaseGroup> groups;
  AlgoParams params;  // params.seed is replaced per case
  std::uint64_t seed = 0;
};

// Mixed small instances with the size guard relaxed, plus large planted ones.
inline CorrectnessConfig default_correctness_config(std::size_t max_n, std::uint64_t cases,
                                                    std::uint64_t large_planted,
                                                    std::uint64_t seed) {
  CorrectnessConfig cfg;
  cfg.seed = seed;
  cfg.params.n_min_guard = 0;
  const std::vector<Family> families = {Family::er(0.1), Family::er(0.5), Family::er(0.9),
                                        Family::bipartite(), Family::planted()};
  const std::uint64_t per = cases / families.size();
  for (std::size_t f = 0; f < families.size(); ++f) {
    const std::uint64_t count = per + (f < cases % families.size() ? 1 : 0);
    cfg.groups.push_back({families[f], 10, std::max<std::size_t>(10, max_n), count});
  }
  if (large_planted) cfg.groups.push_back({Family::planted(), 512, 512, large_planted});
  return cfg;
}

inline CorrectnessConfig detection_config(std::size_t n, std::uint64_t positives,
                                          std::uint64_t negatives, std::uint64_t seed) {
  CorrectnessConfig cfg;
  cfg.seed = seed;
  cfg.params.injection = InjectionParams{};
  cfg.groups.push_back({Family::planted(), n, n, positives});
  if (negatives) cfg.groups.push_back({Family::bipartite(), n, n, negatives});
  return cfg;
}

inline CampaignReport correctness_suite(const CorrectnessConfig& cfg,
                                        std::size_t workers = default_workers()) {
  struct Case {
    Family family;
    std::size_t n;
  };
  std::vector<Case> cases;
  Rng size_rng = make_rng(derive_seed(cfg.seed, "sizes"));
  for (const auto& g : cfg.groups) {
    require(g.n_lo <= g.n_hi, "correctness: empty size range");
    std::uniform_int_distribution<std::size_t> pick(g.n_lo, g.n_hi);
    for (std::uint64_t i = 0; i < g.count; ++i) cases.push_back({g.family, pick(size_rng)});
  }
  require(!cases.empty(), "correctness: no cases configured");

  struct Result {
    bool truth = false;
    bool found = false;
    bool verified = true;
    bool walk = false;
    bool budget = false;
  };
  std::vector<Result> results(cases.size());
  parallel_for(cases.size(), workers, [&](std::size_t i) {
    const Graph g = make_graph(cases[i].family, cases[i].n, trial_seed(cfg.seed, i, 1));
    AlgoParams p = cfg.params;
    p.seed = trial_seed(cfg.seed, i, 2);
    const RunReport rep = find_triangle(g, p);
    Result r;
    r.truth = brute_force_triangle(g).has_value();
    r.found = rep.outcome.has_value();
    r.verified = !rep.outcome || is_triangle(g, *rep.outcome);
    r.walk = rep.trace.found_in == "walk";
    r.budget = rep.budget_exceeded;
    results[i] = r;
  });

  CampaignReport rep;
  rep.campaign = "correctness";
  Json groups = Json::array();
  for (const auto& g : cfg.groups)
    groups.push_back(Json{{"family", g.family.name()}, {"n_lo", g.n_lo}, {"n_hi", g.n_hi},
                          {"count", g.count}});
  rep.config = Json{{"seed", cfg.seed}, {"groups", groups}, {"params", to_json(cfg.params)}};

  const bool injected = cfg.params.injection.has_value();
  Aggregate verified{"verified_outputs", 1.0, {}};
  Aggregate agreement{"agreement", 1.0, {}};
  Aggregate detection{"detection", 2.0 / 3.0, {}};
  Aggregate no_false_positive{"no_false_positive", 1.0, {}};
  std::uint64_t walk_found = 0, budget_hits = 0, positives = 0;
  for (const auto& r : results) {
    verified.record(r.verified);
    if (!injected) agreement.record(r.truth == r.found);
    if (r.truth) {
      ++positives;
      if (injected) detection.record(r.found);
    } else {
      no_false_positive.record(!r.found);
    }
    walk_found += r.walk;
    budget_hits += r.budget;
  }
  rep.aggregates.push_back(std::move(verified));
  if (!injected) rep.aggregates.push_back(std::move(agreement));
  if (injected && detection.trials()) rep.aggregates.push_back(std::move(detection));
  if (no_false_positive.trials()) rep.aggregates.push_back(std::move(no_false_positive));
  rep.details = Json{{"cases", cases.size()},
                     {"positives", positives},
                     {"found_by_walk", walk_found},
                     {"budget_stops", budget_hits}};
  return rep;
}

// ---------------------------------------------------------------------------
// Scaling: least-squares slope of log(mean charged total) against log n.

enum class Algorithm { kLeGall, kNaive, kBuhrman };

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "legall") return Algorithm::kLeGall;
  if (s == "naive") return Algorithm::kNaive;
  if (s == "buhrman") return Algorithm::kBuhrman;
  throw ContractViolation("unknown algorithm '" + s + "'");
}

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLeGall: return "legall";
    case Algorithm::kNaive: return "naive";
    case Algorithm::kBuhrman: return "buhrman";
  }
  return "unknown";
}

// Default acceptance bands for the fitted exponent; none for the Buhrman baseline.
inline std::optional<Interval> default_slope_band(Algorithm a) {
  switch (a) {
    case Algorithm::kLeGall: return Interval{1.20, 1.35};
    case Algorithm::kNaive: return Interval{1.49, 1.51};
    case Algorithm::kBuhrman: return std::nullopt;
  }
  return std::nullopt;
}

inline RunReport run_algorithm(Algorithm algo, const Graph& g, const AlgoParams& p) {
  switch (algo) {
    case Algorithm::kLeGall: return find_triangle(g, p);
    case Algorithm::kNaive: return naive_grover_baseline(g, p.cost);
    case Algorithm::kBuhrman: return buhrman_baseline(g, p.cost);
  }
  throw ContractViolation("unknown algorithm");
}

inline FitResult scaling_fit(const std::vector<std::size_t>& grid, Algorithm algo,
                             std::uint64_t trials_per_n, const Family& family,
                             const AlgoParams& params, std::uint64_t seed,
                             std::size_t workers = default_workers()) {
  require(grid.size() >= 3, "scaling_fit: need at least three grid points");
  require(trials_per_n >= 1, "scaling_fit: need at least one trial per point");
  for (std::size_t n : grid) {
    require(n >= 3, "scaling_fit: grid sizes must be at least 3");
    if (algo == Algorithm::kLeGall)
      require(n >= params.n_min_guard, "scaling_fit: grid size below the guard");
  }

  const std::size_t total = grid.size() * trials_per_n;
  std::vector<double> charges(total, 0.0);
  std::vector<char> found(total, 0);
  parallel_for(total, workers, [&](std::size_t idx) {
    const std::size_t gi = idx / trials_per_n;
    const std::size_t t = idx % trials_per_n;
    const std::size_t n = grid[gi];
    const Graph g = make_graph(family, n, derive_seed(seed, {n, t, 1}));
    AlgoParams p = params;
    p.seed = derive_seed(seed, {n, t, 2});
    const RunReport rep = run_algorithm(algo, g, p);
    charges[idx] = rep.total_charge();
    found[idx] = rep.outcome.has_value();
  });

  FitResult fit;
  fit.algorithm = algorithm_name(algo);
  fit.family = family.name();
  fit.band = default_slope_band(algo);
  std::vector<double> xs, ys;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    std::span<const double> sample(charges.data() + gi * trials_per_n, trials_per_n);
    const MeanStd ms = mean_std(sample);
    FitPoint pt{grid[gi], ms.mean, ms.stddev, trials_per_n, 0};
    for (std::size_t t = 0; t < trials_per_n; ++t) pt.found += found[gi * trials_per_n + t];
    fit.points.push_back(pt);
    xs.push_back(std::log(static_cast<double>(grid[gi])));
    ys.push_back(std::log(ms.mean));
  }
  const LineFit line = least_squares(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  return fit;
}

inline std::vector<std::size_t> default_scaling_grid() { return {128, 256, 512, 1024, 2048}; }

}  // namespace trifind
