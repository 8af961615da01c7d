#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trifind/combinatorics.hpp"
#include "trifind/cost_model.hpp"
#include "trifind/errors.hpp"
#include "trifind/estimator.hpp"
#include "trifind/graph.hpp"
#include "trifind/ledger.hpp"
#include "trifind/numeric.hpp"
#include "trifind/pair_set.hpp"
#include "trifind/rng.hpp"

namespace trifind {

namespace phase {
inline constexpr std::string_view kPhase1 = "phase1_X";
inline constexpr std::string_view kOuterSetup = "outer_setup";
inline constexpr std::string_view kOuterUpdate = "outer_update";
inline constexpr std::string_view kOuterCheck = "outer_check";
inline constexpr std::string_view kInnerWalk = "inner_walk";
inline constexpr std::string_view kFinalGrover = "final_grover";
inline constexpr std::string_view kExtraction = "extraction";
inline constexpr std::string_view kCheck = "check";
inline constexpr std::string_view kNaive = "naive_grover";
inline constexpr std::string_view kBuhrman = "buhrman";

inline constexpr std::string_view kPipeline[] = {kPhase1,    kOuterSetup,  kOuterUpdate,
                                                 kOuterCheck, kInnerWalk,  kFinalGrover,
                                                 kExtraction};
}  // namespace phase

// Success probabilities of the bounded-error subroutines when injection is on.
struct InjectionParams {
  double walk_success = 0.75;
  double check_success = 2.0 / 3.0;
  double search_success = 1.0;
};

struct AlgoParams {
  double a = 0.75;
  double k = 0.5;
  CostConfig cost;
  EstimatorConfig estimator;
  std::optional<InjectionParams> injection;
  std::uint64_t seed = 0;
  std::size_t n_min_guard = 64;
  // Stop and report "no triangle" once the charged total passes
  // budget_multiplier * budget_envelope(...).
  bool budget_stop = true;
  double budget_multiplier = 10.0;
};

inline void validate(const AlgoParams& p) {
  require(p.a > 0.0 && p.a < 1.0, "parameter a must lie in (0, 1)");
  require(p.k > 0.0 && p.k < 1.0, "parameter k must lie in (0, 1)");
  require(p.budget_multiplier > 0.0, "budget multiplier must be positive");
  validate(p.cost);
  if (p.injection) {
    for (double s : {p.injection->walk_success, p.injection->check_success,
                     p.injection->search_success})
      require(s >= 0.0 && s <= 1.0, "success probabilities must lie in [0, 1]");
  }
}

// Set sizes fixed by (n, a, k): |A| = ceil(n^a), r = ceil(n^(2a/3)), m = ceil(n^k).
struct Sizes {
  std::size_t n = 0;
  std::uint64_t size_a = 0;
  std::uint64_t r_inner = 0;
  std::uint64_t m = 0;
};

inline Sizes derive_sizes(std::size_t n, double a, double k) {
  const double nd = static_cast<double>(n);
  return {n, std::min<std::uint64_t>(ceil_pow(nd, a), n), ceil_pow(nd, 2.0 * a / 3.0),
          ceil_pow(nd, k)};
}

// Throws UnsupportedSize when n is below the guard or the inner walk would be
// degenerate (the size-cap lemma needs 3 < r <= |A|).
inline Sizes supported_sizes(std::size_t n, const AlgoParams& p) {
  validate(p);
  if (n < p.n_min_guard)
    throw UnsupportedSize("n = " + std::to_string(n) + " is below the guard " +
                          std::to_string(p.n_min_guard));
  const Sizes s = derive_sizes(n, p.a, p.k);
  if (s.size_a <= 3 || s.r_inner <= 3 || s.r_inner > s.size_a)
    throw UnsupportedSize("n = " + std::to_string(n) +
                          " gives inner walk size " + std::to_string(s.r_inner) +
                          " and |A| = " + std::to_string(s.size_a) + "; need 3 < r <= |A|");
  return s;
}

// Closed-form query bound of the whole pipeline at (a, k), times ln(n) per
// hidden polylog level (one level with log factors off, four with them on).
inline double budget_envelope(std::size_t n, const AlgoParams& p) {
  const double nd = static_cast<double>(n);
  const double a = p.a;
  const double k = p.k;
  const double bound = std::pow(nd, 1.0 + k / 2.0) + std::pow(nd, 0.5 + a) +
                       std::pow(nd, a + k) + std::pow(nd, 1.0 - a / 2.0 + k) +
                       std::pow(nd, 1.5) * (std::pow(nd, k - a) + std::pow(nd, -a / 3.0) +
                                            std::pow(nd, -k / 2.0));
  const double polylog = std::pow(std::max(1.0, std::log(nd)), p.cost.log_factors ? 4.0 : 1.0);
  return p.budget_multiplier * p.cost.leading_constant * polylog * bound;
}

// Per-apex checking costs Q(w) = estimator charge + inner-walk charge.
struct CheckCharge {
  std::vector<double> q;
  std::vector<double> estimator;
  std::vector<double> inner_walk;
  std::vector<double> estimates;
  double total = 0.0;

  // Fraction of the total attributable to the estimator terms. Since
  // sum q^2 = sum (est + inner) q this splits the total additively.
  [[nodiscard]] double estimator_share() const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      num += estimator[i] * q[i];
      den += q[i] * q[i];
    }
    return den > 0.0 ? num / den : 0.0;
  }
};

struct ApexWitness {
  Vertex w = 0;
  VertexPair pair;
  friend bool operator==(const ApexWitness&, const ApexWitness&) = default;
};

struct CheckOutcome {
  std::optional<ApexWitness> witness;
  CheckCharge charge;
  std::uint64_t r_inner = 0;
  double eps_inner = 0.0;
  std::uint64_t m = 0;
};

// The inner Johnson walk over r-subsets B of A for one apex: setup reads e_v
// for v in B, updates swap one vertex (2 queries), checking is a Grover search
// over Delta(B, w) capped by the estimated size.
inline WalkCharge inner_walk_charge(std::uint64_t r, std::uint64_t size_a, double estimate) {
  WalkCharge w;
  w.setup = static_cast<double>(r);
  w.update = 2.0;
  w.check = std::sqrt(lemma4_threshold_estimated(r, size_a, estimate));
  w.r = r;
  w.eps = lemma4_bound(r, size_a);
  w.domain = "J(A,r)";
  return w;
}

// Computes the checking charge and the exact answer for a given A without
// touching any charged phase. Probes are added to `probes` when given.
inline CheckOutcome evaluate_check_A(const Graph& g, const VertexSet& x, const VertexSet& a,
                                     const PairSet& delta_a, const AlgoParams& p,
                                     std::uint64_t string_seed, QueryLedger* probes = nullptr) {
  (void)x;  // Delta_X(A) already encodes X.
  const Sizes s = derive_sizes(g.n(), p.a, p.k);
  require(a.size() > 3, "check_A: |A| must exceed 3");
  const std::uint64_t r = std::min<std::uint64_t>(s.r_inner, a.size());
  require(r > 3, "check_A: inner walk size must exceed 3");

  CheckOutcome out;
  out.r_inner = r;
  out.m = s.m;
  out.eps_inner = lemma4_bound(r, a.size());

  const DeltaIndex index(g, a, delta_a);
  const std::size_t n = g.n();
  auto& c = out.charge;
  c.q.resize(n);
  c.estimator.resize(n);
  c.inner_walk.resize(n);
  c.estimates.resize(n);
  QueryLedger scratch;
  for (Vertex w = 0; w < n; ++w) {
    const EstimatorRun run = estimate_delta_size(g, index, s.m, w, apex_stream(string_seed, w),
                                                 scratch, phase::kCheck, p.estimator);
    c.estimates[w] = run.output;
    c.estimator[w] = estimator_charge(n, s.m, p.estimator);
    c.inner_walk[w] = walk_cost(inner_walk_charge(r, a.size(), run.output), p.cost);
    c.q[w] = c.estimator[w] + c.inner_walk[w];
  }
  c.total = variable_search_cost(c.q, p.cost);
  if (probes) probes->add_probes(scratch.raw_probes());

  // Emulation: the smallest apex w, then the smallest pair, with the pair an edge.
  for (VertexPair pr : delta_a) {
    if (!g.adjacent(pr.lo, pr.hi)) continue;
    const std::size_t w = first_common_from(g.row(pr.lo), g.row(pr.hi), 0);
    if (w >= n) continue;
    const ApexWitness cand{static_cast<Vertex>(w), pr};
    if (!out.witness || cand.w < out.witness->w ||
        (cand.w == out.witness->w && cand.pair < out.witness->pair))
      out.witness = cand;
  }
  return out;
}

// Checks whether Delta_X(A) holds an edge of a triangle; charges the
// variable-cost dispatch over apexes under `phase_label`.
inline CheckOutcome check_A(const Graph& g, const VertexSet& x, const VertexSet& a,
                            const PairSet& delta_a, const AlgoParams& p, QueryLedger& ledger,
                            std::uint64_t string_seed,
                            std::string_view phase_label = phase::kCheck) {
  validate(p);
  const Sizes s = derive_sizes(g.n(), p.a, p.k);
  require(a.size() == s.size_a, "check_A: |A| must equal ceil(n^a)");
  CheckOutcome out = evaluate_check_A(g, x, a, delta_a, p, string_seed, &ledger);
  ledger.charge(phase_label, out.charge.total);
  if (out.witness && p.injection &&
      injected_failure(FailureInjection{1.0 - p.injection->check_success,
                                        derive_seed(string_seed, "check_injection")}))
    out.witness.reset();
  return out;
}

// Phase 1: Grover over X x E(V) for a triangle through a vertex of X.
inline std::optional<Triangle> phase1_x_search(const Graph& g, const VertexSet& x,
                                               QueryLedger& ledger, const CostConfig& cfg = {}) {
  require(!x.empty(), "phase1: X must be nonempty");
  const double domain = static_cast<double>(x.size()) * static_cast<double>(choose2(g.n()));
  return charged_search(
      std::max(1.0, domain), 1.0,
      [&]() -> std::optional<Triangle> {
        const std::size_t n = g.n();
        for (Vertex u : x) {
          auto ru = g.row(u);
          ledger.add_probes(n - 1);
          for (std::size_t v1 = first_common_from(ru, ru, 0); v1 < n;
               v1 = first_common_from(ru, ru, v1 + 1)) {
            ledger.add_probes(n - 1);
            const std::size_t v2 = first_common_from(ru, g.row(static_cast<Vertex>(v1)), v1 + 1);
            if (v2 < n)
              return Triangle::of(u, static_cast<Vertex>(v1), static_cast<Vertex>(v2));
          }
        }
        return std::nullopt;
      },
      ledger, phase::kPhase1, cfg);
}

struct OuterWitness {
  VertexSet a;
  Vertex w = 0;
  VertexPair pair;
};

struct OuterOutcome {
  std::optional<OuterWitness> witness;
  VertexSet representative;  // the A whose check_A charge stands in for C
  WalkCharge walk;
  WalkTerms terms;
  CheckOutcome check;
  bool marked_exists = false;
  bool suppressed = false;
};

// Smallest pair of Delta_X(V) that is an edge of some triangle.
inline std::optional<VertexPair> smallest_surviving_triangle_edge(const Graph& g,
                                                                  const VertexSet& x,
                                                                  QueryLedger* probes) {
  const VertexSet all = VertexSet::all(g.n());
  const auto prof = detail::x_profiles(g, x, all, probes);
  const std::size_t n = g.n();
  for (Vertex u = 0; u < n; ++u) {
    auto ru = g.row(u);
    for (std::size_t v = first_common_from(ru, ru, u + 1); v < n;
         v = first_common_from(ru, ru, v + 1)) {
      if (intersects(prof.of(u), prof.of(v))) continue;
      if (intersects(ru, g.row(static_cast<Vertex>(v))))
        return VertexPair{u, static_cast<Vertex>(v)};
    }
  }
  return std::nullopt;
}

// A of the requested size holding both endpoints, completed by the smallest indices.
inline VertexSet fill_around(std::size_t n, VertexPair pair, std::size_t size) {
  std::vector<Vertex> members{pair.lo, pair.hi};
  for (Vertex v = 0; v < n && members.size() < size; ++v)
    if (v != pair.lo && v != pair.hi) members.push_back(v);
  return VertexSet(n, std::move(members));
}

// Walk over J(V, ceil(n^a)) whose data structure stores Delta_X(A).
inline OuterOutcome outer_walk(const Graph& g, const VertexSet& x, const AlgoParams& p,
                               QueryLedger& ledger) {
  const Sizes s = supported_sizes(g.n(), p);
  const std::size_t n = g.n();
  OuterOutcome out;

  const auto edge = smallest_surviving_triangle_edge(g, x, &ledger);
  out.marked_exists = edge.has_value();
  VertexSet a;
  if (edge) {
    a = fill_around(n, *edge, s.size_a);
  } else {
    Rng rng = make_rng(derive_seed(p.seed, "outer_representative"));
    a = random_subset(n, s.size_a, rng);
  }

  out.representative = a;
  const PairSet delta_a = delta_Y(g, x, a, &ledger);
  out.check = evaluate_check_A(g, x, a, delta_a, p, derive_seed(p.seed, "estimator_string"),
                               &ledger);

  const double size_a = static_cast<double>(a.size());
  const double nd = static_cast<double>(n);
  out.walk.setup = size_a * static_cast<double>(x.size());
  out.walk.update = 2.0 * static_cast<double>(x.size());
  out.walk.check = out.check.charge.total;
  out.walk.r = a.size();
  out.walk.eps = size_a * (size_a - 1.0) / (nd * (nd - 1.0));
  out.walk.domain = "J(V,|A|)";
  out.terms = walk_terms(out.walk, p.cost);

  const double estimator_part = out.terms.check * out.check.charge.estimator_share();
  ledger.charge(phase::kOuterSetup, out.terms.setup);
  ledger.charge(phase::kOuterUpdate, out.terms.update);
  ledger.charge(phase::kOuterCheck, estimator_part);
  ledger.charge(phase::kInnerWalk, std::max(0.0, out.terms.check - estimator_part));

  if (!out.marked_exists) return out;
  require(out.check.witness.has_value(), "outer walk: marked A without an apex witness");
  if (p.injection &&
      injected_failure(FailureInjection{1.0 - p.injection->walk_success,
                                        derive_seed(p.seed, "walk_injection")})) {
    out.suppressed = true;
    return out;
  }
  out.witness = OuterWitness{a, out.check.witness->w, out.check.witness->pair};
  return out;
}

// Everything needed to re-derive each phase charge from its inputs.
struct RunTrace {
  std::uint64_t x_draws = 0;
  std::uint64_t x_size = 0;
  double phase1_domain = 0.0;
  std::optional<WalkCharge> outer_walk;
  std::uint64_t size_a = 0;
  std::uint64_t r_inner = 0;
  std::uint64_t m = 0;
  double eps_inner = 0.0;
  double check_total = 0.0;
  double final_domain = 0.0;
  double extraction_domain = 0.0;
  std::string found_in;
  bool walk_suppressed = false;
};

struct RunReport {
  std::string algorithm = "legall";
  std::size_t n = 0;
  AlgoParams params;
  std::optional<Triangle> outcome;
  QueryLedger ledger;
  bool budget_exceeded = false;
  double budget = 0.0;
  RunTrace trace;
  std::chrono::nanoseconds wall_time{0};

  [[nodiscard]] double total_charge() const { return ledger.total(); }
};

// Full pipeline: sample X, phase-1 search, outer walk with the nested check,
// then the two final Grover searches. Always verifies before reporting.
inline RunReport find_triangle(const Graph& g, const AlgoParams& p) {
  const auto started = std::chrono::steady_clock::now();
  const Sizes s = supported_sizes(g.n(), p);
  const std::size_t n = g.n();

  RunReport rep;
  rep.n = n;
  rep.params = p;
  rep.budget = budget_envelope(n, p);
  for (auto label : phase::kPipeline) rep.ledger.declare(label);
  QueryLedger& ledger = rep.ledger;

  auto finish = [&]() -> RunReport {
    rep.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - started);
    return std::move(rep);
  };
  auto over_budget = [&] {
    if (p.budget_stop && ledger.total() > rep.budget) {
      rep.budget_exceeded = true;
      rep.outcome.reset();
      return true;
    }
    return false;
  };
  auto search_fails = [&](std::string_view label) {
    return p.injection && injected_failure(FailureInjection{1.0 - p.injection->search_success,
                                                            derive_seed(p.seed, label)});
  };

  const VertexSet x = sample_X(n, p.k, derive_seed(p.seed, "sample_x"));
  rep.trace.x_draws = sample_x_draws(n, p.k);
  rep.trace.x_size = x.size();
  rep.trace.phase1_domain = static_cast<double>(x.size()) * static_cast<double>(choose2(n));

  if (auto t = phase1_x_search(g, x, ledger, p.cost); t && !search_fails("phase1_injection")) {
    if (over_budget()) return finish();
    if (verify_triangle(g, ledger, *t)) {
      rep.outcome = t;
      rep.trace.found_in = "phase1";
      return finish();
    }
  }
  if (over_budget()) return finish();

  const OuterOutcome outer = outer_walk(g, x, p, ledger);
  rep.trace.outer_walk = outer.walk;
  rep.trace.size_a = outer.walk.r;
  rep.trace.r_inner = outer.check.r_inner;
  rep.trace.m = outer.check.m;
  rep.trace.eps_inner = outer.check.eps_inner;
  rep.trace.check_total = outer.check.charge.total;
  rep.trace.walk_suppressed = outer.suppressed;
  if (over_budget()) return finish();

  // The last two searches run on whatever the walk hands back. Without a
  // witness that is the representative A, with B its first r members and the
  // apex maximising |Delta(B, w)|; the searches then come back empty.
  const VertexSet& walk_a = outer.witness ? outer.witness->a : outer.representative;
  std::vector<Vertex> b_members;
  if (outer.witness) b_members = {outer.witness->pair.lo, outer.witness->pair.hi};
  for (Vertex v : walk_a)
    if (b_members.size() < s.r_inner && std::find(b_members.begin(), b_members.end(), v) ==
                                            b_members.end())
      b_members.push_back(v);
  const VertexSet b(n, std::move(b_members));
  std::size_t final_size = 0;
  if (outer.witness) {
    final_size = delta_Y_w(g, x, b, outer.witness->w, &ledger).size();
  } else {
    const PairSet delta_b = delta_Y(g, x, b, &ledger);
    ledger.add_probes(n * b.size());
    for (std::uint64_t c : apex_delta_sizes(g, delta_b))
      final_size = std::max<std::size_t>(final_size, c);
  }
  rep.trace.final_domain = std::max<double>(1.0, static_cast<double>(final_size));
  ledger.charge(phase::kFinalGrover, grover_cost(rep.trace.final_domain, 1.0, p.cost));
  rep.trace.extraction_domain =
      static_cast<double>(n) * static_cast<double>(choose2(walk_a.size()));
  ledger.charge(phase::kExtraction, grover_cost(rep.trace.extraction_domain, 1.0, p.cost));
  if (over_budget() || !outer.witness) return finish();
  if (search_fails("extraction_injection")) return finish();

  const OuterWitness& wit = *outer.witness;
  const Triangle t = Triangle::of(wit.pair.lo, wit.pair.hi, wit.w);
  if (verify_triangle(g, ledger, t)) {
    rep.outcome = t;
    rep.trace.found_in = "walk";
  }
  return finish();
}

}  // namespace trifind
