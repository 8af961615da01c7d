#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trifind/cost_model.hpp"
#include "trifind/lg_algorithm.hpp"
#include "trifind/stats.hpp"

namespace trifind {

using Json = nlohmann::ordered_json;

// One Bernoulli statistic of a campaign. `outcomes` holds one '0'/'1' per trial
// in trial order, so every derived number below can be recomputed from it.
struct Aggregate {
  std::string name;
  double bound = 1.0;
  std::string outcomes;

  [[nodiscard]] std::uint64_t trials() const { return outcomes.size(); }
  [[nodiscard]] std::uint64_t successes() const {
    return static_cast<std::uint64_t>(std::count(outcomes.begin(), outcomes.end(), '1'));
  }
  [[nodiscard]] double frequency() const {
    return trials() ? static_cast<double>(successes()) / static_cast<double>(trials()) : 0.0;
  }
  [[nodiscard]] double pass_line() const { return trifind::pass_line(bound, trials()); }
  [[nodiscard]] Interval wilson() const {
    return wilson_interval(successes(), trials(), kSigmaSlack);
  }
  [[nodiscard]] bool pass() const { return trials() > 0 && frequency() >= pass_line(); }

  void record(bool success) { outcomes.push_back(success ? '1' : '0'); }
};

struct CampaignReport {
  std::string campaign;
  Json config = Json::object();
  std::vector<Aggregate> aggregates;
  Json details = Json::object();

  [[nodiscard]] bool verdict() const {
    if (aggregates.empty()) return false;
    for (const auto& a : aggregates)
      if (!a.pass()) return false;
    return true;
  }

  [[nodiscard]] const Aggregate& aggregate(std::string_view name) const {
    for (const auto& a : aggregates)
      if (a.name == name) return a;
    throw ContractViolation("no aggregate named " + std::string(name));
  }
};

struct FitPoint {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t found = 0;
};

struct FitResult {
  std::string algorithm;
  std::string family;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<FitPoint> points;
  std::optional<Interval> band;

  [[nodiscard]] bool verdict() const {
    return !band || (slope >= band->lo && slope <= band->hi);
  }
};

inline Json to_json(const WalkCharge& w) {
  return Json{{"setup", w.setup}, {"update", w.update}, {"check", w.check},
              {"r", w.r},         {"eps", w.eps},       {"domain", w.domain}};
}

inline Json to_json(const AlgoParams& p) {
  Json j{{"a", p.a},
         {"k", p.k},
         {"log_factors", p.cost.log_factors},
         {"seed", p.seed},
         {"leading_constant", p.cost.leading_constant},
         {"estimator_constant", p.estimator.charge_constant},
         {"n_min_guard", p.n_min_guard},
         {"budget_stop", p.budget_stop},
         {"budget_multiplier", p.budget_multiplier}};
  if (p.injection) {
    j["inject"] = Json{{"walk_success", p.injection->walk_success},
                       {"check_success", p.injection->check_success},
                       {"search_success", p.injection->search_success}};
  } else {
    j["inject"] = nullptr;
  }
  return j;
}

inline Json to_json(const RunReport& r, bool include_timing = false) {
  Json outcome{{"found", r.outcome.has_value()}};
  if (r.outcome) outcome["vertices"] = {r.outcome->v[0], r.outcome->v[1], r.outcome->v[2]};
  Json charges = Json::object();
  for (const auto& [phase, amount] : r.ledger.charges()) charges[phase] = amount;

  Json trace{{"x_draws", r.trace.x_draws},
             {"x_size", r.trace.x_size},
             {"phase1_domain", r.trace.phase1_domain},
             {"size_a", r.trace.size_a},
             {"r_inner", r.trace.r_inner},
             {"m", r.trace.m},
             {"eps_inner", r.trace.eps_inner},
             {"check_total", r.trace.check_total},
             {"final_domain", r.trace.final_domain},
             {"extraction_domain", r.trace.extraction_domain},
             {"found_in", r.trace.found_in},
             {"walk_suppressed", r.trace.walk_suppressed}};
  trace["outer_walk"] = r.trace.outer_walk ? to_json(*r.trace.outer_walk) : Json(nullptr);

  Json j{{"algorithm", r.algorithm},
         {"n", r.n},
         {"params", to_json(r.params)},
         {"outcome", outcome},
         {"charges", charges},
         {"total_charge", r.total_charge()},
         {"raw_probes", r.ledger.raw_probes()},
         {"budget", r.budget},
         {"budget_exceeded", r.budget_exceeded},
         {"trace", trace}};
  if (include_timing)
    j["wall_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
  return j;
}

inline Json to_json(const Aggregate& a) {
  const Interval w = a.wilson();
  return Json{{"name", a.name},
              {"trials", a.trials()},
              {"successes", a.successes()},
              {"frequency", a.frequency()},
              {"bound", a.bound},
              {"pass_line", a.pass_line()},
              {"wilson_lo", w.lo},
              {"wilson_hi", w.hi},
              {"pass", a.pass()},
              {"outcomes", a.outcomes}};
}

inline Json to_json(const CampaignReport& c) {
  Json aggs = Json::array();
  for (const auto& a : c.aggregates) aggs.push_back(to_json(a));
  return Json{{"campaign", c.campaign},
              {"config", c.config},
              {"aggregates", aggs},
              {"details", c.details},
              {"verdict", c.verdict() ? "pass" : "fail"}};
}

inline Json to_json(const FitResult& f) {
  Json pts = Json::array();
  for (const auto& p : f.points)
    pts.push_back(Json{{"n", p.n},
                       {"mean", p.mean},
                       {"stddev", p.stddev},
                       {"trials", p.trials},
                       {"found", p.found}});
  Json j{{"algorithm", f.algorithm}, {"family", f.family},       {"slope", f.slope},
         {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"points", pts}};
  j["band"] = f.band ? Json{f.band->lo, f.band->hi} : Json(nullptr);
  j["verdict"] = f.verdict() ? "pass" : "fail";
  return j;
}

// CSV forms: one header line, then data rows.
inline void write_csv(std::ostream& out, const RunReport& r) {
  out << "algorithm,n,seed,found,v1,v2,v3,total_charge,raw_probes,budget_exceeded";
  for (const auto& [phase, amount] : r.ledger.charges()) out << ',' << phase;
  out << '\n';
  std::ostringstream row;
  row.precision(17);
  row << r.algorithm << ',' << r.n << ',' << r.params.seed << ',' << (r.outcome ? 1 : 0);
  for (int i = 0; i < 3; ++i) {
    row << ',';
    if (r.outcome) row << r.outcome->v[i];
  }
  row << ',' << r.total_charge() << ',' << r.ledger.raw_probes() << ','
      << (r.budget_exceeded ? 1 : 0);
  for (const auto& [phase, amount] : r.ledger.charges()) row << ',' << amount;
  out << row.str() << '\n';
}

inline void write_csv(std::ostream& out, const CampaignReport& c) {
  out << "campaign,aggregate,trials,successes,frequency,bound,pass_line,wilson_lo,wilson_hi,pass\n";
  std::ostringstream rows;
  rows.precision(17);
  for (const auto& a : c.aggregates) {
    const Interval w = a.wilson();
    rows << c.campaign << ',' << a.name << ',' << a.trials() << ',' << a.successes() << ','
         << a.frequency() << ',' << a.bound << ',' << a.pass_line() << ',' << w.lo << ','
         << w.hi << ',' << (a.pass() ? 1 : 0) << '\n';
  }
  out << rows.str();
}

inline void write_csv(std::ostream& out, const FitResult& f) {
  out << "algorithm,family,n,mean_charge,stddev,trials,found,slope,intercept,r_squared\n";
  std::ostringstream rows;
  rows.precision(17);
  for (const auto& p : f.points)
    rows << f.algorithm << ',' << f.family << ',' << p.n << ',' << p.mean << ',' << p.stddev
         << ',' << p.trials << ',' << p.found << ',' << f.slope << ',' << f.intercept << ','
         << f.r_squared << '\n';
  out << rows.str();
}

}  // namespace trifind
