// Command-line front end: single runs, lemma campaigns, scaling fits,
// correctness sweeps and corpus generation.
//
// Exit status: 0 when the verdict passes, 1 when it fails, 2 on usage errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trifind/trifind.hpp"

namespace {

using namespace trifind;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool on_off(const std::string& value, const char* flag) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw UsageError(std::string(flag) + " expects on|off, got '" + value + "'");
}

bool wants_csv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

template <class Report>
void emit(const std::string& out_path, const Report& report, const Json& json) {
  if (out_path.empty()) {
    std::cout << json.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
  if (wants_csv(out_path))
    write_csv(out, report);
  else
    out << json.dump(2) << '\n';
}

void summary(const std::string& out_path, const std::string& line) {
  if (!out_path.empty()) std::cout << line << '\n';
}

struct Common {
  std::size_t n = 256;
  double a = 0.75;
  double k = 0.5;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::string family = "er:0.5";
  std::string log_factors = "off";
  std::string inject = "off";
  std::string out;
  std::size_t workers = default_workers();
};

void add_common(CLI::App* cmd, Common& c, bool with_graph_shape = true) {
  if (with_graph_shape) {
    cmd->add_option("--n", c.n, "number of vertices")->check(CLI::PositiveNumber);
    cmd->add_option("--family", c.family, "er:<p> | bipartite | planted | edgeless | complete");
  }
  cmd->add_option("--a", c.a, "outer subset exponent");
  cmd->add_option("--k", c.k, "goodness exponent");
  cmd->add_option("--trials", c.trials, "Monte Carlo trials");
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--log-factors", c.log_factors, "charge ln factors on Grover searches (on|off)");
  cmd->add_option("--inject", c.inject, "inject bounded-error failures (on|off)");
  cmd->add_option("--out", c.out, "write report to file (.json or .csv)");
  cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

AlgoParams params_from(const Common& c) {
  AlgoParams p;
  p.a = c.a;
  p.k = c.k;
  p.seed = c.seed;
  p.cost.log_factors = on_off(c.log_factors, "--log-factors");
  if (on_off(c.inject, "--inject")) p.injection = InjectionParams{};
  validate(p);
  return p;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      grid.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad grid entry '" + item + "'");
    }
  }
  return grid;
}

int cmd_run(const Common& c, const std::string& graph_path, bool timing, std::size_t guard) {
  AlgoParams p = params_from(c);
  p.n_min_guard = guard;
  const Graph g = graph_path.empty() ? make_graph(Family::parse(c.family), c.n, c.seed)
                                     : load_graph(graph_path);
  const RunReport rep = find_triangle(g, p);
  const bool truth = brute_force_triangle(g).has_value();
  const bool verified = !rep.outcome || is_triangle(g, *rep.outcome);
  const bool pass = verified && rep.outcome.has_value() == truth;
  Json j = to_json(rep, timing);
  j["brute_force_found"] = truth;
  j["verdict"] = pass ? "pass" : "fail";
  emit(c.out, rep, j);
  std::ostringstream line;
  line << "run n=" << g.n() << " found=" << (rep.outcome ? "yes" : "no")
       << " total_charge=" << rep.total_charge() << " verdict=" << (pass ? "pass" : "fail");
  summary(c.out, line.str());
  return pass ? kPass : kFail;
}

int finish_campaign(const Common& c, const CampaignReport& rep) {
  emit(c.out, rep, to_json(rep));
  std::ostringstream line;
  line << rep.campaign;
  for (const auto& a : rep.aggregates)
    line << ' ' << a.name << '=' << a.successes() << '/' << a.trials()
         << " (pass line " << a.pass_line() << ')';
  line << " verdict=" << (rep.verdict() ? "pass" : "fail");
  summary(c.out, line.str());
  return rep.verdict() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-charged emulation of a quantum triangle finder"};
  app.require_subcommand(1);

  Common run_c, l2_c, l3_c, l4_c, fit_c, cor_c, gen_c;
  std::string graph_path;
  bool timing = false;
  auto* run = app.add_subcommand("run", "run the triangle finder once");
  add_common(run, run_c);
  run->add_option("--graph", graph_path, "load the graph from a file instead of generating it");
  run->add_flag("--timing", timing, "include wall-clock time in the report");
  std::size_t guard = 64;
  run->add_option("--n-min-guard", guard, "smallest n accepted by the pipeline");

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of a probabilistic bound");
  verify->require_subcommand(1);
  auto* l2 = verify->add_subcommand("lemma2", "k-goodness of the sampled X");
  add_common(l2, l2_c);
  auto* l3 = verify->add_subcommand("lemma3", "accuracy of the sampling estimator");
  add_common(l3, l3_c);
  std::uint64_t l3_m = 0;
  l3->add_option("--m", l3_m, "estimator parameter m (default ceil(n^k))");
  auto* l4 = verify->add_subcommand("lemma4", "size cap of a random r-subset");
  add_common(l4, l4_c, false);
  std::uint64_t size_a = 128, r = 16;
  l4->add_option("--size-a", size_a, "|A|");
  l4->add_option("--r", r, "subset size r");

  auto* fit = app.add_subcommand("fit", "fit the scaling exponent of the charged total");
  add_common(fit, fit_c, false);
  fit->add_option("--family", fit_c.family, "graph family");
  std::string algo = "legall", grid_text = "128,256,512,1024,2048";
  std::vector<double> band;
  fit->add_option("--algo", algo, "legall | naive | buhrman");
  fit->add_option("--grid", grid_text, "comma-separated vertex counts");
  fit->add_option("--band", band, "accepted slope interval: lo hi")->expected(2);

  auto* cor = app.add_subcommand("correctness", "compare against brute force");
  add_common(cor, cor_c, false);
  std::size_t max_n = 64, det_n = 512;
  std::uint64_t cases = 0, large = 20, negatives = 100;
  cor->add_option("--max-n", max_n, "largest small instance (injection off)");
  cor->add_option("--cases", cases, "mixed small cases (200), or planted positives with --inject on (300)");
  cor->add_option("--large-planted", large, "planted cases at n = 512 (injection off)");
  cor->add_option("--n", det_n, "instance size with --inject on");
  cor->add_option("--negatives", negatives, "bipartite negatives with --inject on");

  auto* gen = app.add_subcommand("gen", "write generated graphs to disk");
  add_common(gen, gen_c);
  std::uint64_t count = 1;
  gen->add_option("--count", count, "number of graphs; --out is then a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(run_c, graph_path, timing, guard);

    if (*l2) {
      const auto trials = l2_c.trials ? l2_c.trials : 200;
      return finish_campaign(l2_c, mc_lemma2(l2_c.n, l2_c.k, trials, Family::parse(l2_c.family),
                                             l2_c.seed, l2_c.workers));
    }
    if (*l3) {
      const auto trials = l3_c.trials ? l3_c.trials : 100;
      std::optional<std::uint64_t> m;
      if (l3_m) m = l3_m;
      return finish_campaign(l3_c, mc_lemma3(l3_c.n, l3_c.a, l3_c.k, trials,
                                             Family::parse(l3_c.family), l3_c.seed, m,
                                             l3_c.workers));
    }
    if (*l4) {
      const auto trials = l4_c.trials ? l4_c.trials : 100000;
      return finish_campaign(
          l4_c, mc_lemma4(size_a, r, trials, default_lemma4_configs(), l4_c.seed, l4_c.workers));
    }
    if (*fit) {
      const AlgoParams p = params_from(fit_c);
      const Algorithm which = parse_algorithm(algo);
      const auto trials = fit_c.trials ? fit_c.trials : 20;
      FitResult res = scaling_fit(parse_grid(grid_text), which, trials,
                                  Family::parse(fit_c.family), p, fit_c.seed, fit_c.workers);
      if (!band.empty()) {
        if (band[0] > band[1]) throw UsageError("--band needs lo <= hi");
        res.band = Interval{band[0], band[1]};
      }
      emit(fit_c.out, res, to_json(res));
      std::ostringstream line;
      line << "fit " << res.algorithm << " slope=" << res.slope << " r2=" << res.r_squared
           << " verdict=" << (res.verdict() ? "pass" : "fail");
      summary(fit_c.out, line.str());
      return res.verdict() ? kPass : kFail;
    }
    if (*cor) {
      const AlgoParams p = params_from(cor_c);
      CorrectnessConfig cfg =
          p.injection ? detection_config(det_n, cases ? cases : 300, negatives, cor_c.seed)
                      : default_correctness_config(max_n, cases ? cases : 200, large, cor_c.seed);
      const bool relaxed = !p.injection;
      cfg.params = p;
      if (relaxed) cfg.params.n_min_guard = 0;
      return finish_campaign(cor_c, correctness_suite(cfg, cor_c.workers));
    }
    if (*gen) {
      const Family fam = Family::parse(gen_c.family);
      if (gen_c.out.empty()) {
        if (count != 1) throw UsageError("gen --count needs --out <directory>");
        write_edge_list(std::cout, make_graph(fam, gen_c.n, gen_c.seed));
        return kPass;
      }
      if (count == 1) {
        save_graph(gen_c.out, make_graph(fam, gen_c.n, gen_c.seed));
        return kPass;
      }
      std::filesystem::create_directories(gen_c.out);
      std::string tag = fam.name();
      for (char& ch : tag)
        if (ch == ':') ch = '_';
      for (std::uint64_t i = 0; i < count; ++i) {
        const auto path = std::filesystem::path(gen_c.out) /
                          (tag + "_n" + std::to_string(gen_c.n) + "_" + std::to_string(i) + ".txt");
        save_graph(path.string(), make_graph(fam, gen_c.n, derive_seed(gen_c.seed, "gen", i)));
      }
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedSize& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "bad graph file: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
