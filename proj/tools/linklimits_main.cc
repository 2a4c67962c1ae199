// Copyright 2026 The linklimits Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: bounds, metrics, orbits, oracle.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "linklimits/canonical.h"
#include "linklimits/errors.h"
#include "linklimits/experiment.h"
#include "linklimits/graph.h"
#include "linklimits/metrics.h"
#include "linklimits/oracle.h"
#include "linklimits/partition.h"
#include "linklimits/report.h"

namespace {

using namespace linklimits;

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kResourceError = 3,
  kDegenerate = 4,
};

struct GraphArgs {
  std::string path;
  bool directed = false;
  bool include_self_loops = false;
  bool respect_direction = false;

  void Register(CLI::App* app) {
    app->add_option("--graph", path, "Edge-list file (src dst [weight])")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_flag("--directed", directed, "Treat edges as directed");
    app->add_flag("--include-self-loops", include_self_loops,
                  "Count (a, a) pairs as candidates even without self-loops in the file");
    app->add_flag("--respect-direction-in-hops", respect_direction,
                  "k-hop walks follow edge direction");
  }

  LoadOptions Load() const {
    LoadOptions options;
    options.directed = directed;
    options.keep_self_loops = true;
    options.include_self_loop_pairs = include_self_loops;
    return options;
  }
  HopDirection Hops() const {
    return respect_direction ? HopDirection::kFollow : HopDirection::kIgnore;
  }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph LoadGraph(const GraphArgs& args, std::string* bytes = nullptr) {
  std::string text = ReadFile(args.path);
  std::istringstream in(text);
  Graph g = LoadEdgeList(in, args.Load());
  if (bytes != nullptr) *bytes = std::move(text);
  return g;
}

LabeledCells LoadCells(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return ReadCellsCsv(in);
}

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string MeanCi(const Statistic& stat) {
  if (stat.samples.empty()) return "n/a";
  std::string s = Fixed(stat.ci.mean);
  s += stat.ci.halfwidth ? " +- " + Fixed(*stat.ci.halfwidth) : " (1 trial)";
  return s;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  GraphArgs graph;
  ExperimentConfig cfg;
  double downsample = 0;
  std::string out_dir = ".";
};

int RunBounds(const BoundsArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  std::string bytes;
  const Graph g = LoadGraph(args.graph, &bytes);
  ExperimentConfig cfg = args.cfg;
  cfg.hop_direction = args.graph.Hops();
  if (args.downsample > 0) cfg.downsample = args.downsample;

  const ExperimentResult result = RunExperiment(g, cfg);

  RunManifest manifest;
  manifest.graph_path = args.graph.path;
  manifest.graph_sha256 = Sha256Hex(bytes);
  manifest.config = ConfigJson(cfg, args.graph.directed, g.self_loops_allowed());
  for (const TrialResult& t : result.trials) {
    for (const auto& [stage, seconds] : t.timings) manifest.stage_timings[stage] += seconds;
  }
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::filesystem::create_directories(args.out_dir);
  const std::string name = std::filesystem::path(args.graph.path).filename().string();
  const auto json_path = std::filesystem::path(args.out_dir) / "bounds.json";
  const auto csv_path = std::filesystem::path(args.out_dir) / "plot.csv";
  {
    std::ofstream out(json_path);
    out << ExperimentJson(result, name, manifest.config, manifest).dump(2) << '\n';
  }
  {
    std::ofstream out(csv_path);
    WritePlotCsv(out, result);
  }

  std::cout << name << ": n=" << g.num_nodes() << " |E|=" << g.num_edges()
            << (g.directed() ? " directed" : " undirected") << ", " << cfg.trials
            << " trials, " << result.total_redraws << " redraws\n";
  std::cout << "k      trials  ROC bound                 AUPR bound                AP bound";
  if (cfg.downsample) std::cout << "                  AP bound (downsampled)";
  std::cout << '\n';
  auto row = [&](const std::string& k, const LevelSummary& level) {
    char head[32];
    std::snprintf(head, sizeof(head), "%-6s %-7zu ", k.c_str(), level.trials_reached);
    std::cout << head;
    char cols[160];
    std::snprintf(cols, sizeof(cols), "%-25s %-25s %-25s", MeanCi(level.roc).c_str(),
                  MeanCi(level.aupr).c_str(), MeanCi(level.ap_bound).c_str());
    std::cout << cols;
    if (level.ap_bound_downsampled) std::cout << ' ' << MeanCi(*level.ap_bound_downsampled);
    std::cout << '\n';
  };
  for (const LevelSummary& level : result.summary.per_k) row(std::to_string(level.k), level);
  row("global", result.summary.global);
  std::cout << "wrote " << json_path.string() << " and " << csv_path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- metrics

int RunMetrics(const std::string& path, bool keep_order, bool as_json) {
  const LabeledCells cells = LoadCells(path);
  const OrderedCells sorted = SortCells(cells);
  const ApBound ap = MaxApBound(sorted);
  nlohmann::json j = {{"max_roc", MaxRoc(sorted)},
                      {"max_aupr", MaxAupr(sorted)},
                      {"ap_sorted_order", ap.sorted_order_ap},
                      {"ap_bound", ap.bound}};
  if (keep_order) j["ap_listed_order"] = AveragePrecision(cells);
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "max ROC          " << Fixed(j["max_roc"].get<double>()) << '\n'
            << "max AUPR         " << Fixed(j["max_aupr"].get<double>()) << '\n'
            << "AP (sorted)      " << Fixed(ap.sorted_order_ap) << '\n';
  if (keep_order) {
    std::cout << "AP (listed)      " << Fixed(j["ap_listed_order"].get<double>()) << '\n';
  }
  std::cout << "AP bound         " << Fixed(ap.bound) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- orbits

int RunOrbits(const GraphArgs& graph_args, int k, bool approx, const std::string& out_path) {
  const Graph g = LoadGraph(graph_args);
  PartitionOptions options;
  options.hop_direction = graph_args.Hops();
  CellPartition part;
  if (k <= 0) {
    part = GlobalOrbitPartition(g, options);
  } else if (approx) {
    part = ApproxWlPartition(g, k, options);
  } else {
    part = KhopPartition(g, k, options);
  }
  if (out_path.empty() || out_path == "-") {
    WritePartitionCsv(std::cout, part, g);
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    WritePartitionCsv(out, part, g);
  }
  std::cerr << part.blocks.size() << " blocks over " << part.pairs.size() << " non-edges ("
            << (k <= 0 ? std::string("global orbits") : std::to_string(k) + "-hop") << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- oracle

int RunOracleAutos(const GraphArgs& graph_args, int max_nodes) {
  const Graph g = LoadGraph(graph_args);
  oracle::OracleBudget budget;
  budget.max_nodes = max_nodes;
  const auto brute = oracle::BruteAutomorphisms(g, budget);
  const GeneratorSet gens = AutomorphismGenerators(g, Coloring::Uniform(g.num_nodes()));
  const auto closure = oracle::GenerateGroup(gens.generators, g.num_nodes());
  std::vector<Permutation> sorted_brute = brute;
  std::sort(sorted_brute.begin(), sorted_brute.end());
  const bool agree = sorted_brute == closure && gens.group_order == brute.size();
  std::cout << "|Aut| brute force   " << brute.size() << '\n'
            << "|Aut| search        " << gens.group_order << " (" << gens.generators.size()
            << " generators)\n"
            << (agree ? "AGREE" : "DISAGREE") << '\n';
  return agree ? kOk : 1;
}

int RunOracleOrderings(const std::string& path, const std::string& metric_name, int max_cells) {
  const LabeledCells cells = LoadCells(path);
  oracle::OracleBudget budget;
  budget.max_cells = max_cells;
  oracle::Metric metric = oracle::Metric::kAp;
  if (metric_name == "roc") metric = oracle::Metric::kRoc;
  if (metric_name == "aupr") metric = oracle::Metric::kAupr;
  const oracle::OrderingResult best = oracle::BestOrderingExhaustive(cells, metric, budget);
  const OrderedCells sorted = SortCells(cells);
  double closed = 0;
  switch (metric) {
    case oracle::Metric::kRoc: closed = MaxRoc(sorted); break;
    case oracle::Metric::kAupr: closed = MaxAupr(sorted); break;
    case oracle::Metric::kAp: closed = AveragePrecision(sorted); break;
  }
  std::cout << "metric            " << metric_name << '\n'
            << "exhaustive best   " << Fixed(best.value, 9) << " order";
  for (std::size_t i : best.order) {
    std::cout << " (" << cells.cells[i].p << ',' << cells.cells[i].n << ')';
  }
  std::cout << "\ndensity order     " << Fixed(closed, 9) << '\n';
  const bool sorted_optimal = closed >= best.value - 1e-9;
  std::cout << (sorted_optimal ? "density order is optimal" : "density order is NOT optimal")
            << '\n';
  if (metric == oracle::Metric::kAp) {
    std::cout << "AP bound (max AUPR) " << Fixed(MaxAupr(sorted), 9)
              << (best.value <= MaxAupr(sorted) + 1e-12 ? "  holds" : "  VIOLATED") << '\n';
  }
  return kOk;
}

int RunOracleAupr(const std::string& path) {
  const LabeledCells cells = LoadCells(path);
  const OrderedCells sorted = SortCells(cells);
  const double closed = MaxAupr(sorted);
  const double numeric = oracle::AuprNumeric(sorted, 1e-12);
  const double delta = std::fabs(closed - numeric);
  std::cout << "closed form   " << Fixed(closed, 12) << '\n'
            << "quadrature    " << Fixed(numeric, 12) << '\n'
            << "delta         " << delta << (delta < 1e-9 ? "  (< 1e-9)" : "  (>= 1e-9)") << '\n';
  return delta < 1e-9 ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-only link prediction performance limits"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Randomized held-out-edge bound experiment");
  bounds.graph.Register(bounds_cmd);
  bounds_cmd->add_option("--p", bounds.cfg.removal_prob, "Edge removal probability")
      ->capture_default_str();
  bounds_cmd->add_option("--trials", bounds.cfg.trials, "Number of trials")->capture_default_str();
  bounds_cmd->add_option("--seed", bounds.cfg.master_seed, "Master seed")->capture_default_str();
  bounds_cmd->add_option("--k-max", bounds.cfg.k_max, "Largest hop count")->capture_default_str();
  bounds_cmd->add_option("--stop-epsilon", bounds.cfg.stop_epsilon,
                         "Stop once the k-hop AUPR bound is this close to the global one")
      ->capture_default_str();
  bounds_cmd->add_option("--downsample", bounds.downsample,
                         "Also report AP bounds with negatives downsampled to this "
                         "positives-per-negative ratio");
  bounds_cmd->add_option("--out", bounds.out_dir, "Output directory")->capture_default_str();
  bounds_cmd->add_option("--threads", bounds.cfg.threads, "Worker threads (0 = all)");
  bounds_cmd->add_flag("--approx-wl", bounds.cfg.approx_wl,
                       "Key k-hop cells by color refinement only (profiling; not exact)");

  std::string cells_path;
  bool keep_order = false;
  bool metrics_json = false;
  auto* metrics_cmd = app.add_subcommand("metrics", "Bounds for a cells CSV of 'p,n' rows");
  metrics_cmd->add_option("--cells,cells", cells_path, "Cells CSV")
      ->required()
      ->check(CLI::ExistingFile);
  metrics_cmd->add_flag("--keep-order", keep_order, "Also report AP in the listed order");
  metrics_cmd->add_flag("--json", metrics_json, "Print JSON");

  GraphArgs orbits_graph;
  int orbits_k = 0;
  bool orbits_approx = false;
  std::string orbits_out;
  auto* orbits_cmd = app.add_subcommand("orbits", "Dump the non-edge partition as CSV");
  orbits_graph.Register(orbits_cmd);
  orbits_cmd->add_option("--k", orbits_k, "Hop count (omit for global orbits)");
  orbits_cmd->add_option("--out", orbits_out, "CSV path (default stdout)");
  orbits_cmd->add_flag("--approx-wl", orbits_approx, "Color refinement keys (profiling)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force audits of the closed forms");
  oracle_cmd->require_subcommand(1);
  GraphArgs autos_graph;
  int max_nodes = 8;
  auto* autos_cmd = oracle_cmd->add_subcommand("autos", "Enumerate all automorphisms");
  autos_graph.Register(autos_cmd);
  autos_cmd->add_option("--max-nodes", max_nodes, "Budget")->capture_default_str();
  std::string order_cells;
  std::string metric_name = "ap";
  int max_cells = 8;
  auto* orderings_cmd = oracle_cmd->add_subcommand("orderings", "Try every cell ordering");
  orderings_cmd->add_option("--cells", order_cells, "Cells CSV")
      ->required()
      ->check(CLI::ExistingFile);
  orderings_cmd->add_option("--metric", metric_name, "roc | aupr | ap")
      ->check(CLI::IsMember({"roc", "aupr", "ap"}))
      ->capture_default_str();
  orderings_cmd->add_option("--max-cells", max_cells, "Budget")->capture_default_str();
  std::string aupr_cells;
  auto* aupr_cmd = oracle_cmd->add_subcommand("aupr", "Closed-form AUPR vs quadrature");
  aupr_cmd->add_option("--cells", aupr_cells, "Cells CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*bounds_cmd) return RunBounds(bounds);
    if (*metrics_cmd) return RunMetrics(cells_path, keep_order, metrics_json);
    if (*orbits_cmd) return RunOrbits(orbits_graph, orbits_k, orbits_approx, orbits_out);
    if (*autos_cmd) return RunOracleAutos(autos_graph, max_nodes);
    if (*orderings_cmd) return RunOracleOrderings(order_cells, metric_name, max_cells);
    if (*aupr_cmd) return RunOracleAupr(aupr_cells);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  }
  return kInputError;
}
