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

// Acceptance driver. Prints one PASS/FAIL line per criterion.
//
//   acceptance_test --gate      criteria 1-6 and 9 (fast, always run)
//   acceptance_test --datasets  criteria 7 and 8; exits 77 when the dataset
//                               files under data/datasets are missing

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "linklimits/canonical.h"
#include "linklimits/experiment.h"
#include "linklimits/metrics.h"
#include "linklimits/oracle.h"
#include "linklimits/partition.h"
#include "linklimits/report.h"
#include "test_graphs.h"

namespace linklimits {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void Report(int id, const std::string& title, double time_limit_seconds,
            const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit_seconds > 0 && seconds >= time_limit_seconds) {
    outcome.Check(false, "runtime " + std::to_string(seconds) + " s over limit");
  }
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", outcome.pass ? "PASS" : "FAIL", id,
              title.c_str(), seconds, outcome.detail.empty() ? "" : " -- ",
              outcome.detail.c_str());
  std::fflush(stdout);
  if (!outcome.pass) ++failures;
}

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Outcome AppendixGolden() {
  Outcome out;
  const LabeledCells cells{{{10, 0}, {2, 2}, {9, 7}}};
  const double listed = AveragePrecision(cells);
  const double sorted = AveragePrecision(SortCells(cells));
  out.Check(std::fabs(listed - 0.858) <= 5e-4, "listed AP " + Fmt(listed));
  out.Check(std::fabs(sorted - 0.856) <= 5e-4, "sorted AP " + Fmt(sorted));
  const auto best = oracle::BestOrderingExhaustive(cells, oracle::Metric::kAp);
  out.Check(best.exact > oracle::ApRightmost(SortCells(cells)),
            "exhaustive search did not beat the sorted order");
  out.detail = out.pass ? "listed " + Fmt(listed) + ", sorted " + Fmt(sorted) + ", best " +
                              Fmt(best.value)
                        : out.detail;
  return out;
}

std::vector<LabeledCells> OptimalityInstances() {
  std::mt19937_64 rng(20240611);
  std::vector<LabeledCells> instances;
  for (int i = 0; i < 1000; ++i) instances.push_back(testing::RandomCells(rng, 7, 30));
  // A few hand-picked corner shapes.
  instances.push_back(LabeledCells{{{0, 5}, {3, 0}}});
  instances.push_back(LabeledCells{{{1, 0}}});
  instances.push_back(LabeledCells{{{0, 1}, {0, 2}, {1, 0}, {0, 30}}});
  for (LabeledCells& c : instances) {
    if (c.TotalNegatives() == 0) c.cells.push_back({0, 1});
  }
  return instances;
}

Outcome OrderingOptimality(const std::vector<LabeledCells>& instances) {
  Outcome out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const OrderedCells oc = SortCells(instances[i]);
    const auto roc = oracle::BestOrderingExhaustive(instances[i], oracle::Metric::kRoc);
    out.Check(oracle::RocPairCount(oc) == roc.exact, "ROC mismatch on instance " +
                                                         std::to_string(i));
    out.Check(std::fabs(MaxRoc(oc) - roc.exact.convert_to<double>()) <= 1e-15,
              "ROC float drift on instance " + std::to_string(i));
    const auto aupr = oracle::BestOrderingExhaustive(instances[i], oracle::Metric::kAupr);
    out.Check(std::fabs(MaxAupr(oc) - aupr.value) <= 1e-9,
              "AUPR gap " + Fmt(MaxAupr(oc) - aupr.value) + " on instance " + std::to_string(i));
  }
  if (out.pass) out.detail = std::to_string(instances.size()) + " instances";
  return out;
}

Outcome ClosedFormVsQuadrature(const std::vector<LabeledCells>& instances) {
  Outcome out;
  int with_empty_positive_cells = 0;
  double worst = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    bool has_zero = false;
    for (const Cell& c : instances[i].cells) has_zero = has_zero || c.p == 0;
    with_empty_positive_cells += has_zero ? 1 : 0;
    const OrderedCells oc = SortCells(instances[i]);
    const double closed = MaxAupr(oc);
    out.Check(std::isfinite(closed), "non-finite AUPR on instance " + std::to_string(i));
    const double gap = std::fabs(closed - oracle::AuprNumeric(oc, 1e-11));
    worst = std::max(worst, gap);
    out.Check(gap <= 1e-9, "gap " + Fmt(gap) + " on instance " + std::to_string(i));
  }
  out.Check(with_empty_positive_cells > 0, "no instance had a p_i = 0 cell");
  if (out.pass) {
    out.detail = "worst gap " + Fmt(worst) + ", " + std::to_string(with_empty_positive_cells) +
                 " instances with p_i = 0 cells";
  }
  return out;
}

Outcome ApDominance(const std::vector<LabeledCells>& instances) {
  Outcome out;
  int checked = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].cells.size() > 6) continue;
    ++checked;
    // The best AP over all orderings bounds the AP of every ordering.
    const auto best = oracle::BestOrderingExhaustive(instances[i], oracle::Metric::kAp);
    const double bound = MaxAupr(SortCells(instances[i]));
    out.Check(best.exact.convert_to<double>() <= bound + 1e-12,
              "AP " + Fmt(best.value) + " above bound " + Fmt(bound) + " on instance " +
                  std::to_string(i));
  }
  if (out.pass) out.detail = std::to_string(checked) + " instances";
  return out;
}

Outcome Fig1EndToEnd() {
  Outcome out;
  const Graph g = testing::Fig1Residual();
  const auto positives = testing::Fig1Positives(g);
  const GeneratorSet gens = AutomorphismGenerators(g, Coloring::Uniform(g.num_nodes()));
  out.Check(gens.group_order == 8, "group order");
  out.Check(oracle::BruteAutomorphisms(g).size() == 8, "brute group order");
  const CellPartition part = GlobalOrbitPartition(g);
  std::multiset<std::size_t> sizes;
  for (const auto& b : part.blocks) sizes.insert(b.size());
  out.Check(sizes == std::multiset<std::size_t>{4, 4}, "orbit sizes");
  out.Check(part.blocks == oracle::BrutePairOrbits(g, part.pairs), "brute pair orbits");
  const LabeledCells cells = LabelCells(part, positives);
  std::multiset<Cell> got(cells.cells.begin(), cells.cells.end());
  out.Check(got == std::multiset<Cell>{{2, 2}, {1, 3}}, "labeled cells");
  const OrderedCells oc = SortCells(cells);
  out.Check(oracle::RocPairCount(oc) == oracle::Rational(19, 30), "oracle ROC");
  out.Check(MaxRoc(oc) == 19.0 / 30.0, "ROC " + Fmt(MaxRoc(oc)));
  const double expected = 1.0 / 3.0 + (1.0 + std::log(2.0)) / 12.0;
  out.Check(std::fabs(MaxAupr(oc) - expected) <= 1e-15, "AUPR " + Fmt(MaxAupr(oc)));
  out.Check(std::fabs(oracle::AuprNumeric(oc, 1e-12) - expected) <= 1e-9, "oracle AUPR");
  const LevelBounds level = BoundsForSplit(g, positives, 0, ExperimentConfig{}, 0);
  out.Check(level.bounds.max_roc == MaxRoc(oc), "pipeline ROC");
  if (out.pass) out.detail = "ROC " + Fmt(MaxRoc(oc)) + ", AUPR " + Fmt(MaxAupr(oc));
  return out;
}

std::vector<Graph> PropertyGraphs() {
  std::vector<Graph> graphs = {testing::Fig1Residual(), testing::Cycle(10),
                               testing::Asymmetric7(), testing::Star(6)};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    graphs.push_back(testing::RandomGraph(16, 0.2, seed % 2 == 1, 900 + seed));
  }
  return graphs;
}

bool Refines(const CellPartition& fine, const CellPartition& coarse) {
  std::map<PairRef, std::size_t> coarse_block;
  for (std::size_t b = 0; b < coarse.blocks.size(); ++b) {
    for (std::size_t i : coarse.blocks[b]) coarse_block[coarse.pairs[i]] = b;
  }
  for (const auto& block : fine.blocks) {
    const std::size_t target = coarse_block.at(fine.pairs[block.front()]);
    for (std::size_t i : block) {
      if (coarse_block.at(fine.pairs[i]) != target) return false;
    }
  }
  return true;
}

Outcome PropertySuites() {
  Outcome out;
  std::mt19937_64 rng(6);
  int checks = 0;

  // Relabeling invariance of the bounds at every level.
  for (const Graph& g : PropertyGraphs()) {
    std::mt19937_64 split_rng(MixSeed(1, g.num_nodes()));
    const EdgeRemoval removal = RemoveEdges(g, 0.25, split_rng);
    if (removal.positives.empty() || removal.residual.num_edges() == 0) continue;
    ExperimentConfig cfg;
    std::vector<LevelBounds> base;
    for (int k = 0; k <= 3; ++k) base.push_back(BoundsForSplit(removal.residual, removal.positives, k, cfg, 0));
    for (int trial = 0; trial < 100; ++trial) {
      const Permutation pi = testing::RandomPermutation(g.num_nodes(), rng);
      const Graph h = Permute(removal.residual, pi);
      std::vector<PairRef> moved;
      for (const PairRef& e : removal.positives) {
        moved.push_back(PairRef::Make(pi[e.a], pi[e.b], g.directed()));
      }
      for (int k = 0; k <= 3; ++k) {
        const LevelBounds level = BoundsForSplit(h, moved, k, cfg, 0);
        ++checks;
        out.Check(level.bounds.max_roc == base[k].bounds.max_roc &&
                      level.bounds.max_aupr == base[k].bounds.max_aupr &&
                      level.num_cells == base[k].num_cells,
                  "relabeling changed bounds at k=" + std::to_string(k));
      }
    }
  }

  // k-monotonicity on every trial of every graph.
  for (const Graph& g : PropertyGraphs()) {
    ExperimentConfig cfg;
    cfg.trials = 5;
    cfg.k_max = 5;
    cfg.stop_epsilon = 0;
    cfg.removal_prob = 0.2;
    const ExperimentResult result = RunExperiment(g, cfg);
    for (const TrialResult& t : result.trials) {
      double roc = 0, aupr = 0;
      for (const LevelBounds& level : t.per_k) {
        ++checks;
        out.Check(level.bounds.max_roc >= roc - 1e-12 && level.bounds.max_aupr >= aupr - 1e-12,
                  "bound decreased at k=" + std::to_string(level.k));
        out.Check(level.bounds.max_roc <= t.global.bounds.max_roc + 1e-12 &&
                      level.bounds.max_aupr <= t.global.bounds.max_aupr + 1e-12,
                  "k-hop bound above global at k=" + std::to_string(level.k));
        roc = level.bounds.max_roc;
        aupr = level.bounds.max_aupr;
      }
    }
  }

  // Refinement-chain containment.
  for (const Graph& g : PropertyGraphs()) {
    const CellPartition global = GlobalOrbitPartition(g);
    CellPartition previous = KhopPartition(g, 1);
    out.Check(Refines(global, previous), "global does not refine k=1");
    for (int k = 2; k <= 4; ++k) {
      CellPartition current = KhopPartition(g, k);
      ++checks;
      out.Check(Refines(current, previous), "k=" + std::to_string(k) + " does not refine k-1");
      out.Check(Refines(global, current), "global does not refine k=" + std::to_string(k));
      previous = std::move(current);
    }
  }

  // Canonical automorphism group against brute force for n <= 8.
  for (const Graph& g : testing::SmallCorpus()) {
    if (g.num_nodes() > 8) continue;
    const GeneratorSet gens = AutomorphismGenerators(g, Coloring::Uniform(g.num_nodes()));
    auto brute = oracle::BruteAutomorphisms(g);
    std::sort(brute.begin(), brute.end());
    ++checks;
    out.Check(oracle::GenerateGroup(gens.generators, g.num_nodes()) == brute,
              "automorphism group differs from brute force");
    out.Check(gens.group_order == brute.size(), "group order differs from brute force");
  }
  if (out.pass) out.detail = std::to_string(checks) + " checks";
  return out;
}

Outcome Determinism() {
  Outcome out;
  const Graph g = testing::RandomGraph(40, 0.1, false, 31);
  ExperimentConfig cfg;
  cfg.trials = 6;
  cfg.k_max = 3;
  cfg.master_seed = 17;
  cfg.downsample = 1.0;
  std::string reference;
  for (int threads : {1, 2, 4, 1}) {
    cfg.threads = threads;
    const ExperimentResult result = RunExperiment(g, cfg);
    nlohmann::json j = ExperimentJson(result, "random40", ConfigJson(cfg, false, false),
                                      RunManifest{});
    j.erase("manifest");
    j["config"].erase("threads");
    const std::string payload = j.dump();
    if (reference.empty()) {
      reference = payload;
    } else {
      out.Check(payload == reference,
                "payload differs with " + std::to_string(threads) + " threads");
    }
  }
  if (out.pass) out.detail = "identical payloads for 1, 2 and 4 threads";
  return out;
}

int RunGate() {
  Report(1, "appendix AP golden values", 1.0, AppendixGolden);
  const std::vector<LabeledCells> instances = OptimalityInstances();
  Report(2, "sorted order is ROC/AUPR optimal", 120.0,
         [&] { return OrderingOptimality(instances); });
  Report(3, "closed-form AUPR matches quadrature", 0, [&] {
    return ClosedFormVsQuadrature(instances);
  });
  Report(4, "AP never exceeds max AUPR", 0, [&] { return ApDominance(instances); });
  Report(5, "toy graph end to end", 1.0, Fig1EndToEnd);
  Report(6, "property suites", 0, PropertySuites);
  Report(9, "determinism across thread counts", 0, Determinism);
  return failures == 0 ? 0 : 1;
}

fs::path DatasetPath(const std::string& name) {
  return fs::path(LINKLIMITS_TEST_DATA) / "datasets" / (name + ".edges");
}

ExperimentResult RunGlobal(const Graph& g, int trials, std::optional<double> downsample) {
  ExperimentConfig cfg;
  cfg.trials = trials;
  cfg.k_max = 0;
  cfg.downsample = downsample;
  return RunExperiment(g, cfg);
}

int RunDatasets() {
  bool ran = false;
  const fs::path species = DatasetPath("species1_brain");
  const fs::path jazz = DatasetPath("jazz");
  if (fs::exists(species) && fs::exists(jazz)) {
    ran = true;
    Report(7, "desk-scale reproduction (Species 1 Brain, Jazz)", 0, [&] {
      Outcome out;
      const Graph s = LoadEdgeListFile(species.string(), LoadOptions{});
      const ExperimentResult rs = RunGlobal(s, 10, std::nullopt);
      const auto& sa = rs.summary.global.aupr.ci;
      out.Check(sa.mean == 1.0 && sa.halfwidth.value_or(1) == 0.0,
                "species mean " + Fmt(sa.mean));
      const Graph j = LoadEdgeListFile(jazz.string(), LoadOptions{});
      const ExperimentResult rj = RunGlobal(j, 10, std::nullopt);
      const double jm = rj.summary.global.aupr.ci.mean;
      out.Check(std::fabs(jm - 0.9979) <= 0.0024, "jazz mean " + Fmt(jm));
      if (out.pass) out.detail = "species " + Fmt(sa.mean) + ", jazz " + Fmt(jm);
      return out;
    });
  } else {
    std::printf("SKIP criterion 7: %s or %s not found\n", species.c_str(), jazz.c_str());
  }
  const fs::path cora = DatasetPath("cora");
  if (fs::exists(cora)) {
    ran = true;
    Report(8, "stretch reproduction (Cora)", 0, [&] {
      Outcome out;
      LoadOptions directed;
      directed.directed = true;
      const ExperimentResult rd = RunGlobal(LoadEdgeListFile(cora.string(), directed), 5,
                                            std::nullopt);
      const double dm = rd.summary.global.aupr.ci.mean;
      out.Check(std::fabs(dm - 0.9151) <= 0.042, "directed AUPR " + Fmt(dm));
      const ExperimentResult ru = RunGlobal(LoadEdgeListFile(cora.string(), LoadOptions{}), 5, 1.0);
      const double roc = ru.summary.global.roc.ci.mean;
      const double ap = ru.summary.global.ap_bound_downsampled->ci.mean;
      out.Check(std::fabs(roc - 0.99992) <= 1e-3, "undirected ROC " + Fmt(roc));
      out.Check(std::fabs(ap - 0.99999) <= 1e-3, "downsampled AP " + Fmt(ap));
      if (out.pass) {
        out.detail = "AUPR " + Fmt(dm) + ", ROC " + Fmt(roc) + ", AP " + Fmt(ap);
      }
      return out;
    });
  } else {
    std::printf("SKIP criterion 8: %s not found\n", cora.c_str());
  }
  if (!ran) return 77;
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace linklimits

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "--gate";
  if (mode == "--gate") return linklimits::RunGate();
  if (mode == "--datasets") return linklimits::RunDatasets();
  std::fprintf(stderr, "usage: %s [--gate|--datasets]\n", argv[0]);
  return 2;
}
