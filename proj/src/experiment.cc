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

#include "linklimits/experiment.h"

#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <chrono>
#include <cmath>

#include "linklimits/errors.h"

namespace linklimits {

void ExperimentConfig::Validate() const {
  if (!(removal_prob > 0.0 && removal_prob < 1.0)) {
    throw InputError("removal probability must be in (0, 1)");
  }
  if (trials < 1) throw InputError("need at least one trial");
  if (k_max < 0) throw InputError("k_max must be non-negative");
  if (!(stop_epsilon >= 0.0)) throw InputError("stop epsilon must be non-negative");
  if (downsample && !(*downsample > 0.0)) throw InputError("downsample ratio must be positive");
  if (max_redraws < 0) throw InputError("max_redraws must be non-negative");
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EdgeRemoval RemoveEdges(const Graph& g, double p, std::mt19937_64& rng) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("removal probability must be in (0, 1)");
  EdgeRemoval out;
  for (const auto& [a, b] : g.edges()) {
    if (UniformUnit(rng) < p) out.positives.push_back(PairRef{a, b, g.directed()});
  }
  out.residual = WithoutEdges(g, out.positives);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

constexpr std::uint64_t kDownsampleStream = 0x5eed0000ULL;

}  // namespace

LevelBounds BoundsForSplit(const Graph& residual, std::span<const PairRef> positives,
                           int k, const ExperimentConfig& cfg,
                           std::uint64_t downsample_seed) {
  PartitionOptions options;
  options.hop_direction = cfg.hop_direction;
  options.canonical = cfg.canonical;
  options.threads = cfg.threads;
  CellPartition part;
  if (k == 0) {
    part = GlobalOrbitPartition(residual, options);
  } else if (cfg.approx_wl) {
    part = ApproxWlPartition(residual, k, options);
  } else {
    part = KhopPartition(residual, k, options);
  }
  const LabeledCells cells = LabelCells(part, positives);
  LevelBounds level;
  level.k = k;
  level.num_cells = part.blocks.size();
  level.bounds = ComputeBounds(cells);
  if (cfg.downsample) {
    std::mt19937_64 rng(MixSeed(downsample_seed, kDownsampleStream + static_cast<std::uint64_t>(k)));
    level.downsampled = ComputeBounds(DownsampleNegatives(cells, *cfg.downsample, rng));
  }
  return level;
}

TrialResult RunTrial(const Graph& g, const ExperimentConfig& cfg, int trial_index) {
  cfg.Validate();
  if (g.TotalPairCount() == g.num_edges()) {
    throw DegenerateInputError("graph has no non-edges, so there are no negatives");
  }
  TrialResult result;
  result.trial_index = trial_index;
  const std::uint64_t trial_seed = MixSeed(cfg.master_seed, static_cast<std::uint64_t>(trial_index));

  auto start = Clock::now();
  EdgeRemoval removal;
  for (int attempt = 0;; ++attempt) {
    if (attempt > cfg.max_redraws) {
      throw DegenerateInputError("every draw removed no edges or all edges after " +
                                 std::to_string(cfg.max_redraws) + " redraws");
    }
    result.seed = MixSeed(trial_seed, static_cast<std::uint64_t>(attempt));
    std::mt19937_64 rng(result.seed);
    removal = RemoveEdges(g, cfg.removal_prob, rng);
    if (!removal.positives.empty() && removal.residual.num_edges() > 0) break;
    ++result.redraws;
  }
  result.positives = static_cast<std::int64_t>(removal.positives.size());
  result.negatives = static_cast<std::int64_t>(g.TotalPairCount() - g.num_edges());
  result.timings["remove_edges"] = Seconds(start);

  start = Clock::now();
  result.global = BoundsForSplit(removal.residual, removal.positives, 0, cfg, result.seed);
  result.timings["global"] = Seconds(start);

  for (int k = 1; k <= cfg.k_max; ++k) {
    start = Clock::now();
    result.per_k.push_back(BoundsForSplit(removal.residual, removal.positives, k, cfg, result.seed));
    result.timings["k" + std::to_string(k)] = Seconds(start);
    result.k_stop = k;
    const double gap = std::fabs(result.per_k.back().bounds.max_aupr - result.global.bounds.max_aupr);
    if (gap <= cfg.stop_epsilon) break;
  }
  return result;
}

ConfidenceInterval NormalConfidenceInterval(const std::vector<double>& samples) {
  if (samples.empty()) throw InputError("confidence interval of no samples");
  ConfidenceInterval ci;
  long double sum = 0;
  for (double x : samples) sum += x;
  const long double m = static_cast<long double>(samples.size());
  ci.mean = static_cast<double>(sum / m);
  if (samples.size() > 1) {
    long double squares = 0;
    for (double x : samples) squares += (x - ci.mean) * (x - ci.mean);
    const long double s = std::sqrt(squares / (m - 1));
    ci.halfwidth = static_cast<double>(1.96L * s / std::sqrt(m));
  }
  return ci;
}

namespace {

Statistic MakeStatistic(std::vector<double> samples) {
  Statistic stat;
  stat.ci = NormalConfidenceInterval(samples);
  stat.samples = std::move(samples);
  return stat;
}

LevelSummary SummarizeLevel(int k, const std::vector<const LevelBounds*>& levels) {
  LevelSummary summary;
  summary.k = k;
  summary.trials_reached = levels.size();
  std::vector<double> roc, aupr, ap, ap_down;
  for (const LevelBounds* level : levels) {
    if (!level->bounds.defined) continue;
    roc.push_back(level->bounds.max_roc);
    aupr.push_back(level->bounds.max_aupr);
    ap.push_back(level->bounds.max_ap);
    if (level->downsampled && level->downsampled->defined) {
      ap_down.push_back(level->downsampled->max_ap);
    }
  }
  if (!roc.empty()) {
    summary.roc = MakeStatistic(std::move(roc));
    summary.aupr = MakeStatistic(std::move(aupr));
    summary.ap_bound = MakeStatistic(std::move(ap));
  }
  if (!ap_down.empty()) summary.ap_bound_downsampled = MakeStatistic(std::move(ap_down));
  return summary;
}

}  // namespace

BoundSummary Summarize(const std::vector<TrialResult>& trials) {
  BoundSummary summary;
  std::vector<const LevelBounds*> global;
  int deepest = 0;
  for (const TrialResult& t : trials) {
    global.push_back(&t.global);
    deepest = std::max(deepest, static_cast<int>(t.per_k.size()));
  }
  summary.global = SummarizeLevel(0, global);
  for (int k = 1; k <= deepest; ++k) {
    std::vector<const LevelBounds*> reached;
    for (const TrialResult& t : trials) {
      if (static_cast<int>(t.per_k.size()) >= k) reached.push_back(&t.per_k[k - 1]);
    }
    summary.per_k.push_back(SummarizeLevel(k, reached));
  }
  return summary;
}

ExperimentResult RunExperiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.Validate();
  std::optional<tbb::global_control> limit;
  if (cfg.threads > 0) {
    limit.emplace(tbb::global_control::max_allowed_parallelism,
                  static_cast<std::size_t>(cfg.threads));
  }
  ExperimentResult result;
  result.trials.resize(cfg.trials);
  tbb::parallel_for(0, cfg.trials, [&](int i) { result.trials[i] = RunTrial(g, cfg, i); });
  for (const TrialResult& t : result.trials) result.total_redraws += t.redraws;
  result.summary = Summarize(result.trials);
  return result;
}

}  // namespace linklimits
