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

// Randomized held-out-edge trials: remove each edge with probability p, bound
// the residual graph's non-edge cells globally and for k = 1, 2, ... hops,
// stop once the k-hop AUPR bound is within epsilon of the global one, and
// aggregate trials into means with 95% normal-approximation intervals.

#ifndef LINKLIMITS_EXPERIMENT_H_
#define LINKLIMITS_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linklimits/graph.h"
#include "linklimits/metrics.h"
#include "linklimits/partition.h"

namespace linklimits {

struct ExperimentConfig {
  double removal_prob = 0.1;
  int trials = 10;
  std::uint64_t master_seed = 0;
  int k_max = 8;
  double stop_epsilon = 0.005;
  // Positives per kept negative; unset disables the downsampled AP column.
  std::optional<double> downsample;
  HopDirection hop_direction = HopDirection::kIgnore;
  bool approx_wl = false;
  int threads = 0;
  int max_redraws = 1000;
  CanonicalOptions canonical;

  // Throws InputError on out-of-range values.
  void Validate() const;
};

// Fixed public mixing function for per-trial seeds (splitmix64 finalizer).
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index);

struct EdgeRemoval {
  Graph residual;
  std::vector<PairRef> positives;
};

// Removes each edge independently with probability p.
EdgeRemoval RemoveEdges(const Graph& g, double p, std::mt19937_64& rng);

struct LevelBounds {
  int k = 0;  // 0 marks the global (whole-graph) level
  std::size_t num_cells = 0;
  BoundReport bounds;
  std::optional<BoundReport> downsampled;
};

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;  // seed of the accepted draw
  int redraws = 0;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  LevelBounds global;
  std::vector<LevelBounds> per_k;
  int k_stop = 0;
  // Wall-clock seconds; not part of the deterministic payload.
  std::map<std::string, double> timings;
};

// Bounds for one fixed split: `residual` with held-out `positives`.
LevelBounds BoundsForSplit(const Graph& residual, std::span<const PairRef> positives,
                           int k, const ExperimentConfig& cfg, std::uint64_t downsample_seed);

TrialResult RunTrial(const Graph& g, const ExperimentConfig& cfg, int trial_index);

struct ConfidenceInterval {
  double mean = 0;
  std::optional<double> halfwidth;  // unset for a single sample
};
// mean +- 1.96 s / sqrt(m) with s the sample standard deviation.
ConfidenceInterval NormalConfidenceInterval(const std::vector<double>& samples);

struct Statistic {
  ConfidenceInterval ci;
  std::vector<double> samples;
};

struct LevelSummary {
  int k = 0;
  std::size_t trials_reached = 0;
  Statistic roc;
  Statistic aupr;
  Statistic ap_bound;
  std::optional<Statistic> ap_bound_downsampled;
};

struct BoundSummary {
  LevelSummary global;
  std::vector<LevelSummary> per_k;
};

struct ExperimentResult {
  std::vector<TrialResult> trials;
  BoundSummary summary;
  int total_redraws = 0;
};

BoundSummary Summarize(const std::vector<TrialResult>& trials);

// Trials run in parallel; the result does not depend on scheduling.
ExperimentResult RunExperiment(const Graph& g, const ExperimentConfig& cfg);

}  // namespace linklimits

#endif  // LINKLIMITS_EXPERIMENT_H_
