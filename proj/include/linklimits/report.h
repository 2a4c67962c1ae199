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

// File formats: cells CSV, partition CSV (see partition.h), result JSON and
// the per-trial plot CSV.

#ifndef LINKLIMITS_REPORT_H_
#define LINKLIMITS_REPORT_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "linklimits/experiment.h"
#include "linklimits/metrics.h"

namespace linklimits {

inline constexpr char kToolVersion[] = "0.1.0";

std::string Sha256Hex(std::string_view bytes);

struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string graph_path;
  std::string graph_sha256;
  nlohmann::json config;
  double wall_clock_seconds = 0;
  std::map<std::string, double> stage_timings;
};

// Rows "p,n"; blank lines and '#' comments skipped, an optional "p,n" header
// accepted. Throws ParseError on malformed rows or negative counts and
// InputError on an empty file.
LabeledCells ReadCellsCsv(std::istream& in);
void WriteCellsCsv(std::ostream& out, const LabeledCells& cells);

nlohmann::json ConfigJson(const ExperimentConfig& cfg, bool directed, bool include_self_loops);
nlohmann::json BoundReportJson(const BoundReport& report);
nlohmann::json ManifestJson(const RunManifest& manifest);

// { graph, config, per_k: [...], global, trials, redraws, trial_details,
//   manifest }. Everything except "manifest" is a pure function of the
// inputs.
nlohmann::json ExperimentJson(const ExperimentResult& result, const std::string& graph_name,
                              const nlohmann::json& config, const RunManifest& manifest);

// Header "k,trial,aupr_bound"; the global level is written with k = "inf".
void WritePlotCsv(std::ostream& out, const ExperimentResult& result);

}  // namespace linklimits

#endif  // LINKLIMITS_REPORT_H_
