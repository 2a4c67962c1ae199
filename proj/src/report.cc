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

#include "linklimits/report.h"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <memory>
#include <sstream>

#include "linklimits/errors.h"

namespace linklimits {

std::string Sha256Hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::int64_t ParseCount(const std::string& field, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "'" + field + "' is not an integer count");
  }
  if (value < 0) throw ParseError(line_no, "negative count " + field);
  return value;
}

nlohmann::json StatisticJson(const Statistic& stat) {
  return {{"mean", stat.ci.mean},
          {"ci", stat.ci.halfwidth.value_or(0.0)},
          {"ci_defined", stat.ci.halfwidth.has_value()},
          {"samples", stat.samples}};
}

nlohmann::json LevelJson(const LevelSummary& level) {
  nlohmann::json j = {{"k", level.k},
                      {"trials_reached", level.trials_reached},
                      {"roc", StatisticJson(level.roc)},
                      {"aupr", StatisticJson(level.aupr)},
                      {"ap_bound", StatisticJson(level.ap_bound)}};
  if (level.ap_bound_downsampled) {
    j["ap_bound_downsampled"] = StatisticJson(*level.ap_bound_downsampled);
  }
  return j;
}

nlohmann::json LevelBoundsJson(const LevelBounds& level) {
  nlohmann::json j = {{"k", level.k},
                      {"cells", level.num_cells},
                      {"roc", level.bounds.max_roc},
                      {"aupr", level.bounds.max_aupr},
                      {"ap_bound", level.bounds.max_ap},
                      {"defined", level.bounds.defined}};
  if (level.downsampled) j["ap_bound_downsampled"] = level.downsampled->max_ap;
  return j;
}

}  // namespace

LabeledCells ReadCellsCsv(std::istream& in) {
  LabeledCells cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = Trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw ParseError(line_no, "expected 'p,n'");
    }
    const std::string p = Trim(std::string_view(row).substr(0, comma));
    const std::string n = Trim(std::string_view(row).substr(comma + 1));
    if (cells.cells.empty() && p == "p" && n == "n") continue;
    Cell cell{ParseCount(p, line_no), ParseCount(n, line_no)};
    if (cell.t() == 0) throw ParseError(line_no, "empty cell (0,0)");
    cells.cells.push_back(cell);
  }
  if (cells.cells.empty()) throw InputError("cells file has no rows");
  return cells;
}

void WriteCellsCsv(std::ostream& out, const LabeledCells& cells) {
  out << "p,n\n";
  for (const Cell& c : cells.cells) out << c.p << ',' << c.n << '\n';
}

nlohmann::json ConfigJson(const ExperimentConfig& cfg, bool directed, bool include_self_loops) {
  nlohmann::json j = {
      {"p", cfg.removal_prob},
      {"trials", cfg.trials},
      {"seed", cfg.master_seed},
      {"k_max", cfg.k_max},
      {"stop_epsilon", cfg.stop_epsilon},
      {"directed", directed},
      {"include_self_loops", include_self_loops},
      {"respect_direction_in_hops", cfg.hop_direction == HopDirection::kFollow},
      {"approx_wl", cfg.approx_wl},
      {"stop_metric", "aupr"},
      {"ci", "normal 1.96*s/sqrt(m)"},
  };
  j["downsample"] = cfg.downsample ? nlohmann::json(*cfg.downsample) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json BoundReportJson(const BoundReport& report) {
  nlohmann::json j = {{"defined", report.defined},
                      {"positives", report.positives},
                      {"negatives", report.negatives}};
  if (!report.defined) {
    j["reason"] = report.undefined_reason;
    return j;
  }
  j["cells"] = report.num_cells;
  j["max_roc"] = report.max_roc;
  j["max_aupr"] = report.max_aupr;
  j["max_ap_bound"] = report.max_ap;
  j["ap_sorted_order"] = report.sorted_order_ap;
  nlohmann::json roc = nlohmann::json::array();
  for (const auto& [fpr, tpr] : report.curve.roc) roc.push_back({fpr, tpr});
  nlohmann::json pr = nlohmann::json::array();
  for (const PrPoint& point : report.curve.pr) {
    pr.push_back({point.recall, point.precision ? nlohmann::json(*point.precision)
                                                : nlohmann::json(nullptr)});
  }
  j["curve"] = {{"roc_points", roc},
                {"pr_points", pr},
                {"pr_interpolation", report.curve.pr_interpolation}};
  return j;
}

nlohmann::json ManifestJson(const RunManifest& manifest) {
  return {{"tool_version", manifest.tool_version},
          {"graph_path", manifest.graph_path},
          {"graph_sha256", manifest.graph_sha256},
          {"config", manifest.config},
          {"wall_clock_seconds", manifest.wall_clock_seconds},
          {"stage_timings", manifest.stage_timings}};
}

nlohmann::json ExperimentJson(const ExperimentResult& result, const std::string& graph_name,
                              const nlohmann::json& config, const RunManifest& manifest) {
  nlohmann::json per_k = nlohmann::json::array();
  for (const LevelSummary& level : result.summary.per_k) per_k.push_back(LevelJson(level));
  nlohmann::json details = nlohmann::json::array();
  for (const TrialResult& t : result.trials) {
    nlohmann::json levels = nlohmann::json::array();
    for (const LevelBounds& level : t.per_k) levels.push_back(LevelBoundsJson(level));
    details.push_back({{"trial", t.trial_index},
                       {"seed", t.seed},
                       {"redraws", t.redraws},
                       {"positives", t.positives},
                       {"negatives", t.negatives},
                       {"k_stop", t.k_stop},
                       {"global", LevelBoundsJson(t.global)},
                       {"per_k", levels}});
  }
  return {{"graph", graph_name},
          {"config", config},
          {"per_k", per_k},
          {"global", LevelJson(result.summary.global)},
          {"trials", result.trials.size()},
          {"redraws", result.total_redraws},
          {"trial_details", details},
          {"manifest", ManifestJson(manifest)}};
}

void WritePlotCsv(std::ostream& out, const ExperimentResult& result) {
  out << "k,trial,aupr_bound\n";
  char buf[32];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const TrialResult& t : result.trials) {
    for (const LevelBounds& level : t.per_k) {
      out << level.k << ',' << t.trial_index << ',' << fmt(level.bounds.max_aupr) << '\n';
    }
    out << "inf," << t.trial_index << ',' << fmt(t.global.bounds.max_aupr) << '\n';
  }
}

}  // namespace linklimits
