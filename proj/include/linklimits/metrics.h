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

// Maximal ROC / AUPR / AP for a labeled cell partition.
//
// Within a cell every pair gets the same score, so the best any classifier
// can do is rank cells by positive density p/t. Given that order with
// cumulative sums P_i, N_i, T_i:
//
//   max ROC  = sum_i p_i (2N - N_i - N_{i-1}) / (2 N P)
//   max AUPR = sum_i (p_i/P)(p_i/t_i)(1 + (P_{i-1}/p_i - T_{i-1}/t_i) ln(T_i/T_{i-1}))
//
// The AUPR term integrates precision along the hyperbolic segment traced by
// randomly mixing two adjacent threshold classifiers; the i = 1 term is the
// T_0 -> 0 limit (p_1/P)(p_1/t_1). AP uses the right endpoint's precision on
// each segment and is bounded above by max AUPR for every ordering.

#ifndef LINKLIMITS_METRICS_H_
#define LINKLIMITS_METRICS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linklimits/partition.h"

namespace linklimits {

struct OrderedCells {
  std::vector<Cell> cells;
  // Prefix sums with a leading zero: cum_p[i] = p_1 + ... + p_i.
  std::vector<std::int64_t> cum_p{0};
  std::vector<std::int64_t> cum_n{0};
  std::vector<std::int64_t> cum_t{0};

  std::size_t size() const { return cells.size(); }
  std::int64_t P() const { return cum_p.back(); }
  std::int64_t N() const { return cum_n.back(); }
  std::int64_t T() const { return cum_t.back(); }
};

// Density-descending order with equal-density cells merged. Throws
// DegenerateInputError when there are no positives or no negatives and
// InputError on invalid cells.
OrderedCells SortCells(const LabeledCells& cells);

// Keeps the given order (no sorting, no merging). Throws InputError on
// invalid cells.
OrderedCells InGivenOrder(const LabeledCells& cells);

double MaxRoc(const OrderedCells& oc);
double MaxAupr(const OrderedCells& oc);

// sum_i (p_i/P)(P_i/T_i) over the order given. Requires P >= 1.
double AveragePrecision(const OrderedCells& oc);
inline double AveragePrecision(const LabeledCells& cells) {
  return AveragePrecision(InGivenOrder(cells));
}

struct ApBound {
  double bound = 0;            // max AUPR; dominates AP under any order
  double sorted_order_ap = 0;  // AP of the density order, a lower witness
};
ApBound MaxApBound(const OrderedCells& oc);

// Keeps round(P / ratio) negatives drawn uniformly without replacement from
// all cells; ratio is positives per negative (1 for the usual 1:1 setting).
// Cells left empty are dropped. Throws InputError when there are not enough
// negatives or ratio <= 0.
LabeledCells DownsampleNegatives(const LabeledCells& cells, double ratio,
                                 std::mt19937_64& rng);

struct PrPoint {
  double recall = 0;
  std::optional<double> precision;  // undefined at recall 0 before any pick
};

struct CurvePoints {
  std::vector<std::pair<double, double>> roc;  // (fpr, tpr)
  std::vector<PrPoint> pr;
  std::string pr_interpolation = "hyperbolic";  // never linear
};
CurvePoints ComputeCurvePoints(const OrderedCells& oc);

struct BoundReport {
  bool defined = false;
  std::string undefined_reason;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::size_t num_cells = 0;  // after merging equal densities
  double max_roc = 0;
  double max_aupr = 0;
  double max_ap = 0;
  double sorted_order_ap = 0;
  CurvePoints curve;
};

// Never throws DegenerateInputError; reports it through `defined`.
BoundReport ComputeBounds(const LabeledCells& cells);

// Uniform double in [0, 1) from the top 53 bits.
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace linklimits

#endif  // LINKLIMITS_METRICS_H_
