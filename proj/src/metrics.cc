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

#include "linklimits/metrics.h"

#include <algorithm>
#include <cmath>

#include "linklimits/errors.h"

namespace linklimits {

namespace {

void Accumulate(OrderedCells* oc) {
  oc->cum_p.assign(1, 0);
  oc->cum_n.assign(1, 0);
  oc->cum_t.assign(1, 0);
  for (const Cell& c : oc->cells) {
    oc->cum_p.push_back(oc->cum_p.back() + c.p);
    oc->cum_n.push_back(oc->cum_n.back() + c.n);
    oc->cum_t.push_back(oc->cum_t.back() + c.t());
  }
}

// Sign of p_x/t_x - p_y/t_y.
int CompareDensity(const Cell& x, const Cell& y) {
  const __int128 lhs = static_cast<__int128>(x.p) * y.t();
  const __int128 rhs = static_cast<__int128>(y.p) * x.t();
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

void RequirePositives(const OrderedCells& oc) {
  if (oc.P() < 1) throw DegenerateInputError("no positives: metric undefined");
}

}  // namespace

OrderedCells InGivenOrder(const LabeledCells& cells) {
  cells.Validate();
  if (cells.cells.empty()) throw InputError("no cells");
  OrderedCells oc;
  oc.cells = cells.cells;
  Accumulate(&oc);
  return oc;
}

OrderedCells SortCells(const LabeledCells& cells) {
  cells.Validate();
  if (cells.cells.empty()) throw InputError("no cells");
  std::vector<Cell> sorted = cells.cells;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Cell& x, const Cell& y) {
    return CompareDensity(x, y) > 0;
  });
  OrderedCells oc;
  for (const Cell& c : sorted) {
    if (!oc.cells.empty() && CompareDensity(oc.cells.back(), c) == 0) {
      oc.cells.back().p += c.p;
      oc.cells.back().n += c.n;
    } else {
      oc.cells.push_back(c);
    }
  }
  Accumulate(&oc);
  if (oc.P() < 1) throw DegenerateInputError("no positives: bounds undefined");
  if (oc.N() < 1) throw DegenerateInputError("no negatives: bounds undefined");
  return oc;
}

double MaxRoc(const OrderedCells& oc) {
  RequirePositives(oc);
  if (oc.N() < 1) throw DegenerateInputError("no negatives: ROC undefined");
  const __int128 two_n = 2 * static_cast<__int128>(oc.N());
  __int128 numerator = 0;
  for (std::size_t i = 0; i < oc.size(); ++i) {
    numerator += static_cast<__int128>(oc.cells[i].p) *
                 (two_n - oc.cum_n[i + 1] - oc.cum_n[i]);
  }
  const __int128 denominator = two_n * oc.P();
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

double MaxAupr(const OrderedCells& oc) {
  RequirePositives(oc);
  const long double total_p = static_cast<long double>(oc.P());
  long double sum = 0;
  for (std::size_t i = 0; i < oc.size(); ++i) {
    const Cell& c = oc.cells[i];
    if (c.p == 0) continue;
    const long double p = static_cast<long double>(c.p);
    const long double t = static_cast<long double>(c.t());
    long double term = 1;
    if (oc.cum_t[i] > 0) {
      const long double prev_p = static_cast<long double>(oc.cum_p[i]);
      const long double prev_t = static_cast<long double>(oc.cum_t[i]);
      term += (prev_p / p - prev_t / t) * std::log1p(t / prev_t);
    }
    sum += (p / total_p) * (p / t) * term;
  }
  return static_cast<double>(sum);
}

double AveragePrecision(const OrderedCells& oc) {
  RequirePositives(oc);
  const long double total_p = static_cast<long double>(oc.P());
  long double sum = 0;
  for (std::size_t i = 0; i < oc.size(); ++i) {
    if (oc.cells[i].p == 0) continue;
    sum += (static_cast<long double>(oc.cells[i].p) / total_p) *
           (static_cast<long double>(oc.cum_p[i + 1]) /
            static_cast<long double>(oc.cum_t[i + 1]));
  }
  return static_cast<double>(sum);
}

ApBound MaxApBound(const OrderedCells& oc) {
  return ApBound{MaxAupr(oc), AveragePrecision(oc)};
}

LabeledCells DownsampleNegatives(const LabeledCells& cells, double ratio,
                                 std::mt19937_64& rng) {
  cells.Validate();
  if (!(ratio > 0)) throw InputError("downsampling ratio must be positive");
  const std::int64_t total_n = cells.TotalNegatives();
  const std::int64_t target = std::llround(static_cast<double>(cells.TotalPositives()) / ratio);
  if (target > total_n) {
    throw InputError("downsampling needs " + std::to_string(target) +
                     " negatives, only " + std::to_string(total_n) + " available");
  }
  // Selection sampling over the concatenated negatives. Once `needed` hits
  // zero the rest are skipped, so `remaining` need not be tracked further.
  std::int64_t needed = target;
  std::int64_t remaining = total_n;
  LabeledCells out;
  for (const Cell& c : cells.cells) {
    Cell kept{c.p, 0};
    for (std::int64_t j = 0; j < c.n && needed > 0; ++j, --remaining) {
      if (UniformUnit(rng) * static_cast<double>(remaining) < static_cast<double>(needed)) {
        ++kept.n;
        --needed;
      }
    }
    if (kept.t() > 0) out.cells.push_back(kept);
  }
  return out;
}

CurvePoints ComputeCurvePoints(const OrderedCells& oc) {
  RequirePositives(oc);
  if (oc.N() < 1) throw DegenerateInputError("no negatives: ROC undefined");
  CurvePoints curve;
  const double total_p = static_cast<double>(oc.P());
  const double total_n = static_cast<double>(oc.N());
  for (std::size_t j = 0; j <= oc.size(); ++j) {
    curve.roc.emplace_back(static_cast<double>(oc.cum_n[j]) / total_n,
                           static_cast<double>(oc.cum_p[j]) / total_p);
    PrPoint point;
    point.recall = static_cast<double>(oc.cum_p[j]) / total_p;
    if (oc.cum_t[j] > 0) {
      point.precision = static_cast<double>(oc.cum_p[j]) / static_cast<double>(oc.cum_t[j]);
    }
    curve.pr.push_back(point);
  }
  return curve;
}

BoundReport ComputeBounds(const LabeledCells& cells) {
  BoundReport report;
  report.positives = cells.TotalPositives();
  report.negatives = cells.TotalNegatives();
  try {
    const OrderedCells oc = SortCells(cells);
    report.num_cells = oc.size();
    report.max_roc = MaxRoc(oc);
    const ApBound ap = MaxApBound(oc);
    report.max_aupr = ap.bound;
    report.max_ap = ap.bound;
    report.sorted_order_ap = ap.sorted_order_ap;
    report.curve = ComputeCurvePoints(oc);
    report.defined = true;
  } catch (const DegenerateInputError& e) {
    report.defined = false;
    report.undefined_reason = e.what();
  }
  return report;
}

}  // namespace linklimits
