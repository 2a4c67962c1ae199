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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "linklimits/errors.h"
#include "linklimits/oracle.h"
#include "test_graphs.h"

namespace linklimits {
namespace {

LabeledCells Cells(std::vector<Cell> c) { return LabeledCells{std::move(c)}; }

// The toy split: one cell of two positives and two negatives, one of one and
// three.
LabeledCells Fig1Cells() { return Cells({{1, 3}, {2, 2}}); }
LabeledCells AppendixCells() { return Cells({{10, 0}, {2, 2}, {9, 7}}); }

TEST(SortCellsTest, OrdersByDensityAndMergesTies) {
  const OrderedCells oc = SortCells(Cells({{1, 3}, {2, 2}, {1, 1}, {3, 0}}));
  ASSERT_EQ(oc.size(), 3u);
  EXPECT_EQ(oc.cells[0], (Cell{3, 0}));
  EXPECT_EQ(oc.cells[1], (Cell{3, 3}));
  EXPECT_EQ(oc.cells[2], (Cell{1, 3}));
  EXPECT_EQ(oc.cum_p, (std::vector<std::int64_t>{0, 3, 6, 7}));
  EXPECT_EQ(oc.cum_t, (std::vector<std::int64_t>{0, 3, 9, 13}));
}

TEST(SortCellsTest, KeepsPositiveFreeCellsLast) {
  const OrderedCells oc = SortCells(Cells({{0, 4}, {1, 1}}));
  EXPECT_EQ(oc.cells.back(), (Cell{0, 4}));
}

TEST(SortCellsTest, DegenerateInputsThrow) {
  EXPECT_THROW(SortCells(Cells({{0, 3}})), DegenerateInputError);
  EXPECT_THROW(SortCells(Cells({{3, 0}})), DegenerateInputError);
  EXPECT_THROW(SortCells(Cells({})), InputError);
  EXPECT_THROW(SortCells(Cells({{-1, 3}})), InputError);
}

TEST(MaxRocTest, ToySplit) {
  const OrderedCells oc = SortCells(Fig1Cells());
  EXPECT_DOUBLE_EQ(MaxRoc(oc), 19.0 / 30.0);
  EXPECT_EQ(oracle::RocPairCount(oc), oracle::Rational(19, 30));
}

TEST(MaxRocTest, PerfectAndUninformative) {
  EXPECT_DOUBLE_EQ(MaxRoc(SortCells(Cells({{4, 0}, {0, 9}}))), 1.0);
  EXPECT_DOUBLE_EQ(MaxRoc(SortCells(Cells({{4, 9}}))), 0.5);
}

TEST(MaxAuprTest, ToySplitClosedForm) {
  const OrderedCells oc = SortCells(Fig1Cells());
  const double expected = 1.0 / 3.0 + (1.0 / 12.0) * (1.0 + std::log(2.0));
  EXPECT_NEAR(MaxAupr(oc), expected, 1e-15);
  EXPECT_NEAR(oracle::AuprNumeric(oc, 1e-12), expected, 1e-10);
}

TEST(MaxAuprTest, SingleCellIsPrevalence) {
  EXPECT_NEAR(MaxAupr(SortCells(Cells({{3, 7}}))), 0.3, 1e-15);
}

TEST(MaxAuprTest, PerfectSeparation) {
  EXPECT_NEAR(MaxAupr(SortCells(Cells({{5, 0}, {0, 7}}))), 1.0, 1e-15);
}

TEST(AveragePrecisionTest, AppendixOrdersDisagree) {
  const double listed = AveragePrecision(AppendixCells());
  const OrderedCells sorted = SortCells(AppendixCells());
  const double sorted_ap = AveragePrecision(sorted);
  EXPECT_NEAR(listed, 10.0 / 21 + (2.0 / 21) * (12.0 / 14) + (9.0 / 21) * (21.0 / 30), 1e-15);
  EXPECT_NEAR(listed, 0.857823, 1e-6);
  EXPECT_NEAR(sorted_ap, 0.856044, 1e-6);
  EXPECT_GT(listed, sorted_ap);
  // The density order is not AP-optimal, but max AUPR still bounds AP.
  const auto best = oracle::BestOrderingExhaustive(AppendixCells(), oracle::Metric::kAp);
  EXPECT_GE(best.value, listed - 1e-15);
  EXPECT_LE(best.value, MaxApBound(sorted).bound);
  EXPECT_NEAR(sorted_ap, oracle::ApRightmost(sorted).convert_to<double>(), 1e-15);
}

TEST(OptimalityTest, SortedOrderMatchesExhaustiveSearch) {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 200; ++instance) {
    const LabeledCells cells = testing::RandomCells(rng, 5, 12);
    const OrderedCells oc = SortCells(cells);
    const auto roc = oracle::BestOrderingExhaustive(cells, oracle::Metric::kRoc);
    EXPECT_EQ(oracle::RocPairCount(oc), roc.exact);
    EXPECT_NEAR(MaxRoc(oc), roc.value, 1e-15);
    const auto aupr = oracle::BestOrderingExhaustive(cells, oracle::Metric::kAupr);
    EXPECT_NEAR(MaxAupr(oc), aupr.value, 1e-8);
    const auto ap = oracle::BestOrderingExhaustive(cells, oracle::Metric::kAp);
    EXPECT_LE(ap.value, MaxAupr(oc) + 1e-12);
  }
}

TEST(InvarianceTest, ScalingCountsKeepsBounds) {
  std::mt19937_64 rng(9);
  for (int instance = 0; instance < 50; ++instance) {
    const LabeledCells cells = testing::RandomCells(rng, 6, 20);
    LabeledCells scaled = cells;
    for (Cell& c : scaled.cells) {
      c.p *= 7;
      c.n *= 7;
    }
    const OrderedCells a = SortCells(cells);
    const OrderedCells b = SortCells(scaled);
    EXPECT_NEAR(MaxRoc(a), MaxRoc(b), 1e-14);
    EXPECT_NEAR(MaxAupr(a), MaxAupr(b), 1e-12);
    EXPECT_NEAR(AveragePrecision(a), AveragePrecision(b), 1e-14);
  }
}

TEST(InvarianceTest, PermutingInputOrderKeepsBounds) {
  std::mt19937_64 rng(10);
  for (int instance = 0; instance < 50; ++instance) {
    LabeledCells cells = testing::RandomCells(rng, 6, 20);
    const BoundReport before = ComputeBounds(cells);
    std::shuffle(cells.cells.begin(), cells.cells.end(), rng);
    const BoundReport after = ComputeBounds(cells);
    EXPECT_EQ(before.max_roc, after.max_roc);
    EXPECT_EQ(before.max_aupr, after.max_aupr);
  }
}

TEST(MonotonicityTest, SplittingCellsNeverLowersBounds) {
  std::mt19937_64 rng(11);
  for (int instance = 0; instance < 300; ++instance) {
    const LabeledCells coarse = testing::RandomCells(rng, 5, 15);
    LabeledCells fine;
    for (const Cell& c : coarse.cells) {
      if (c.t() < 2) {
        fine.cells.push_back(c);
        continue;
      }
      std::uniform_int_distribution<std::int64_t> take_p(0, c.p);
      std::uniform_int_distribution<std::int64_t> take_n(0, c.n);
      Cell left{take_p(rng), take_n(rng)};
      Cell right{c.p - left.p, c.n - left.n};
      if (left.t() == 0 || right.t() == 0) {
        fine.cells.push_back(c);
      } else {
        fine.cells.push_back(left);
        fine.cells.push_back(right);
      }
    }
    const OrderedCells a = SortCells(coarse);
    const OrderedCells b = SortCells(fine);
    EXPECT_GE(MaxRoc(b), MaxRoc(a) - 1e-15);
    EXPECT_GE(MaxAupr(b), MaxAupr(a) - 1e-12);
  }
}

TEST(CurvePointsTest, ToySplitVertices) {
  const CurvePoints curve = ComputeCurvePoints(SortCells(Fig1Cells()));
  ASSERT_EQ(curve.roc.size(), 3u);
  EXPECT_EQ(curve.roc[0], std::make_pair(0.0, 0.0));
  EXPECT_DOUBLE_EQ(curve.roc[1].first, 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(curve.roc[1].second, 2.0 / 3.0);
  EXPECT_EQ(curve.roc[2], std::make_pair(1.0, 1.0));
  ASSERT_EQ(curve.pr.size(), 3u);
  EXPECT_FALSE(curve.pr[0].precision.has_value());
  EXPECT_DOUBLE_EQ(*curve.pr[1].precision, 0.5);
  EXPECT_DOUBLE_EQ(*curve.pr[2].precision, 3.0 / 8.0);
  EXPECT_EQ(curve.pr_interpolation, "hyperbolic");
}

TEST(ComputeBoundsTest, ReportsUndefinedInsteadOfThrowing) {
  const BoundReport none = ComputeBounds(Cells({{0, 5}}));
  EXPECT_FALSE(none.defined);
  EXPECT_FALSE(none.undefined_reason.empty());
  const BoundReport ok = ComputeBounds(Fig1Cells());
  EXPECT_TRUE(ok.defined);
  EXPECT_EQ(ok.num_cells, 2u);
  EXPECT_EQ(ok.positives, 3);
  EXPECT_EQ(ok.negatives, 5);
  EXPECT_GE(ok.max_ap, ok.sorted_order_ap);
}

TEST(DownsampleTest, KeepsExactTargetAndAllPositives) {
  std::mt19937_64 rng(1);
  const LabeledCells cells = Cells({{3, 40}, {1, 100}, {0, 60}, {2, 0}});
  for (int draw = 0; draw < 100; ++draw) {
    const LabeledCells out = DownsampleNegatives(cells, 0.1, rng);
    EXPECT_EQ(out.TotalPositives(), 6);
    EXPECT_EQ(out.TotalNegatives(), 60);
    for (const Cell& c : out.cells) EXPECT_GT(c.t(), 0);
  }
}

TEST(DownsampleTest, UniformAcrossNegativesMonteCarlo) {
  // Every negative is kept with probability target / N, so cell means are
  // proportional to cell sizes.
  std::mt19937_64 rng(12345);
  const LabeledCells cells = Cells({{2, 10}, {2, 30}, {0, 60}});
  const int draws = 10000;
  std::vector<double> mean(3, 0.0);
  for (int draw = 0; draw < draws; ++draw) {
    const LabeledCells out = DownsampleNegatives(cells, 0.2, rng);  // 20 of 100
    // Cells keep their order; a positive-free cell disappears only when
    // nothing was kept from it, which is the last cell here.
    mean[0] += static_cast<double>(out.cells[0].n);
    mean[1] += static_cast<double>(out.cells[1].n);
    mean[2] += out.cells.size() == 3 ? static_cast<double>(out.cells[2].n) : 0.0;
  }
  const std::vector<double> expected = {2.0, 6.0, 12.0};
  for (int i = 0; i < 3; ++i) {
    mean[i] /= draws;
    // Hypergeometric sd of a single draw is below 2; the mean's sd is
    // below 0.02, so 0.1 is a five-sigma band.
    EXPECT_NEAR(mean[i], expected[i], 0.1) << "cell " << i;
  }
}

TEST(DownsampleTest, RejectsImpossibleTargets) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(DownsampleNegatives(Cells({{10, 2}}), 1.0, rng), InputError);
  EXPECT_THROW(DownsampleNegatives(Cells({{1, 2}}), 0.0, rng), InputError);
}

TEST(DownsampleTest, BoundsDoNotDropBelowFullOnAverage) {
  // Dropping negatives can only help a predictor, so the downsampled AUPR
  // bound dominates the full one in expectation.
  std::mt19937_64 rng(77);
  const LabeledCells cells = Cells({{4, 20}, {1, 50}, {3, 5}, {0, 100}});
  const double full = MaxAupr(SortCells(cells));
  double sum = 0;
  for (int draw = 0; draw < 500; ++draw) {
    sum += MaxAupr(SortCells(DownsampleNegatives(cells, 0.25, rng)));
  }
  EXPECT_GT(sum / 500, full);
}

TEST(UniformUnitTest, StaysInHalfOpenUnitInterval) {
  std::mt19937_64 rng(3);
  double lo = 1, hi = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1 - 1e-3);
}

}  // namespace
}  // namespace linklimits
