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

#include "linklimits/oracle.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "linklimits/errors.h"
#include "linklimits/union_find.h"

namespace linklimits::oracle {

namespace {

std::vector<std::vector<bool>> AdjacencyMatrix(const Graph& g) {
  std::vector<std::vector<bool>> adj(g.num_nodes(), std::vector<bool>(g.num_nodes(), false));
  for (const auto& [a, b] : g.edges()) {
    adj[a][b] = true;
    if (!g.directed()) adj[b][a] = true;
  }
  return adj;
}

void CheckNodeBudget(int n, const OracleBudget& budget) {
  if (n > budget.max_nodes) {
    throw ResourceError("brute force over " + std::to_string(n) +
                        " nodes exceeds the oracle budget of " +
                        std::to_string(budget.max_nodes));
  }
}

double AdaptiveSimpson(const std::function<double(double)>& f, double lo, double hi,
                       double f_lo, double f_mid, double f_hi, double whole,
                       double tolerance, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left_mid = 0.5 * (lo + mid);
  const double right_mid = 0.5 * (mid + hi);
  const double f_left_mid = f(left_mid);
  const double f_right_mid = f(right_mid);
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_left_mid + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_right_mid + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tolerance) {
    return left + right + delta / 15.0;
  }
  return AdaptiveSimpson(f, lo, mid, f_lo, f_left_mid, f_mid, left, 0.5 * tolerance, depth - 1) +
         AdaptiveSimpson(f, mid, hi, f_mid, f_right_mid, f_hi, right, 0.5 * tolerance, depth - 1);
}

double Integrate(const std::function<double(double)>& f, double tolerance) {
  const double f0 = f(0.0);
  const double f_half = f(0.5);
  const double f1 = f(1.0);
  const double whole = (f0 + 4.0 * f_half + f1) / 6.0;
  return AdaptiveSimpson(f, 0.0, 1.0, f0, f_half, f1, whole, tolerance, 48);
}

// Area under the mixture path from a base point with cumulative counts
// (prev_p, prev_t) after appending a cell (p, t), scaled by recall.
double SegmentArea(std::int64_t prev_p, std::int64_t prev_t, std::int64_t p,
                   std::int64_t t, std::int64_t total_p, double tolerance) {
  if (p == 0) return 0.0;
  const double scale = static_cast<double>(p) / static_cast<double>(total_p);
  auto precision = [=](double alpha) {
    const double tp = static_cast<double>(prev_p) + alpha * static_cast<double>(p);
    const double picked = static_cast<double>(prev_t) + alpha * static_cast<double>(t);
    if (picked == 0.0) return static_cast<double>(p) / static_cast<double>(t);
    return tp / picked;
  };
  return scale * Integrate(precision, tolerance);
}

}  // namespace

std::vector<Permutation> BruteAutomorphisms(const Graph& g, const OracleBudget& budget,
                                            const Coloring* coloring) {
  CheckNodeBudget(g.num_nodes(), budget);
  const auto adj = AdjacencyMatrix(g);
  const int n = g.num_nodes();
  std::vector<NodeId> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> found;
  do {
    bool ok = true;
    if (coloring != nullptr) {
      for (int v = 0; v < n && ok; ++v) ok = coloring->color[v] == coloring->color[image[v]];
    }
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n && ok; ++b) ok = adj[a][b] == adj[image[a]][image[b]];
    }
    if (ok) found.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return found;
}

std::vector<Permutation> GenerateGroup(const std::vector<Permutation>& generators, int n,
                                       const OracleBudget& budget) {
  std::set<Permutation> group{Permutation::Identity(n)};
  std::deque<Permutation> frontier{Permutation::Identity(n)};
  while (!frontier.empty()) {
    const Permutation current = frontier.front();
    frontier.pop_front();
    for (const Permutation& gen : generators) {
      Permutation next = gen.Compose(current);
      if (group.insert(next).second) {
        if (group.size() > budget.max_group_elements) {
          throw ResourceError("group closure exceeds the oracle budget");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return {group.begin(), group.end()};
}

bool BruteIsomorphic(const Graph& g1, const Coloring& c1, const Graph& g2,
                     const Coloring& c2, const OracleBudget& budget) {
  if (g1.num_nodes() != g2.num_nodes() || g1.directed() != g2.directed() ||
      g1.num_edges() != g2.num_edges()) {
    return false;
  }
  CheckNodeBudget(g1.num_nodes(), budget);
  const int n = g1.num_nodes();
  const auto adj1 = AdjacencyMatrix(g1);
  const auto adj2 = AdjacencyMatrix(g2);
  std::vector<NodeId> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) ok = c1.color[v] == c2.color[image[v]];
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n && ok; ++b) ok = adj1[a][b] == adj2[image[a]][image[b]];
    }
    if (ok) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

std::vector<std::vector<std::size_t>> BrutePairOrbits(const Graph& g,
                                                      const std::vector<PairRef>& pairs,
                                                      const OracleBudget& budget) {
  const std::vector<Permutation> group = BruteAutomorphisms(g, budget);
  DisjointSets sets(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const Permutation& f : group) {
      const PairRef image = PairRef::Make(f[pairs[i].a], f[pairs[i].b], g.directed());
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (pairs[j].a == image.a && pairs[j].b == image.b) sets.Union(i, j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of_root(pairs.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t root = sets.Find(i);
    if (block_of_root[root] == pairs.size()) {
      block_of_root[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of_root[root]].push_back(i);
  }
  return blocks;
}

Rational RocPairCount(const OrderedCells& oc) {
  std::int64_t total_p = 0;
  std::int64_t total_n = 0;
  for (const Cell& c : oc.cells) {
    total_p += c.p;
    total_n += c.n;
  }
  if (total_p < 1 || total_n < 1) throw DegenerateInputError("ROC needs P >= 1 and N >= 1");
  // Negatives strictly below each cell are those in later cells.
  Rational wins = 0;
  std::int64_t negatives_after = total_n;
  for (const Cell& c : oc.cells) {
    negatives_after -= c.n;
    wins += Rational(c.p) * negatives_after;
    wins += Rational(c.p * c.n, 2);
  }
  return wins / (Rational(total_p) * total_n);
}

Rational ApRightmost(const OrderedCells& oc) {
  std::int64_t total_p = 0;
  for (const Cell& c : oc.cells) total_p += c.p;
  if (total_p < 1) throw DegenerateInputError("AP needs P >= 1");
  Rational ap = 0;
  std::int64_t seen_p = 0;
  std::int64_t seen_t = 0;
  for (const Cell& c : oc.cells) {
    seen_p += c.p;
    seen_t += c.p + c.n;
    if (c.p > 0) ap += Rational(c.p, total_p) * Rational(seen_p, seen_t);
  }
  return ap;
}

double AuprNumeric(const OrderedCells& oc, double tolerance) {
  std::int64_t total_p = 0;
  for (const Cell& c : oc.cells) total_p += c.p;
  if (total_p < 1) throw DegenerateInputError("AUPR needs P >= 1");
  const double per_segment = tolerance / static_cast<double>(std::max<std::size_t>(1, oc.cells.size()));
  double area = 0;
  std::int64_t seen_p = 0;
  std::int64_t seen_t = 0;
  for (const Cell& c : oc.cells) {
    area += SegmentArea(seen_p, seen_t, c.p, c.p + c.n, total_p, per_segment);
    seen_p += c.p;
    seen_t += c.p + c.n;
  }
  return area;
}

OrderingResult BestOrderingExhaustive(const LabeledCells& cells, Metric metric,
                                      const OracleBudget& budget) {
  cells.Validate();
  const std::size_t k = cells.cells.size();
  if (k == 0) throw InputError("no cells");
  if (static_cast<int>(k) > budget.max_cells) {
    throw ResourceError("exhaustive ordering over " + std::to_string(k) +
                        " cells exceeds the oracle budget of " +
                        std::to_string(budget.max_cells));
  }
  const std::int64_t total_p = cells.TotalPositives();
  const std::int64_t total_n = cells.TotalNegatives();
  if (total_p < 1) throw DegenerateInputError("no positives");
  if (metric == Metric::kRoc && total_n < 1) throw DegenerateInputError("no negatives");

  OrderingResult best;
  bool have_best = false;
  std::vector<std::size_t> order;
  std::vector<bool> used(k, false);
  const double per_segment = budget.integration_tolerance / static_cast<double>(k);
  // A segment's area depends only on the set already placed and the cell
  // appended, so quadratures are cached by (placed set, cell).
  std::vector<double> segment_cache(k << k, std::numeric_limits<double>::quiet_NaN());

  std::function<void(std::uint32_t, std::int64_t, std::int64_t, std::int64_t, double, Rational)>
      extend = [&](std::uint32_t placed, std::int64_t seen_p, std::int64_t seen_n,
                   std::int64_t seen_t, double area, Rational exact) {
        if (order.size() == k) {
          const double value = metric == Metric::kAupr ? area : exact.convert_to<double>();
          const bool better = metric == Metric::kAupr ? value > best.value : exact > best.exact;
          if (!have_best || better) {
            best.value = value;
            best.exact = exact;
            best.order = order;
            have_best = true;
          }
          return;
        }
        for (std::size_t i = 0; i < k; ++i) {
          if (used[i]) continue;
          const Cell& c = cells.cells[i];
          used[i] = true;
          order.push_back(i);
          double next_area = area;
          Rational next_exact = exact;
          switch (metric) {
            case Metric::kAupr: {
              double& cached = segment_cache[(static_cast<std::size_t>(placed) * k) + i];
              if (std::isnan(cached)) {
                cached = SegmentArea(seen_p, seen_t, c.p, c.t(), total_p, per_segment);
              }
              next_area += cached;
              break;
            }
            case Metric::kRoc:
              // Positives here beat every negative not yet placed, tie with
              // this cell's own negatives.
              next_exact += (Rational(c.p) * (total_n - seen_n - c.n) + Rational(c.p * c.n, 2)) /
                            (Rational(total_p) * total_n);
              break;
            case Metric::kAp:
              if (c.p > 0) {
                next_exact += Rational(c.p, total_p) * Rational(seen_p + c.p, seen_t + c.t());
              }
              break;
          }
          extend(placed | (1u << i), seen_p + c.p, seen_n + c.n, seen_t + c.t(), next_area,
                 next_exact);
          order.pop_back();
          used[i] = false;
        }
      };
  extend(0, 0, 0, 0, 0.0, Rational(0));
  return best;
}

}  // namespace linklimits::oracle
