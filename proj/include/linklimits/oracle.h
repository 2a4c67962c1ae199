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

// Brute-force verifiers. These share no code with the search, the closed
// forms or the sorting they check; keep it that way.

#ifndef LINKLIMITS_ORACLE_H_
#define LINKLIMITS_ORACLE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "linklimits/canonical.h"
#include "linklimits/graph.h"
#include "linklimits/metrics.h"
#include "linklimits/partition.h"

namespace linklimits::oracle {

using Rational = boost::multiprecision::cpp_rational;

struct OracleBudget {
  int max_nodes = 8;
  int max_cells = 8;
  double integration_tolerance = 1e-9;
  std::size_t max_group_elements = 1000000;
};

// Every permutation of the nodes that preserves the edge set (and the
// coloring, if one is given). Throws ResourceError above max_nodes.
std::vector<Permutation> BruteAutomorphisms(const Graph& g, const OracleBudget& budget = {},
                                            const Coloring* coloring = nullptr);

// All elements of the group generated by `generators` on n points, sorted.
std::vector<Permutation> GenerateGroup(const std::vector<Permutation>& generators, int n,
                                       const OracleBudget& budget = {});

// Color-preserving isomorphism by trying every bijection.
bool BruteIsomorphic(const Graph& g1, const Coloring& c1, const Graph& g2,
                     const Coloring& c2, const OracleBudget& budget = {});

// Orbits of `pairs` under the full enumerated automorphism group; blocks are
// sorted index lists ordered by first member.
std::vector<std::vector<std::size_t>> BrutePairOrbits(const Graph& g,
                                                      const std::vector<PairRef>& pairs,
                                                      const OracleBudget& budget = {});

// (positive-negative pairs ranked correctly + ties / 2) / (P N) for the
// cells in the order given.
Rational RocPairCount(const OrderedCells& oc);

// Exact AP for the order given: each positive contributes the precision at
// the right end of its cell's segment.
Rational ApRightmost(const OrderedCells& oc);

// Integrates precision over recall along the randomized-mixture path between
// consecutive base points with adaptive Simpson quadrature.
double AuprNumeric(const OrderedCells& oc, double tolerance = 1e-9);

enum class Metric { kRoc, kAupr, kAp };

struct OrderingResult {
  double value = 0;
  Rational exact = 0;  // ROC and AP only
  std::vector<std::size_t> order;  // indices into the input cells
};

// Best value of `metric` over every ordering of the cells. Throws
// ResourceError above max_cells.
OrderingResult BestOrderingExhaustive(const LabeledCells& cells, Metric metric,
                                      const OracleBudget& budget = {});

}  // namespace linklimits::oracle

#endif  // LINKLIMITS_ORACLE_H_
