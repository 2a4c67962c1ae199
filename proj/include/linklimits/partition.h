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

#ifndef LINKLIMITS_PARTITION_H_
#define LINKLIMITS_PARTITION_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "linklimits/canonical.h"
#include "linklimits/graph.h"

namespace linklimits {

// A partition of a pair universe (the non-edges of a residual graph) into
// cells whose members no permutation-invariant predictor can tell apart.
struct CellPartition {
  enum class Mode { kGlobal, kKhop, kApproxWl };

  Mode mode = Mode::kGlobal;
  int k = 0;  // hop count for kKhop / kApproxWl
  std::vector<PairRef> pairs;
  // Indices into `pairs`; each block sorted, blocks sorted by key.
  std::vector<std::vector<std::size_t>> blocks;
  // Hex key per block: the packed orbit representative in global mode, the
  // canonical-code digest otherwise (suffixed on digest collisions).
  std::vector<std::string> keys;

  std::size_t num_pairs() const { return pairs.size(); }
  // Throws InvariantViolation unless blocks are disjoint, non-empty and cover
  // every pair.
  void Validate() const;
};

struct PartitionOptions {
  HopDirection hop_direction = HopDirection::kIgnore;
  CanonicalOptions canonical;
  // 0 keeps the scheduler default.
  int threads = 0;
};

// Orbits of the non-edges of h under Aut(h).
CellPartition GlobalOrbitPartition(const Graph& h, const PartitionOptions& options = {});

// Non-edges grouped by the canonical code of their endpoint-colored k-hop
// neighborhood. Requires k >= 1.
CellPartition KhopPartition(const Graph& h, int k, const PartitionOptions& options = {});

// Like KhopPartition but keyed by color refinement only; may merge
// non-isomorphic neighborhoods. For profiling.
CellPartition ApproxWlPartition(const Graph& h, int k, const PartitionOptions& options = {});

// The endpoint-colored canonical code of one pair's k-hop neighborhood.
CanonicalCode NeighborhoodCode(const Graph& h, const PairRef& pair, int k,
                               const PartitionOptions& options = {});

struct Cell {
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t t() const { return p + n; }
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct LabeledCells {
  std::vector<Cell> cells;

  std::int64_t TotalPositives() const;
  std::int64_t TotalNegatives() const;
  // Throws InputError on negative counts or empty cells.
  void Validate() const;
};

// Per-block positive/negative counts, in block order. Throws
// InvariantViolation when a positive is not in the pair universe.
LabeledCells LabelCells(const CellPartition& part, std::span<const PairRef> positives);

// CSV with header "pair_a,pair_b,block_key_hex", one row per pair, using the
// graph's node labels.
void WritePartitionCsv(std::ostream& out, const CellPartition& part, const Graph& g);

}  // namespace linklimits

#endif  // LINKLIMITS_PARTITION_H_
