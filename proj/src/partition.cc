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

#include "linklimits/partition.h"

#include <tbb/enumerable_thread_specific.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>

#include "linklimits/errors.h"

namespace linklimits {

void CellPartition::Validate() const {
  std::vector<bool> seen(pairs.size(), false);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw InvariantViolation("empty partition block");
    for (std::size_t i : block) {
      if (i >= pairs.size() || seen[i]) {
        throw InvariantViolation("partition blocks overlap or go out of range");
      }
      seen[i] = true;
      ++covered;
    }
  }
  if (covered != pairs.size()) throw InvariantViolation("partition is not exhaustive");
  if (keys.size() != blocks.size()) throw InvariantViolation("missing block keys");
}

namespace {

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::optional<tbb::global_control> LimitThreads(int threads) {
  if (threads <= 0) return std::nullopt;
  return std::make_optional<tbb::global_control>(
      tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(threads));
}

CanonicalCode WlCode(const Graph& sub, const Coloring& init) {
  const Coloring refined = ColorRefine(sub, init);
  std::vector<std::uint64_t> edges;
  edges.reserve(sub.num_edges());
  for (const auto& [a, b] : sub.edges()) {
    std::uint64_t x = static_cast<std::uint64_t>(refined.color[a]);
    std::uint64_t y = static_cast<std::uint64_t>(refined.color[b]);
    if (!sub.directed() && x > y) std::swap(x, y);
    edges.push_back((x << 32) | y);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::pair<std::int32_t, std::int32_t>> nodes;
  for (int v = 0; v < sub.num_nodes(); ++v) nodes.emplace_back(refined.color[v], init.color[v]);
  std::sort(nodes.begin(), nodes.end());
  CanonicalCode code;
  auto put = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) code.bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(sub.num_nodes());
  for (const auto& [c, i] : nodes) put((static_cast<std::uint64_t>(c) << 32) | static_cast<std::uint32_t>(i));
  put(edges.size());
  for (std::uint64_t e : edges) put(e);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : code.bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  code.hash64 = h;
  return code;
}

CanonicalCode LocalCode(const Graph& h, const PairRef& pair,
                        const std::vector<NodeId>& nodes,
                        const PartitionOptions& options, bool approx) {
  const InducedSubgraph sub = Induce(h, nodes);
  auto local = [&](NodeId v) {
    return static_cast<NodeId>(
        std::lower_bound(sub.to_original.begin(), sub.to_original.end(), v) -
        sub.to_original.begin());
  };
  const Coloring init = EndpointColoring(sub.graph.num_nodes(), h.directed(),
                                         local(pair.a), local(pair.b));
  if (approx) return WlCode(sub.graph, init);
  return ComputeCanonicalCode(sub.graph, init, options.canonical);
}

CellPartition CodePartition(const Graph& h, int k, const PartitionOptions& options,
                            bool approx) {
  if (k < 1) throw InvariantViolation("k-hop partition needs k >= 1");
  const auto limit = LimitThreads(options.threads);
  CellPartition part;
  part.mode = approx ? CellPartition::Mode::kApproxWl : CellPartition::Mode::kKhop;
  part.k = k;
  part.pairs = NonEdges(h);

  tbb::enumerable_thread_specific<NeighborhoodCollector> collectors(
      [&] { return NeighborhoodCollector(h, options.hop_direction); });

  // Codes are computed in parallel a chunk at a time and merged serially, so
  // only one code per block is kept alive.
  std::map<CanonicalCode, std::size_t> block_of_code;
  std::vector<std::vector<std::size_t>> members;
  constexpr std::size_t kChunk = 4096;
  std::vector<CanonicalCode> codes(std::min(kChunk, part.pairs.size()));
  for (std::size_t begin = 0; begin < part.pairs.size(); begin += kChunk) {
    const std::size_t end = std::min(part.pairs.size(), begin + kChunk);
    tbb::parallel_for(std::size_t{begin}, end, [&](std::size_t i) {
      NeighborhoodCollector& collector = collectors.local();
      const std::vector<NodeId> nodes = collector.Collect(part.pairs[i], k);
      codes[i - begin] = LocalCode(h, part.pairs[i], nodes, options, approx);
    });
    for (std::size_t i = begin; i < end; ++i) {
      auto [it, inserted] = block_of_code.try_emplace(std::move(codes[i - begin]), members.size());
      if (inserted) members.emplace_back();
      members[it->second].push_back(i);
    }
  }

  std::uint64_t previous_hash = 0;
  int repeat = 0;
  for (const auto& [code, index] : block_of_code) {
    part.blocks.push_back(std::move(members[index]));
    std::string key = code.HashHex();
    if (!part.keys.empty() && code.hash64 == previous_hash) {
      key += "-" + std::to_string(++repeat);
    } else {
      repeat = 0;
    }
    previous_hash = code.hash64;
    part.keys.push_back(std::move(key));
  }
  part.Validate();
  return part;
}

}  // namespace

CellPartition GlobalOrbitPartition(const Graph& h, const PartitionOptions& options) {
  CellPartition part;
  part.mode = CellPartition::Mode::kGlobal;
  part.pairs = NonEdges(h);
  const GeneratorSet gens =
      AutomorphismGenerators(h, Coloring::Uniform(h.num_nodes()), options.canonical);
  part.blocks = PairOrbits(h, gens, part.pairs);
  // PairOrbits orders blocks by first member, and pairs are sorted, so the
  // first member is the smallest pair of its orbit.
  for (const auto& block : part.blocks) {
    part.keys.push_back(Hex64(part.pairs[block.front()].Packed()));
  }
  part.Validate();
  return part;
}

CellPartition KhopPartition(const Graph& h, int k, const PartitionOptions& options) {
  return CodePartition(h, k, options, /*approx=*/false);
}

CellPartition ApproxWlPartition(const Graph& h, int k, const PartitionOptions& options) {
  return CodePartition(h, k, options, /*approx=*/true);
}

CanonicalCode NeighborhoodCode(const Graph& h, const PairRef& pair, int k,
                               const PartitionOptions& options) {
  const std::vector<NodeId> nodes = KhopNodes(h, pair, k, options.hop_direction);
  return LocalCode(h, pair, nodes, options, /*approx=*/false);
}

std::int64_t LabeledCells::TotalPositives() const {
  std::int64_t total = 0;
  for (const Cell& c : cells) total += c.p;
  return total;
}

std::int64_t LabeledCells::TotalNegatives() const {
  std::int64_t total = 0;
  for (const Cell& c : cells) total += c.n;
  return total;
}

void LabeledCells::Validate() const {
  for (const Cell& c : cells) {
    if (c.p < 0 || c.n < 0) throw InputError("cell counts must be non-negative");
    if (c.t() < 1) throw InputError("cells must be non-empty");
  }
}

LabeledCells LabelCells(const CellPartition& part, std::span<const PairRef> positives) {
  std::unordered_map<std::uint64_t, std::size_t> block_of_pair;
  block_of_pair.reserve(part.pairs.size());
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    for (std::size_t i : part.blocks[b]) block_of_pair.emplace(part.pairs[i].Packed(), b);
  }
  const bool oriented = !part.pairs.empty() && part.pairs.front().oriented;
  LabeledCells labeled;
  labeled.cells.resize(part.blocks.size());
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    labeled.cells[b].n = static_cast<std::int64_t>(part.blocks[b].size());
  }
  for (const PairRef& e : positives) {
    const PairRef key = PairRef::Make(e.a, e.b, oriented);
    auto it = block_of_pair.find(key.Packed());
    if (it == block_of_pair.end()) {
      throw InvariantViolation("positive (" + std::to_string(e.a) + ", " +
                               std::to_string(e.b) + ") is not in the pair universe");
    }
    Cell& cell = labeled.cells[it->second];
    ++cell.p;
    --cell.n;
    if (cell.n < 0) throw InvariantViolation("duplicate positive pair");
  }
  return labeled;
}

void WritePartitionCsv(std::ostream& out, const CellPartition& part, const Graph& g) {
  out << "pair_a,pair_b,block_key_hex\n";
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    for (std::size_t i : part.blocks[b]) {
      out << g.label(part.pairs[i].a) << ',' << g.label(part.pairs[i].b) << ','
          << part.keys[b] << '\n';
    }
  }
}

}  // namespace linklimits
