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

// Simple graphs with dense node ids, non-edge enumeration, k-hop
// neighborhoods, induced subgraphs, and relabeling.

#ifndef LINKLIMITS_GRAPH_H_
#define LINKLIMITS_GRAPH_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linklimits {

using NodeId = std::int32_t;

// An edge or non-edge. Unoriented pairs are stored with a <= b.
struct PairRef {
  NodeId a = 0;
  NodeId b = 0;
  bool oriented = false;

  static PairRef Make(NodeId a, NodeId b, bool oriented) {
    if (!oriented && a > b) std::swap(a, b);
    return PairRef{a, b, oriented};
  }
  // Packs (a, b) into one integer; equal pairs pack equally.
  std::uint64_t Packed() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }
  friend auto operator<=>(const PairRef&, const PairRef&) = default;
};

// A bijection on 0..n-1.
class Permutation {
 public:
  Permutation() = default;
  // Throws InvariantViolation unless `image` is a bijection.
  explicit Permutation(std::vector<NodeId> image);
  static Permutation Identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  NodeId operator[](NodeId v) const { return image_[v]; }
  const std::vector<NodeId>& image() const { return image_; }

  Permutation Inverse() const;
  // (this * other)(v) = this(other(v)).
  Permutation Compose(const Permutation& other) const;
  bool IsIdentity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<NodeId> image_;
};

enum class HopDirection {
  kIgnore,  // walks may traverse edges against their direction
  kFollow,  // walks follow (src, dst) only
};

class Graph {
 public:
  Graph() = default;

  // Builds a graph from raw edges. Undirected edges are normalized, duplicate
  // edges collapse. Throws InvariantViolation on out-of-range ids or on a
  // self-loop when `self_loops_allowed` is false.
  static Graph FromEdges(int num_nodes, bool directed, bool self_loops_allowed,
                         std::vector<std::pair<NodeId, NodeId>> edges,
                         std::vector<std::string> labels = {});

  int num_nodes() const { return num_nodes_; }
  bool directed() const { return directed_; }
  bool self_loops_allowed() const { return self_loops_allowed_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_self_loops() const { return num_self_loops_; }

  // Sorted; undirected edges have first <= second.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const {
    return edges_;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId v) const { return labels_[v]; }

  bool HasEdge(NodeId a, NodeId b) const;
  bool HasEdge(const PairRef& e) const { return HasEdge(e.a, e.b); }

  // Sorted neighbor lists. For undirected graphs both return the same list.
  std::span<const NodeId> OutNeighbors(NodeId v) const {
    return {out_adj_.data() + out_offsets_[v],
            out_adj_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> InNeighbors(NodeId v) const {
    if (!directed_) return OutNeighbors(v);
    return {in_adj_.data() + in_offsets_[v],
            in_adj_.data() + in_offsets_[v + 1]};
  }

  // Number of candidate pairs: ordered pairs for directed graphs, unordered
  // otherwise, plus the n diagonal pairs when self-loops are allowed.
  std::uint64_t TotalPairCount() const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.num_nodes_ == y.num_nodes_ && x.directed_ == y.directed_ &&
           x.self_loops_allowed_ == y.self_loops_allowed_ &&
           x.edges_ == y.edges_;
  }

 private:
  int num_nodes_ = 0;
  bool directed_ = false;
  bool self_loops_allowed_ = false;
  std::size_t num_self_loops_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_adj_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_adj_;
};

struct LoadOptions {
  bool directed = false;
  // Keep (a, a) lines as edges; otherwise they are dropped.
  bool keep_self_loops = false;
  // Enumerate (a, a) non-edges even if the file has no self-loop.
  bool include_self_loop_pairs = false;
};

// Parses "src dst [weight]" lines. '#' and '%' start comment lines; blank
// lines are skipped. Nodes are numbered in first-appearance order. Weights
// are discarded. Self-loop pairs become candidates when a self-loop was kept
// or `include_self_loop_pairs` is set. Throws ParseError / InputError.
Graph LoadEdgeList(std::istream& in, const LoadOptions& options);
Graph LoadEdgeListFile(const std::string& path, const LoadOptions& options);

// Every candidate pair that is not an edge, in lexicographic order.
std::vector<PairRef> NonEdges(const Graph& g);
void ForEachNonEdge(const Graph& g, const std::function<void(PairRef)>& fn);

// Collects k-hop node sets around pairs. Reuses scratch space across calls,
// so one collector must not be shared between threads.
class NeighborhoodCollector {
 public:
  NeighborhoodCollector(const Graph& g, HopDirection direction);
  // Sorted ids of all nodes within k hops of either endpoint.
  std::vector<NodeId> Collect(const PairRef& pair, int k);

 private:
  const Graph* graph_;
  HopDirection direction_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

std::vector<NodeId> KhopNodes(const Graph& g, const PairRef& pair, int k,
                              HopDirection direction = HopDirection::kIgnore);

struct InducedSubgraph {
  Graph graph;
  // New dense id -> original id (ascending).
  std::vector<NodeId> to_original;
};

// `nodes` need not be sorted; duplicates are ignored.
InducedSubgraph Induce(const Graph& g, std::span<const NodeId> nodes);

// Edge (a, b) of g becomes (pi(a), pi(b)); the label of a moves to pi(a).
Graph Permute(const Graph& g, const Permutation& pi);

// g with the listed edges removed. Throws InvariantViolation if one is absent.
Graph WithoutEdges(const Graph& g, std::span<const PairRef> removed);

}  // namespace linklimits

#endif  // LINKLIMITS_GRAPH_H_
