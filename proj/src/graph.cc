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

#include "linklimits/graph.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "linklimits/errors.h"

namespace linklimits {

Permutation::Permutation(std::vector<NodeId> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (NodeId v : image_) {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[v]) {
      throw InvariantViolation("permutation image is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::Identity(int n) {
  Permutation p;
  p.image_.resize(n);
  for (int i = 0; i < n; ++i) p.image_[i] = i;
  return p;
}

Permutation Permutation::Inverse() const {
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    p.image_[image_[i]] = static_cast<NodeId>(i);
  }
  return p;
}

Permutation Permutation::Compose(const Permutation& other) const {
  if (other.size() != size()) {
    throw InvariantViolation("composing permutations of different sizes");
  }
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    p.image_[i] = image_[other.image_[i]];
  }
  return p;
}

bool Permutation::IsIdentity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<NodeId>(i)) return false;
  }
  return true;
}

namespace {

void BuildCsr(int n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
              std::vector<std::size_t>* offsets, std::vector<NodeId>* adj) {
  offsets->assign(n + 1, 0);
  for (const auto& [a, b] : arcs) ++(*offsets)[a + 1];
  for (int v = 0; v < n; ++v) (*offsets)[v + 1] += (*offsets)[v];
  adj->resize(arcs.size());
  std::vector<std::size_t> fill(offsets->begin(), offsets->end() - 1);
  for (const auto& [a, b] : arcs) (*adj)[fill[a]++] = b;
  for (int v = 0; v < n; ++v) {
    std::sort(adj->begin() + (*offsets)[v], adj->begin() + (*offsets)[v + 1]);
  }
}

}  // namespace

Graph Graph::FromEdges(int num_nodes, bool directed, bool self_loops_allowed,
                       std::vector<std::pair<NodeId, NodeId>> edges,
                       std::vector<std::string> labels) {
  if (num_nodes < 0) throw InvariantViolation("negative node count");
  Graph g;
  g.num_nodes_ = num_nodes;
  g.directed_ = directed;
  g.self_loops_allowed_ = self_loops_allowed;
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes) {
      throw InvariantViolation("edge endpoint out of range");
    }
    if (a == b && !self_loops_allowed) {
      throw InvariantViolation("self-loop in a graph without self-loops");
    }
    if (!directed && a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.num_self_loops_ = static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; }));
  g.edges_ = std::move(edges);

  if (labels.empty()) {
    labels.reserve(num_nodes);
    for (int v = 0; v < num_nodes; ++v) labels.push_back(std::to_string(v));
  } else if (static_cast<int>(labels.size()) != num_nodes) {
    throw InvariantViolation("label table size does not match node count");
  }
  g.labels_ = std::move(labels);

  if (directed) {
    BuildCsr(num_nodes, g.edges_, &g.out_offsets_, &g.out_adj_);
    std::vector<std::pair<NodeId, NodeId>> reversed;
    reversed.reserve(g.edges_.size());
    for (const auto& [a, b] : g.edges_) reversed.emplace_back(b, a);
    BuildCsr(num_nodes, reversed, &g.in_offsets_, &g.in_adj_);
  } else {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(2 * g.edges_.size());
    for (const auto& [a, b] : g.edges_) {
      arcs.emplace_back(a, b);
      if (a != b) arcs.emplace_back(b, a);
    }
    BuildCsr(num_nodes, arcs, &g.out_offsets_, &g.out_adj_);
  }
  return g;
}

bool Graph::HasEdge(NodeId a, NodeId b) const {
  if (a < 0 || b < 0 || a >= num_nodes_ || b >= num_nodes_) return false;
  const auto nbrs = OutNeighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::uint64_t Graph::TotalPairCount() const {
  const std::uint64_t n = static_cast<std::uint64_t>(num_nodes_);
  std::uint64_t pairs = directed_ ? n * (n - (n > 0 ? 1 : 0)) : n * (n - (n > 0 ? 1 : 0)) / 2;
  if (self_loops_allowed_) pairs += n;
  return pairs;
}

Graph LoadEdgeList(std::istream& in, const LoadOptions& options) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  bool saw_kept_loop = false;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(name);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string tok; tokens >> tok;) fields.push_back(std::move(tok));
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected 'src dst [weight]', got " +
                                    std::to_string(fields.size()) + " tokens");
    }
    if (fields.size() == 3) {
      std::size_t used = 0;
      try {
        (void)std::stod(fields[2], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fields[2].size()) {
        throw ParseError(line_no, "weight '" + fields[2] + "' is not a number");
      }
    }
    const NodeId a = intern(fields[0]);
    const NodeId b = intern(fields[1]);
    if (a == b) {
      if (!options.keep_self_loops) continue;
      saw_kept_loop = true;
    }
    edges.emplace_back(a, b);
  }
  if (labels.empty()) throw InputError("edge list contains no nodes");
  const bool loops = saw_kept_loop || options.include_self_loop_pairs;
  const int n = static_cast<int>(labels.size());
  return Graph::FromEdges(n, options.directed, loops, std::move(edges), std::move(labels));
}

Graph LoadEdgeListFile(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return LoadEdgeList(in, options);
}

void ForEachNonEdge(const Graph& g, const std::function<void(PairRef)>& fn) {
  const int n = g.num_nodes();
  for (NodeId a = 0; a < n; ++a) {
    const auto nbrs = g.OutNeighbors(a);
    auto it = nbrs.begin();
    const NodeId start = g.directed() ? 0 : a;
    for (NodeId b = start; b < n; ++b) {
      while (it != nbrs.end() && *it < b) ++it;
      if (it != nbrs.end() && *it == b) continue;
      if (a == b && !g.self_loops_allowed()) continue;
      fn(PairRef{a, b, g.directed()});
    }
  }
}

std::vector<PairRef> NonEdges(const Graph& g) {
  std::vector<PairRef> out;
  out.reserve(g.TotalPairCount() - g.num_edges());
  ForEachNonEdge(g, [&](PairRef e) { out.push_back(e); });
  return out;
}

NeighborhoodCollector::NeighborhoodCollector(const Graph& g,
                                             HopDirection direction)
    : graph_(&g), direction_(direction), stamp_(g.num_nodes(), 0) {}

std::vector<NodeId> NeighborhoodCollector::Collect(const PairRef& pair, int k) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  std::vector<NodeId> found;
  auto visit = [&](NodeId v) {
    if (stamp_[v] != epoch_) {
      stamp_[v] = epoch_;
      found.push_back(v);
    }
  };
  visit(pair.a);
  visit(pair.b);
  std::size_t frontier_begin = 0;
  for (int hop = 0; hop < k; ++hop) {
    const std::size_t frontier_end = found.size();
    if (frontier_begin == frontier_end) break;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const NodeId v = found[i];
      for (NodeId w : graph_->OutNeighbors(v)) visit(w);
      if (graph_->directed() && direction_ == HopDirection::kIgnore) {
        for (NodeId w : graph_->InNeighbors(v)) visit(w);
      }
    }
    frontier_begin = frontier_end;
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<NodeId> KhopNodes(const Graph& g, const PairRef& pair, int k,
                              HopDirection direction) {
  if (k < 0) throw InvariantViolation("hop count must be non-negative");
  NeighborhoodCollector collector(g, direction);
  return collector.Collect(pair, k);
}

InducedSubgraph Induce(const Graph& g, std::span<const NodeId> nodes) {
  InducedSubgraph result;
  result.to_original.assign(nodes.begin(), nodes.end());
  auto& keep = result.to_original;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (NodeId v : keep) {
    if (v < 0 || v >= g.num_nodes()) {
      throw InvariantViolation("induced node id out of range");
    }
  }
  auto local = [&](NodeId v) -> NodeId {
    auto it = std::lower_bound(keep.begin(), keep.end(), v);
    if (it == keep.end() || *it != v) return -1;
    return static_cast<NodeId>(it - keep.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const NodeId v = keep[i];
    labels.push_back(g.label(v));
    for (NodeId w : g.OutNeighbors(v)) {
      if (!g.directed() && w < v) continue;
      const NodeId j = local(w);
      if (j >= 0) edges.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  result.graph = Graph::FromEdges(static_cast<int>(keep.size()), g.directed(),
                                  g.self_loops_allowed(), std::move(edges),
                                  std::move(labels));
  return result;
}

Graph Permute(const Graph& g, const Permutation& pi) {
  if (pi.size() != g.num_nodes()) {
    throw InvariantViolation("permutation size does not match graph");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.num_edges());
  for (const auto& [a, b] : g.edges()) edges.emplace_back(pi[a], pi[b]);
  std::vector<std::string> labels(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) labels[pi[v]] = g.label(v);
  return Graph::FromEdges(g.num_nodes(), g.directed(), g.self_loops_allowed(),
                          std::move(edges), std::move(labels));
}

Graph WithoutEdges(const Graph& g, std::span<const PairRef> removed) {
  std::vector<std::pair<NodeId, NodeId>> gone;
  gone.reserve(removed.size());
  for (const PairRef& e : removed) {
    const PairRef n = PairRef::Make(e.a, e.b, g.directed());
    if (!g.HasEdge(n)) throw InvariantViolation("removing an absent edge");
    gone.emplace_back(n.a, n.b);
  }
  std::sort(gone.begin(), gone.end());
  std::vector<std::pair<NodeId, NodeId>> kept;
  kept.reserve(g.num_edges());
  std::set_difference(g.edges().begin(), g.edges().end(), gone.begin(),
                      gone.end(), std::back_inserter(kept));
  return Graph::FromEdges(g.num_nodes(), g.directed(), g.self_loops_allowed(),
                          std::move(kept), g.labels());
}

}  // namespace linklimits
