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

#include "linklimits/canonical.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <span>
#include <unordered_map>

#include "linklimits/errors.h"
#include "linklimits/union_find.h"

namespace linklimits {

int Coloring::NumClasses() const {
  std::vector<std::int32_t> values = color;
  std::sort(values.begin(), values.end());
  return static_cast<int>(std::unique(values.begin(), values.end()) - values.begin());
}

Coloring EndpointColoring(int n, bool directed, NodeId a, NodeId b) {
  const std::int32_t other = directed ? 2 : 1;
  Coloring c{std::vector<std::int32_t>(n, other)};
  c.color[b] = directed ? 1 : 0;
  c.color[a] = 0;
  return c;
}

std::string CanonicalCode::HashHex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash64));
  return buf;
}

namespace {

constexpr int kNoJump = -1;

std::uint64_t Fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void AppendU32(std::string* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Maps arbitrary color values to dense ranks preserving order.
std::vector<std::int32_t> RankColors(const Coloring& init, int* num_colors) {
  std::vector<std::int32_t> values = init.color;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::int32_t> ranks(init.color.size());
  for (std::size_t v = 0; v < ranks.size(); ++v) {
    ranks[v] = static_cast<std::int32_t>(
        std::lower_bound(values.begin(), values.end(), init.color[v]) - values.begin());
  }
  *num_colors = static_cast<int>(values.size());
  return ranks;
}

// Equitable refinement by repeated signature sorting. A node's signature is
// its color followed by the sorted colors of its out-neighbors and (for
// directed graphs) in-neighbors; new colors are signature ranks.
class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : graph_(g), n_(g.num_nodes()), offsets_(n_ + 1), order_(n_), next_(n_) {}

  int Refine(std::vector<std::int32_t>& colors, int num_colors) {
    while (num_colors < n_) {
      BuildSignatures(colors);
      std::iota(order_.begin(), order_.end(), 0);
      std::sort(order_.begin(), order_.end(),
                [&](NodeId x, NodeId y) { return Less(x, y); });
      int rank = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && !Equal(order_[i - 1], order_[i])) ++rank;
        next_[order_[i]] = rank;
      }
      const int refined = n_ == 0 ? 0 : rank + 1;
      if (refined == num_colors) break;
      colors.swap(next_);
      num_colors = refined;
    }
    return num_colors;
  }

 private:
  void BuildSignatures(const std::vector<std::int32_t>& colors) {
    data_.clear();
    for (NodeId v = 0; v < n_; ++v) {
      offsets_[v] = data_.size();
      data_.push_back(colors[v]);
      const std::size_t out_begin = data_.size();
      for (NodeId w : graph_.OutNeighbors(v)) data_.push_back(colors[w]);
      std::sort(data_.begin() + out_begin, data_.end());
      if (graph_.directed()) {
        data_.push_back(-1);
        const std::size_t in_begin = data_.size();
        for (NodeId w : graph_.InNeighbors(v)) data_.push_back(colors[w]);
        std::sort(data_.begin() + in_begin, data_.end());
      }
    }
    offsets_[n_] = data_.size();
  }

  std::span<const std::int32_t> Sig(NodeId v) const {
    return {data_.data() + offsets_[v], data_.data() + offsets_[v + 1]};
  }
  bool Less(NodeId x, NodeId y) const {
    const auto a = Sig(x);
    const auto b = Sig(y);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
  bool Equal(NodeId x, NodeId y) const {
    const auto a = Sig(x);
    const auto b = Sig(y);
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

  const Graph& graph_;
  int n_;
  std::vector<std::size_t> offsets_;
  std::vector<std::int32_t> data_;
  std::vector<NodeId> order_;
  std::vector<std::int32_t> next_;
};

// Ordered partition of the nodes: cells are contiguous runs of `elements`
// and a node's color is the start position of its cell.
struct OrderedPartition {
  std::vector<NodeId> elements;
  std::vector<std::int32_t> cell_of;
  std::vector<std::int32_t> cell_end;  // valid at cell starts
  int num_cells = 0;
};

// Splitter-queue refinement to the coarsest equitable partition. Every
// decision depends only on cell positions and neighbor counts, so the cell
// order is isomorphism-invariant.
class PartitionRefiner {
 public:
  explicit PartitionRefiner(const Graph& g)
      : graph_(g), n_(g.num_nodes()), count_(n_, 0), queued_(n_, 0) {}

  void Refine(OrderedPartition& p, std::span<const std::int32_t> splitters) {
    queue_.clear();
    for (std::int32_t s : splitters) {
      queue_.push_back(s);
      queued_[s] = 1;
    }
    const std::int64_t out_weight = graph_.directed() ? n_ + 1 : 1;
    std::size_t head = 0;
    while (head < queue_.size()) {
      const std::int32_t s = queue_[head++];
      queued_[s] = 0;
      if (p.num_cells == n_) continue;
      const std::int32_t e = p.cell_end[s];
      touched_.clear();
      for (std::int32_t pos = s; pos < e; ++pos) {
        const NodeId w = p.elements[pos];
        for (NodeId v : graph_.InNeighbors(w)) Touch(v, out_weight);
        if (graph_.directed()) {
          for (NodeId v : graph_.OutNeighbors(w)) Touch(v, 1);
        }
      }
      cells_.clear();
      for (NodeId v : touched_) cells_.push_back(p.cell_of[v]);
      std::sort(cells_.begin(), cells_.end());
      cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
      for (std::int32_t c : cells_) Split(p, c);
      for (NodeId v : touched_) count_[v] = 0;
    }
    if (head > 0) queue_.clear();
  }

 private:
  void Touch(NodeId v, std::int64_t weight) {
    if (count_[v] == 0) touched_.push_back(v);
    count_[v] += weight;
  }

  void Split(OrderedPartition& p, std::int32_t c) {
    const std::int32_t e = p.cell_end[c];
    if (e - c == 1) return;
    auto first = p.elements.begin() + c;
    auto last = p.elements.begin() + e;
    std::sort(first, last, [&](NodeId x, NodeId y) {
      return count_[x] != count_[y] ? count_[x] < count_[y] : x < y;
    });
    if (count_[*first] == count_[*(last - 1)]) return;
    const bool was_queued = queued_[c] != 0;
    parts_.clear();
    std::int32_t begin = c;
    for (std::int32_t pos = c + 1; pos <= e; ++pos) {
      if (pos == e || count_[p.elements[pos]] != count_[p.elements[pos - 1]]) {
        parts_.push_back(begin);
        p.cell_end[begin] = pos;
        for (std::int32_t q = begin; q < pos; ++q) p.cell_of[p.elements[q]] = begin;
        begin = pos;
      }
    }
    p.num_cells += static_cast<int>(parts_.size()) - 1;
    // Hopcroft: a cell already waiting keeps all parts queued; otherwise the
    // first largest part can be skipped.
    std::int32_t skip = -1;
    if (!was_queued) {
      std::int32_t best = -1;
      for (std::int32_t start : parts_) {
        if (best < 0 || p.cell_end[start] - start > p.cell_end[best] - best) best = start;
      }
      skip = best;
    }
    for (std::int32_t start : parts_) {
      if (start == skip || queued_[start]) continue;
      queue_.push_back(start);
      queued_[start] = 1;
    }
  }

  const Graph& graph_;
  int n_;
  std::vector<std::int64_t> count_;
  std::vector<char> queued_;
  std::vector<std::int32_t> queue_;
  std::vector<NodeId> touched_;
  std::vector<std::int32_t> cells_;
  std::vector<std::int32_t> parts_;
};

struct Leaf {
  std::vector<std::uint64_t> certificate;
  std::vector<NodeId> path;
  std::vector<NodeId> node_at;  // position -> node
};

class Search {
 public:
  Search(const Graph& g, const Coloring& init, bool want_automorphisms)
      : graph_(g),
        n_(g.num_nodes()),
        want_automorphisms_(want_automorphisms),
        refiner_(g),
        path_pos_(g.num_nodes(), 0) {
    initial_ = RankColors(init, &initial_colors_);
  }

  CanonicalResult Run(const Coloring& init) {
    OrderedPartition root;
    root.elements.resize(n_);
    std::iota(root.elements.begin(), root.elements.end(), 0);
    std::stable_sort(root.elements.begin(), root.elements.end(),
                     [&](NodeId x, NodeId y) { return initial_[x] < initial_[y]; });
    root.cell_of.resize(n_);
    root.cell_end.resize(n_ + 1);
    std::vector<std::int32_t> starts;
    for (int pos = 0; pos < n_;) {
      int end = pos;
      while (end < n_ && initial_[root.elements[end]] == initial_[root.elements[pos]]) ++end;
      for (int q = pos; q < end; ++q) root.cell_of[root.elements[q]] = pos;
      root.cell_end[pos] = end;
      starts.push_back(pos);
      pos = end;
    }
    root.num_cells = static_cast<int>(starts.size());
    refiner_.Refine(root, starts);
    SeedTwinGenerators();
    levels_.resize(n_ + 1);
    Explore(0, root);

    CanonicalResult result;
    const Leaf& best = best_;
    std::vector<NodeId> position(n_);
    for (int i = 0; i < n_; ++i) position[best.node_at[i]] = i;
    result.labeling = Permutation(std::move(position));

    std::string bytes;
    bytes.reserve(4 * (2 + n_) + 1 + 8 * best.certificate.size());
    AppendU32(&bytes, static_cast<std::uint32_t>(n_));
    bytes.push_back(graph_.directed() ? 'D' : 'U');
    for (int i = 0; i < n_; ++i) {
      AppendU32(&bytes, static_cast<std::uint32_t>(init.color[best.node_at[i]]));
    }
    AppendU32(&bytes, static_cast<std::uint32_t>(best.certificate.size()));
    for (std::uint64_t e : best.certificate) {
      AppendU32(&bytes, static_cast<std::uint32_t>(e >> 32));
      AppendU32(&bytes, static_cast<std::uint32_t>(e & 0xffffffffu));
    }
    result.code.hash64 = Fnv1a64(bytes);
    result.code.bytes = std::move(bytes);

    if (want_automorphisms_) {
      for (const SparseGenerator& gen : generators_) {
        std::vector<NodeId> image(n_);
        std::iota(image.begin(), image.end(), 0);
        for (std::size_t i = 0; i < gen.support.size(); ++i) image[gen.support[i]] = gen.image[i];
        result.automorphisms.generators.emplace_back(std::move(image));
      }
      result.automorphisms.group_order = GroupOrder();
    }
    result.tree_nodes = tree_nodes_;
    return result;
  }

 private:
  // A permutation stored as its moved points.
  struct SparseGenerator {
    std::vector<NodeId> support;
    std::vector<NodeId> image;
  };

  // Buffers reused by every tree node at one depth.
  struct LevelScratch {
    std::vector<NodeId> cell;
    std::vector<NodeId> explored;
    OrderedPartition child;
    DisjointSets orbits{0};
  };

  int Explore(int level, const OrderedPartition& p) {
    ++tree_nodes_;
    if (p.num_cells == n_) return ProcessLeaf(p.cell_of);

    // First smallest non-singleton cell.
    std::int32_t target = -1;
    for (std::int32_t pos = 0; pos < n_; pos = p.cell_end[pos]) {
      const std::int32_t size = p.cell_end[pos] - pos;
      if (size > 1 && (target < 0 || size < p.cell_end[target] - target)) target = pos;
    }
    const std::int32_t target_end = p.cell_end[target];
    LevelScratch& scratch = levels_[level];
    scratch.cell.assign(p.elements.begin() + target, p.elements.begin() + target_end);
    scratch.explored.clear();
    if (scratch.orbits.size() != static_cast<std::size_t>(n_)) {
      scratch.orbits = DisjointSets(n_);
    } else {
      scratch.orbits.Reset();
    }
    // Orbits of the generators that fix the current path pointwise.
    DisjointSets& orbits = scratch.orbits;
    std::vector<NodeId>& explored = scratch.explored;
    OrderedPartition& child = scratch.child;
    std::size_t gens_absorbed = 0;
    for (NodeId w : scratch.cell) {
      for (; gens_absorbed < generators_.size(); ++gens_absorbed) {
        const SparseGenerator& gen = generators_[gens_absorbed];
        if (!FixesPath(gen)) continue;
        for (std::size_t i = 0; i < gen.support.size(); ++i) {
          orbits.Union(gen.support[i], gen.image[i]);
        }
      }
      const bool equivalent = std::any_of(explored.begin(), explored.end(), [&](NodeId x) {
        return orbits.Find(x) == orbits.Find(w);
      });
      if (equivalent) continue;
      explored.push_back(w);

      child = p;
      auto it = std::find(child.elements.begin() + target, child.elements.begin() + target_end, w);
      std::iter_swap(child.elements.begin() + target, it);
      child.cell_end[target] = target + 1;
      child.cell_end[target + 1] = target_end;
      for (std::int32_t q = target + 1; q < target_end; ++q) {
        child.cell_of[child.elements[q]] = target + 1;
      }
      ++child.num_cells;
      refiner_.Refine(child, std::span<const std::int32_t>(&target, 1));
      path_.push_back(w);
      path_pos_[w] = level + 1;
      const int jump = Explore(level + 1, child);
      path_pos_[w] = 0;
      path_.pop_back();
      if (jump != kNoJump && jump < level) return jump;
    }
    return kNoJump;
  }

  void AddGenerator(const Permutation& gamma) {
    SparseGenerator gen;
    for (NodeId v = 0; v < n_; ++v) {
      if (gamma[v] != v) {
        gen.support.push_back(v);
        gen.image.push_back(gamma[v]);
      }
    }
    generators_.push_back(std::move(gen));
  }

  // Same-colored nodes with equal open (or equal closed) neighborhoods can be
  // swapped freely. Seeding those transpositions lets orbit pruning skip
  // twin siblings instead of descending to a leaf for each one.
  void SeedTwinGenerators() {
    std::vector<std::int32_t> keys;
    std::vector<std::size_t> offset(n_ + 1);
    std::vector<NodeId> order(n_);
    for (const bool closed : {false, true}) {
      keys.clear();
      for (NodeId v = 0; v < n_; ++v) {
        offset[v] = keys.size();
        keys.push_back(initial_[v]);
        keys.push_back(graph_.HasEdge(v, v) ? 1 : 0);
        auto append = [&](std::span<const NodeId> nbrs) {
          bool placed = !closed;
          for (NodeId w : nbrs) {
            if (w == v) continue;
            if (!placed && w > v) {
              keys.push_back(v);
              placed = true;
            }
            keys.push_back(w);
          }
          if (!placed) keys.push_back(v);
          keys.push_back(-1);
        };
        append(graph_.OutNeighbors(v));
        if (graph_.directed()) append(graph_.InNeighbors(v));
      }
      offset[n_] = keys.size();
      auto key = [&](NodeId v) {
        return std::span<const std::int32_t>(keys.data() + offset[v], offset[v + 1] - offset[v]);
      };
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
        const auto kx = key(x), ky = key(y);
        return std::lexicographical_compare(kx.begin(), kx.end(), ky.begin(), ky.end());
      });
      for (int i = 1; i < n_; ++i) {
        const NodeId a = order[i - 1], b = order[i];
        const auto ka = key(a), kb = key(b);
        if (!std::equal(ka.begin(), ka.end(), kb.begin(), kb.end())) continue;
        generators_.push_back({{std::min(a, b), std::max(a, b)}, {std::max(a, b), std::min(a, b)}});
      }
    }
  }

  // True if gen fixes every node on the current path.
  bool FixesPath(const SparseGenerator& gen) const {
    for (NodeId v : gen.support) {
      if (path_pos_[v] != 0) return false;
    }
    return true;
  }

  int ProcessLeaf(const std::vector<std::int32_t>& colors) {
    Leaf& leaf = scratch_leaf_;
    leaf.path = path_;
    leaf.node_at.resize(n_);
    for (NodeId v = 0; v < n_; ++v) leaf.node_at[colors[v]] = v;
    leaf.certificate.clear();
    leaf.certificate.reserve(graph_.num_edges());
    for (const auto& [a, b] : graph_.edges()) {
      std::uint64_t x = static_cast<std::uint64_t>(colors[a]);
      std::uint64_t y = static_cast<std::uint64_t>(colors[b]);
      if (!graph_.directed() && x > y) std::swap(x, y);
      leaf.certificate.push_back((x << 32) | y);
    }
    std::sort(leaf.certificate.begin(), leaf.certificate.end());

    if (!have_first_) {
      first_ = leaf;
      std::swap(best_, leaf);
      have_first_ = true;
      return kNoJump;
    }
    if (leaf.certificate == first_.certificate) {
      RecordAutomorphism(first_, leaf);
      return CommonPrefix(first_.path, leaf.path);
    }
    if (leaf.certificate == best_.certificate) {
      RecordAutomorphism(best_, leaf);
      return CommonPrefix(best_.path, leaf.path);
    }
    if (leaf.certificate < best_.certificate) std::swap(best_, leaf);
    return kNoJump;
  }

  void RecordAutomorphism(const Leaf& from, const Leaf& to) {
    std::vector<NodeId> image(n_);
    for (int i = 0; i < n_; ++i) image[from.node_at[i]] = to.node_at[i];
    const Permutation gamma(std::move(image));
    if (!IsAutomorphism(graph_, gamma)) {
      throw InvariantViolation("leaf coincidence produced a non-automorphism");
    }
    for (NodeId v = 0; v < n_; ++v) {
      if (initial_[v] != initial_[gamma[v]]) {
        throw InvariantViolation("automorphism does not preserve colors");
      }
    }
    AddGenerator(gamma);
  }

  static int CommonPrefix(const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
    int i = 0;
    while (i < static_cast<int>(x.size()) && i < static_cast<int>(y.size()) && x[i] == y[i]) ++i;
    return i;
  }

  // |Aut| = product over first-path levels of the orbit length of the
  // individualized vertex under the stabilizer of the earlier ones. The
  // generators fixing a first-path prefix generate that stabilizer.
  boost::multiprecision::cpp_int GroupOrder() const {
    const std::vector<NodeId>& path = first_.path;
    const int depth = static_cast<int>(path.size());
    // Bucket generators by the first path position they move; a generator in
    // bucket m fixes path[0..m).
    std::vector<int> first_pos(n_, depth);
    for (int i = 0; i < depth; ++i) first_pos[path[i]] = i;
    std::vector<std::vector<std::size_t>> by_level(depth + 1);
    for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
      int moved = depth;
      for (NodeId v : generators_[gi].support) moved = std::min(moved, first_pos[v]);
      by_level[moved].push_back(gi);
    }
    boost::multiprecision::cpp_int order = 1;
    DisjointSets orbits(n_);
    auto absorb = [&](const std::vector<std::size_t>& bucket) {
      for (std::size_t gi : bucket) {
        const SparseGenerator& gen = generators_[gi];
        for (std::size_t i = 0; i < gen.support.size(); ++i) {
          orbits.Union(gen.support[i], gen.image[i]);
        }
      }
    };
    absorb(by_level[depth]);
    for (int level = depth - 1; level >= 0; --level) {
      absorb(by_level[level]);
      order *= orbits.SetSize(path[level]);
    }
    return order;
  }

  const Graph& graph_;
  int n_;
  bool want_automorphisms_;
  PartitionRefiner refiner_;
  std::vector<std::int32_t> initial_;
  int initial_colors_ = 0;
  std::vector<NodeId> path_;
  // 1 + depth of a node on the current path, 0 if it is not on it.
  std::vector<int> path_pos_;
  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  Leaf scratch_leaf_;
  std::vector<LevelScratch> levels_;
  std::vector<SparseGenerator> generators_;
  std::uint64_t tree_nodes_ = 0;
};

}  // namespace

Coloring ColorRefine(const Graph& g, const Coloring& init) {
  if (init.size() != g.num_nodes()) {
    throw InvariantViolation("coloring size does not match graph");
  }
  int num = 0;
  Coloring out{RankColors(init, &num)};
  Refiner(g).Refine(out.color, num);
  return out;
}

CanonicalResult Canonicalize(const Graph& g, const Coloring& init,
                             const CanonicalOptions& options) {
  if (init.size() != g.num_nodes()) {
    throw InvariantViolation("coloring size does not match graph");
  }
  for (std::int32_t c : init.color) {
    if (c < 0) throw InvariantViolation("negative node color");
  }
  if (g.num_nodes() > options.max_nodes) {
    throw ResourceError("graph has " + std::to_string(g.num_nodes()) +
                        " nodes, canonicalization cap is " +
                        std::to_string(options.max_nodes));
  }
  Search search(g, init, options.want_automorphisms);
  return search.Run(init);
}

bool IsAutomorphism(const Graph& g, const Permutation& p) {
  if (p.size() != g.num_nodes()) return false;
  for (const auto& [a, b] : g.edges()) {
    if (!g.HasEdge(p[a], p[b])) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> PairOrbits(const Graph& g,
                                                 const GeneratorSet& gens,
                                                 const std::vector<PairRef>& pairs) {
  for (const Permutation& gamma : gens.generators) {
    if (!IsAutomorphism(g, gamma)) {
      throw InvariantViolation("generator is not an automorphism of the graph");
    }
  }
  const std::uint64_t n = static_cast<std::uint64_t>(g.num_nodes());
  const bool directed = g.directed();
  constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;
  const bool dense = n * n <= kDenseLimit;

  std::vector<std::int64_t> dense_index;
  std::unordered_map<std::uint64_t, std::size_t> sparse_index;
  if (dense) {
    dense_index.assign(n * n, -1);
  } else {
    sparse_index.reserve(pairs.size());
  }
  auto key = [&](NodeId a, NodeId b) {
    const PairRef p = PairRef::Make(a, b, directed);
    return static_cast<std::uint64_t>(p.a) * n + static_cast<std::uint64_t>(p.b);
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::uint64_t k = key(pairs[i].a, pairs[i].b);
    if (dense) {
      dense_index[k] = static_cast<std::int64_t>(i);
    } else {
      sparse_index.emplace(k, i);
    }
  }
  auto lookup = [&](std::uint64_t k) -> std::int64_t {
    if (dense) return dense_index[k];
    auto it = sparse_index.find(k);
    return it == sparse_index.end() ? -1 : static_cast<std::int64_t>(it->second);
  };

  DisjointSets sets(pairs.size());
  for (const Permutation& gamma : gens.generators) {
    if (dense) {
      // Only pairs touching the support move.
      for (NodeId a = 0; a < static_cast<NodeId>(n); ++a) {
        if (gamma[a] == a) continue;
        for (NodeId b = 0; b < static_cast<NodeId>(n); ++b) {
          for (int orient = 0; orient < (directed ? 2 : 1); ++orient) {
            const NodeId x = orient == 0 ? a : b;
            const NodeId y = orient == 0 ? b : a;
            const std::int64_t from = lookup(key(x, y));
            if (from < 0) continue;
            const std::int64_t to = lookup(key(gamma[x], gamma[y]));
            if (to >= 0) sets.Union(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
          }
        }
      }
    } else {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::int64_t to = lookup(key(gamma[pairs[i].a], gamma[pairs[i].b]));
        if (to >= 0) sets.Union(i, static_cast<std::size_t>(to));
      }
    }
  }

  std::vector<std::vector<std::size_t>> blocks;
  std::unordered_map<std::size_t, std::size_t> block_of_root;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t root = sets.Find(i);
    auto [it, inserted] = block_of_root.try_emplace(root, blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(i);
  }
  return blocks;
}

}  // namespace linklimits
