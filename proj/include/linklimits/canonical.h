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

// Colored-graph canonical forms and automorphism groups.
//
// The search is a plain individualization-refinement tree: every node of the
// tree is an equitable ordered partition, children individualize one vertex
// of the first smallest non-singleton cell, and leaves are discrete
// partitions read as labelings. The canonical form is the lexicographically
// smallest relabeled edge list over all leaves. Automorphisms are recorded
// whenever two leaves give the same edge list, and subtrees that are images
// of already-explored subtrees under recorded automorphisms are skipped, so
// the recorded generators always generate the full color-preserving group.

#ifndef LINKLIMITS_CANONICAL_H_
#define LINKLIMITS_CANONICAL_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "linklimits/graph.h"

namespace linklimits {

// Node colors. Values are small non-negative integers; only their relative
// order matters for refinement, but the values themselves are part of the
// canonical code so that codes of different graphs are comparable.
struct Coloring {
  std::vector<std::int32_t> color;

  static Coloring Uniform(int n) { return Coloring{std::vector<std::int32_t>(n, 0)}; }
  int size() const { return static_cast<int>(color.size()); }
  int NumClasses() const;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Distinguishes the endpoints of a pair: undirected pairs share color 0,
// directed pairs use 0 (source) and 1 (target). All other nodes get the next
// color.
Coloring EndpointColoring(int n, bool directed, NodeId a, NodeId b);

struct CanonicalCode {
  std::string bytes;
  std::uint64_t hash64 = 0;

  std::string HashHex() const;
  friend bool operator==(const CanonicalCode& x, const CanonicalCode& y) {
    return x.hash64 == y.hash64 && x.bytes == y.bytes;
  }
  friend bool operator<(const CanonicalCode& x, const CanonicalCode& y) {
    if (x.hash64 != y.hash64) return x.hash64 < y.hash64;
    return x.bytes < y.bytes;
  }
};

struct GeneratorSet {
  std::vector<Permutation> generators;
  // Order of the generated group.
  boost::multiprecision::cpp_int group_order = 1;
};

struct CanonicalOptions {
  int max_nodes = 100000;
  // When false, CanonicalResult::automorphisms is left empty.
  bool want_automorphisms = true;
};

struct CanonicalResult {
  CanonicalCode code;
  // node -> canonical position
  Permutation labeling;
  GeneratorSet automorphisms;
  std::uint64_t tree_nodes = 0;
};

// Coarsest equitable refinement of `init`. Output colors are ranks
// 0..c-1 ordered consistently with the input colors.
Coloring ColorRefine(const Graph& g, const Coloring& init);

// Throws ResourceError when g exceeds options.max_nodes.
CanonicalResult Canonicalize(const Graph& g, const Coloring& init,
                             const CanonicalOptions& options = {});

inline CanonicalCode ComputeCanonicalCode(const Graph& g, const Coloring& init,
                                          const CanonicalOptions& options = {}) {
  CanonicalOptions code_only = options;
  code_only.want_automorphisms = false;
  return Canonicalize(g, init, code_only).code;
}

inline GeneratorSet AutomorphismGenerators(const Graph& g, const Coloring& init,
                                           const CanonicalOptions& options = {}) {
  return Canonicalize(g, init, options).automorphisms;
}

bool IsAutomorphism(const Graph& g, const Permutation& p);

// Blocks of indices into `pairs`; two pairs share a block iff a product of
// generators maps one onto the other. Blocks are sorted and ordered by their
// first member. Throws InvariantViolation if a generator is not an
// automorphism of g.
std::vector<std::vector<std::size_t>> PairOrbits(const Graph& g,
                                                 const GeneratorSet& gens,
                                                 const std::vector<PairRef>& pairs);

}  // namespace linklimits

#endif  // LINKLIMITS_CANONICAL_H_
