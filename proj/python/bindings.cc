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

// Python bindings for the core operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "linklimits/canonical.h"
#include "linklimits/errors.h"
#include "linklimits/experiment.h"
#include "linklimits/metrics.h"
#include "linklimits/partition.h"
#include "linklimits/report.h"

namespace py = pybind11;

namespace linklimits {
namespace {

using CellList = std::vector<std::pair<std::int64_t, std::int64_t>>;

LabeledCells ToCells(const CellList& list) {
  LabeledCells cells;
  for (const auto& [p, n] : list) cells.cells.push_back(Cell{p, n});
  return cells;
}

py::object FromJson(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::int_ BigInt(const boost::multiprecision::cpp_int& v) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(v.str().c_str(), nullptr, 10)));
}

std::vector<PairRef> ToPairs(const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& list) {
  std::vector<PairRef> pairs;
  for (const auto& [a, b] : list) {
    if (a < 0 || b < 0 || a >= g.num_nodes() || b >= g.num_nodes()) {
      throw InputError("pair endpoint out of range");
    }
    pairs.push_back(PairRef::Make(a, b, g.directed()));
  }
  return pairs;
}

py::list Blocks(const CellPartition& part) {
  py::list blocks;
  for (const auto& block : part.blocks) {
    py::list members;
    for (std::size_t i : block) members.append(py::make_tuple(part.pairs[i].a, part.pairs[i].b));
    blocks.append(members);
  }
  return blocks;
}

CellPartition Partition(const Graph& g, std::optional<int> k, bool follow_direction,
                        bool approx_wl) {
  PartitionOptions options;
  options.hop_direction = follow_direction ? HopDirection::kFollow : HopDirection::kIgnore;
  py::gil_scoped_release release;
  if (!k || *k <= 0) return GlobalOrbitPartition(g, options);
  return approx_wl ? ApproxWlPartition(g, *k, options) : KhopPartition(g, *k, options);
}

}  // namespace
}  // namespace linklimits

PYBIND11_MODULE(_linklimits, m) {
  using namespace linklimits;
  m.doc() = "Upper bounds on topology-only link prediction";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError",
                                               PyExc_ArithmeticError);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](int n, const std::vector<std::pair<NodeId, NodeId>>& edges, bool directed) {
            return Graph::FromEdges(n, directed, /*self_loops_allowed=*/false, edges);
          },
          py::arg("num_nodes"), py::arg("edges"), py::arg("directed") = false)
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("labels", &Graph::labels)
      .def_property_readonly("edges", &Graph::edges)
      .def("has_edge", [](const Graph& g, NodeId a, NodeId b) { return g.HasEdge(a, b); })
      .def("non_edges",
           [](const Graph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const PairRef& e : NonEdges(g)) out.emplace_back(e.a, e.b);
             return out;
           })
      .def("__repr__", [](const Graph& g) {
        std::ostringstream s;
        s << "<Graph n=" << g.num_nodes() << " edges=" << g.num_edges()
          << (g.directed() ? " directed>" : " undirected>");
        return s.str();
      });

  m.def(
      "load_edge_list",
      [](const std::string& path, bool directed, bool include_self_loops) {
        LoadOptions options;
        options.directed = directed;
        options.keep_self_loops = true;
        options.include_self_loop_pairs = include_self_loops;
        return LoadEdgeListFile(path, options);
      },
      py::arg("path"), py::arg("directed") = false, py::arg("include_self_loops") = false,
      "Read a whitespace-separated edge list; labels keep first-appearance order.");

  m.def(
      "automorphism_group",
      [](const Graph& g, std::optional<std::vector<std::int32_t>> colors) {
        const Coloring init = colors ? Coloring{*colors} : Coloring::Uniform(g.num_nodes());
        const GeneratorSet gens = AutomorphismGenerators(g, init);
        std::vector<std::vector<NodeId>> images;
        for (const Permutation& p : gens.generators) images.push_back(p.image());
        return py::make_tuple(images, BigInt(gens.group_order));
      },
      py::arg("graph"), py::arg("colors") = py::none(),
      "Return (generators, group order); each generator is a node image list.");

  m.def(
      "canonical_code",
      [](const Graph& g, std::optional<std::vector<std::int32_t>> colors) {
        const Coloring init = colors ? Coloring{*colors} : Coloring::Uniform(g.num_nodes());
        return py::bytes(ComputeCanonicalCode(g, init).bytes);
      },
      py::arg("graph"), py::arg("colors") = py::none());

  m.def(
      "partition",
      [](const Graph& g, std::optional<int> k, bool follow_direction, bool approx_wl) {
        return Blocks(Partition(g, k, follow_direction, approx_wl));
      },
      py::arg("graph"), py::arg("k") = py::none(), py::arg("follow_direction") = false,
      py::arg("approx_wl") = false,
      "Non-edge cells as lists of (a, b); k=None gives automorphism orbits.");

  m.def(
      "label_cells",
      [](const Graph& residual, const std::vector<std::pair<NodeId, NodeId>>& positives,
         std::optional<int> k, bool follow_direction) {
        const CellPartition part = Partition(residual, k, follow_direction, false);
        CellList out;
        for (const Cell& c : LabelCells(part, ToPairs(residual, positives)).cells) {
          out.emplace_back(c.p, c.n);
        }
        return out;
      },
      py::arg("residual"), py::arg("positives"), py::arg("k") = py::none(),
      py::arg("follow_direction") = false);

  m.def(
      "bounds",
      [](const CellList& cells) { return FromJson(BoundReportJson(ComputeBounds(ToCells(cells)))); },
      py::arg("cells"), "Max ROC, max AUPR and the AP bound for (p, n) cells.");
  m.def(
      "max_roc", [](const CellList& cells) { return MaxRoc(SortCells(ToCells(cells))); },
      py::arg("cells"));
  m.def(
      "max_aupr", [](const CellList& cells) { return MaxAupr(SortCells(ToCells(cells))); },
      py::arg("cells"));
  m.def(
      "average_precision",
      [](const CellList& cells, bool sort) {
        const LabeledCells c = ToCells(cells);
        return sort ? AveragePrecision(SortCells(c)) : AveragePrecision(c);
      },
      py::arg("cells"), py::arg("sort") = false,
      "AP with rightmost precision per cell, in listed or density order.");

  m.def(
      "run_experiment",
      [](const Graph& g, double p, int trials, std::uint64_t seed, int k_max,
         double stop_epsilon, std::optional<double> downsample, bool follow_direction,
         int threads) {
        ExperimentConfig cfg;
        cfg.removal_prob = p;
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.k_max = k_max;
        cfg.stop_epsilon = stop_epsilon;
        cfg.downsample = downsample;
        cfg.hop_direction = follow_direction ? HopDirection::kFollow : HopDirection::kIgnore;
        cfg.threads = threads;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = RunExperiment(g, cfg);
        }
        nlohmann::json config = ConfigJson(cfg, g.directed(), g.self_loops_allowed());
        nlohmann::json j = ExperimentJson(result, "", config, RunManifest{});
        j.erase("manifest");
        j.erase("graph");
        return FromJson(j);
      },
      py::arg("graph"), py::arg("p") = 0.1, py::arg("trials") = 10, py::arg("seed") = 0,
      py::arg("k_max") = 8, py::arg("stop_epsilon") = 0.005, py::arg("downsample") = py::none(),
      py::arg("follow_direction") = false, py::arg("threads") = 0);

  m.attr("__version__") = kToolVersion;
}
