import math
import os

import pytest

import linklimits as ll

DATA = os.environ.get(
    "LINKLIMITS_TEST_DATA",
    os.path.join(os.path.dirname(__file__), "..", "..", "data"),
)
FIG1 = os.path.join(DATA, "toy", "fig1_anonymized.edges")


def node(g, label):
    return g.labels.index(label)


def test_load_and_symmetry():
    g = ll.load_edge_list(FIG1)
    assert (g.num_nodes, g.num_edges, g.directed) == (6, 7, False)
    gens, order = ll.automorphism_group(g)
    assert order == 8
    assert all(sorted(p) == list(range(6)) for p in gens)
    blocks = ll.partition(g)
    assert sorted(len(b) for b in blocks) == [4, 4]


def test_fig1_split_bounds():
    g = ll.load_edge_list(FIG1)
    positives = [(node(g, "v"), node(g, "u")), (node(g, "v"), node(g, "r")),
                 (node(g, "r"), node(g, "q"))]
    cells = ll.label_cells(g, positives)
    assert sorted(cells) == [(1, 3), (2, 2)]
    report = ll.bounds(cells)
    assert report["defined"]
    assert report["max_roc"] == pytest.approx(19 / 30, abs=1e-15)
    assert report["max_aupr"] == pytest.approx(1 / 3 + (1 + math.log(2)) / 12, abs=1e-15)


def test_appendix_ap():
    cells = [(10, 0), (2, 2), (9, 7)]
    assert ll.average_precision(cells) == pytest.approx(0.858, abs=5e-4)
    assert ll.average_precision(cells, sort=True) == pytest.approx(0.856, abs=5e-4)
    assert ll.max_aupr(cells) >= ll.average_precision(cells)


def test_canonical_code_ignores_labels():
    a = ll.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    b = ll.Graph.from_edges(4, [(3, 0), (0, 2), (2, 1)])
    c = ll.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert ll.canonical_code(a) == ll.canonical_code(b)
    assert ll.canonical_code(a) != ll.canonical_code(c)


def test_khop_partition_and_experiment():
    g = ll.load_edge_list(os.path.join(DATA, "toy", "random40.edges"))
    assert len(ll.partition(g, k=1)) <= len(ll.partition(g, k=2))
    result = ll.run_experiment(g, trials=3, seed=4, k_max=2, threads=1)
    again = ll.run_experiment(g, trials=3, seed=4, k_max=2, threads=2)
    assert result == again
    assert result["trials"] == 3
    assert len(result["global"]["aupr"]["samples"]) == 3


def test_errors_map_to_python_exceptions():
    with pytest.raises(ll.DegenerateInputError):
        ll.max_roc([(0, 4)])
    with pytest.raises(ValueError):
        ll.max_roc([(-1, 4)])
    with pytest.raises(ValueError):
        ll.load_edge_list(os.path.join(DATA, "missing.edges"))
