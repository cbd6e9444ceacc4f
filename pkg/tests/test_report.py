from fractions import Fraction

from sparsedecomp.decompose import (
    forest_decompose_43,
    nash_williams_partition,
    pseudoforest_decompose,
    Decomposition,
    K_FORESTS,
)
from sparsedecomp.graphs import complete_graph, cycle_graph, empty_graph
from sparsedecomp.ramsey import ProblemInstance, ramsey_decompose
from sparsedecomp.report import (
    render_coloring,
    render_decomposition,
    render_edge_partition,
)


def test_decomposition_figure(tmp_path):
    dec = pseudoforest_decompose(complete_graph(4))
    target = tmp_path / "pf.png"
    render_decomposition(dec, target)
    assert target.stat().st_size > 0


def test_forest_figure_pdf(tmp_path):
    dec = forest_decompose_43(complete_graph(5), Fraction(9, 4))
    target = tmp_path / "f43.pdf"
    render_decomposition(dec, target)
    assert target.stat().st_size > 0


def test_kforests_figure(tmp_path):
    g = complete_graph(4)
    forests = nash_williams_partition(g, 2)
    dec = Decomposition(g, K_FORESTS, forests, None, {"k": 2})
    target = tmp_path / "kf.png"
    render_decomposition(dec, target)
    assert target.stat().st_size > 0


def test_coloring_figure(tmp_path):
    inst = ProblemInstance(cycle_graph(5), complete_graph(4), cycle_graph(4))
    coloring = ramsey_decompose(inst)
    target = tmp_path / "coloring.png"
    render_coloring(coloring, target)
    assert target.stat().st_size > 0


def test_empty_graph_figure(tmp_path):
    target = tmp_path / "empty.png"
    render_edge_partition(empty_graph(1), [("all", frozenset())], target)
    assert target.stat().st_size > 0
