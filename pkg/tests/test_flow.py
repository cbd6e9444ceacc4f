import random
from fractions import Fraction
from math import lcm

import pytest

from sparsedecomp.density import max_density
from sparsedecomp.errors import UnboundedFlowError
from sparsedecomp.flow import INF, FlowNetwork, allocation_network, max_flow
from sparsedecomp.graphs import complete_graph, cycle_graph, empty_graph, Graph

from conftest import random_graph


def test_single_arc():
    net = FlowNetwork(2, 0, 1, ((0, 1, Fraction(5, 3)),))
    res = max_flow(net)
    assert res.value == Fraction(5, 3)
    assert res.flows == (Fraction(5, 3),)
    assert res.min_cut == {0}


def test_two_parallel_paths():
    net = FlowNetwork(
        4, 0, 3,
        (
            (0, 1, Fraction(1)), (1, 3, Fraction(1)),
            (0, 2, Fraction(1, 2)), (2, 3, Fraction(1)),
        ),
    )
    assert max_flow(net).value == Fraction(3, 2)


def test_backward_flow_needed():
    # Classic crossing network: optimum requires pushing flow back.
    arcs = (
        (0, 1, Fraction(1)), (0, 2, Fraction(1)),
        (1, 2, Fraction(1)), (1, 3, Fraction(1)),
        (2, 3, Fraction(1)),
    )
    assert max_flow(FlowNetwork(4, 0, 3, arcs)).value == 2


def test_infinite_middle_arc():
    net = FlowNetwork(
        4, 0, 3,
        ((0, 1, Fraction(2)), (1, 2, INF), (2, 3, Fraction(7, 4))),
    )
    res = max_flow(net)
    assert res.value == Fraction(7, 4)
    # The unbounded arc never crosses the reported cut.
    assert not ({1} <= res.min_cut and 2 not in res.min_cut)


def test_unbounded_path_reported():
    net = FlowNetwork(3, 0, 2, ((0, 1, INF), (1, 2, INF)))
    with pytest.raises(UnboundedFlowError):
        max_flow(net)


def test_source_sink_must_differ():
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 0, ())


def test_negative_capacity_rejected():
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 1, ((0, 1, Fraction(-1)),))


def test_flow_value_multiple_of_capacity_grid():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 7)
        arcs = []
        for _ in range(rng.randint(1, 14)):
            u, v = rng.sample(range(n), 2)
            cap = Fraction(rng.randint(0, 8), rng.randint(1, 6))
            arcs.append((u, v, cap))
        net = FlowNetwork(n, 0, n - 1, tuple(arcs))
        res = max_flow(net)
        q = lcm(*(c.denominator for _, _, c in arcs))
        assert (res.value * q).denominator == 1
        for f in res.flows:
            assert (f * q).denominator == 1
        # Determinism: same input, same result.
        again = max_flow(net)
        assert again.flows == res.flows and again.min_cut == res.min_cut


class TestAllocationNetwork:
    def test_empty_graph(self):
        net = allocation_network(empty_graph(3), Fraction(2))
        assert max_flow(net).value == 0

    def test_single_edge_half(self):
        g = Graph.from_edges(2, [(0, 1)])
        assert max_flow(allocation_network(g, Fraction(1, 2))).value == 1

    def test_triangle_unit(self):
        assert max_flow(allocation_network(cycle_graph(3), Fraction(1))).value == 3

    def test_k4_three_halves(self):
        assert max_flow(
            allocation_network(complete_graph(4), Fraction(3, 2))
        ).value == 6

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            allocation_network(cycle_graph(3), Fraction(-1))

    def test_saturation_iff_density_fits(self):
        rng = random.Random(23)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 6))
            m = Fraction(rng.randint(0, 12), rng.randint(1, 4))
            saturated = max_flow(allocation_network(g, m)).value == g.edge_count
            assert saturated == (max_density(g).value <= m)
