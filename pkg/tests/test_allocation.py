import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sparsedecomp.allocation import (
    Allocation,
    Potential,
    compute_allocation,
    optimize,
    potential,
    shift_along_cycle,
)
from sparsedecomp.certificates import allocation_doc, allocation_from_doc
from sparsedecomp.density import max_density
from sparsedecomp.graphs import (
    Digraph,
    complete_graph,
    cycle_graph,
    is_forest,
    path_graph,
    strong_components,
)

from conftest import graphs_st, random_graph

F = Fraction


def triangle_half() -> Allocation:
    theta = {}
    for u, v in ((0, 1), (1, 2), (0, 2)):
        theta[(u, v)] = F(1, 2)
        theta[(v, u)] = F(1, 2)
    # Quantum grid of quarters so tests can shift by a strict sub-minimum.
    return Allocation(cycle_graph(3), F(1), theta, 4)


class TestComputeAllocation:
    def test_triangle_unit_exists(self):
        a = compute_allocation(cycle_graph(3), F(1))
        assert a is not None
        assert a.m == 1

    def test_triangle_below_density_none(self):
        assert compute_allocation(cycle_graph(3), F(9, 10)) is None

    def test_k4_tight(self):
        a = compute_allocation(complete_graph(4), F(3, 2))
        assert a is not None
        for u in range(4):
            out = sum(a.theta_of(u, v) for v in range(4))
            assert out == F(3, 2)

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            compute_allocation(cycle_graph(3), F(-1))

    @settings(max_examples=120, deadline=None)
    @given(graphs_st(max_n=6))
    def test_exists_iff_density_at_most_bound(self, g):
        for m in (F(1, 2), F(1), F(3, 2), F(2), F(9, 4)):
            a = compute_allocation(g, m)
            assert (a is not None) == (max_density(g).value <= m)
            if a is not None:
                assert a.quantum_den == m.denominator


class TestValidation:
    def test_bad_edge_sum_rejected(self):
        theta = {(0, 1): F(1, 2), (1, 0): F(1, 4)}
        with pytest.raises(ValueError):
            Allocation(path_graph(2), F(1), theta, 4)

    def test_overweight_vertex_rejected(self):
        theta = {(0, 1): F(1), (1, 0): F(0)}
        with pytest.raises(ValueError):
            Allocation(path_graph(2), F(1, 2), theta, 2)

    def test_missing_pair_rejected(self):
        with pytest.raises(ValueError):
            Allocation(path_graph(2), F(1), {(0, 1): F(1)}, 1)

    def test_off_grid_value_rejected(self):
        theta = {(0, 1): F(1, 3), (1, 0): F(2, 3)}
        with pytest.raises(ValueError):
            Allocation(path_graph(2), F(1), theta, 2)


class TestShift:
    def test_half_triangle_becomes_integral(self):
        shifted = shift_along_cycle(triangle_half(), [0, 1, 2])
        assert shifted.fractional_graph.edge_count == 0
        assert shifted.integral_digraph.arcs == {(1, 0), (2, 1), (0, 2)}

    def test_integral_cycle_reverses(self):
        theta = {
            (0, 1): F(1), (1, 0): F(0),
            (1, 2): F(1), (2, 1): F(0),
            (2, 0): F(1), (0, 2): F(0),
        }
        a = Allocation(cycle_graph(3), F(1), theta, 1)
        shifted = shift_along_cycle(a, [0, 1, 2])
        assert shifted.integral_digraph.arcs == {(1, 0), (2, 1), (0, 2)}

    def test_opposite_shifts_cancel(self):
        a = triangle_half()
        once = shift_along_cycle(a, [0, 1, 2], eps=F(1, 4))
        back = shift_along_cycle(once, [0, 2, 1], eps=F(1, 4))
        assert back.theta == a.theta

    def test_explicit_eps_validated(self):
        a = triangle_half()
        with pytest.raises(ValueError):
            shift_along_cycle(a, [0, 1, 2], eps=F(3, 4))
        with pytest.raises(ValueError):
            shift_along_cycle(a, [0, 1, 2], eps=F(1, 3))

    def test_rejects_non_cycles(self):
        a = triangle_half()
        with pytest.raises(ValueError):
            shift_along_cycle(a, [0, 1])
        with pytest.raises(ValueError):
            shift_along_cycle(a, [0, 1, 1])

    def test_rejects_zero_weight_direction(self):
        theta = {
            (0, 1): F(1), (1, 0): F(0),
            (1, 2): F(1), (2, 1): F(0),
            (2, 0): F(1), (0, 2): F(0),
        }
        a = Allocation(cycle_graph(3), F(1), theta, 1)
        with pytest.raises(ValueError):
            shift_along_cycle(a, [2, 1, 0])

    def test_quantum_preserved_under_shifts(self):
        rng = random.Random(99)
        for _ in range(30):
            g = random_graph(rng, rng.randint(3, 7), 0.6)
            m = max_density(g).value + F(rng.randint(0, 3), 4)
            if m == 0:
                continue
            a = compute_allocation(g, m)
            frac = a.fractional_graph
            # Shift along any cycle of fractional edges, if one exists.
            from sparsedecomp.allocation import _find_cycle

            cycle = _find_cycle(frac)
            if cycle is None:
                continue
            shifted = shift_along_cycle(a, cycle)
            for value in shifted.theta.values():
                assert (value * shifted.quantum_den).denominator == 1


class TestPotential:
    def test_acyclic_integral_path(self):
        theta = {
            (0, 1): F(1), (1, 0): F(0),
            (1, 2): F(1), (2, 1): F(0),
        }
        a = Allocation(path_graph(3), F(1), theta, 1)
        assert potential(a) == Potential(1, 0, -1, -1)

    def test_half_triangle(self):
        assert potential(triangle_half()) == Potential(3, 3, -3, 0)

    def test_integral_triangle(self):
        theta = {
            (0, 1): F(1), (1, 0): F(0),
            (1, 2): F(1), (2, 1): F(0),
            (2, 0): F(1), (0, 2): F(0),
        }
        a = Allocation(cycle_graph(3), F(1), theta, 1)
        assert potential(a) == Potential(1, 0, -3, 0)


class TestOptimize:
    def test_half_triangle_one_move(self):
        moves = []
        result = optimize(triangle_half(), observer=moves.append)
        assert len(moves) == 1
        assert moves[0].before == Potential(3, 3, -3, 0)
        assert moves[0].after == Potential(1, 0, -3, 0)
        assert result.fractional_graph.edge_count == 0
        parts = strong_components(result.integral_digraph)
        assert parts.terminal_count == 1

    def test_integral_strongly_connected_unchanged(self):
        theta = {
            (0, 1): F(1), (1, 0): F(0),
            (1, 2): F(1), (2, 1): F(0),
            (2, 0): F(1), (0, 2): F(0),
        }
        a = Allocation(cycle_graph(3), F(1), theta, 1)
        assert optimize(a).theta == a.theta

    @settings(max_examples=60, deadline=None)
    @given(graphs_st(max_n=7))
    def test_fixed_points_have_forest_fractional_graph(self, g):
        m = max_density(g).value
        if g.edge_count == 0:
            return
        a = compute_allocation(g, m)
        done = optimize(a)
        assert is_forest(done.fractional_graph)

    def test_contracts_on_random_allocations(self):
        rng = random.Random(2718)
        budget_slack = [F(0), F(1, 4), F(1, 2), F(1), F(3, 4)]
        for _ in range(120):
            g = random_graph(rng, rng.randint(2, 8), 0.55)
            if g.edge_count == 0:
                continue
            m = max_density(g).value + rng.choice(budget_slack)
            a = compute_allocation(g, m)
            assert a is not None
            n, e = g.n, g.edge_count
            bound = (n + 1) * (e + 1) * (n + 1) * (e + 1)
            moves = []
            done = optimize(a, observer=moves.append)
            assert len(moves) <= bound
            last = potential(a)
            for record in moves:
                assert record.before == last
                assert record.after < record.before
                for value in record.result.theta.values():
                    assert (value * record.result.quantum_den).denominator == 1
                last = record.after
            assert potential(done) == last
            assert is_forest(done.fractional_graph)
            _assert_terminal_neighborhood_independence(done)


def _assert_terminal_neighborhood_independence(a: Allocation):
    """At fixed points, the neighbors of a vertex of one terminal
    component inside another terminal component never span an edge."""
    parts = strong_components(a.integral_digraph)
    terminals = [
        comp
        for comp, term in zip(parts.components, parts.terminal)
        if term
    ]
    g = a.graph
    for cu in terminals:
        for cw in terminals:
            if cu == cw:
                continue
            for u in cu:
                inside = sorted(g.adj[u] & cw)
                for i, x in enumerate(inside):
                    for y in inside[i + 1:]:
                        assert not g.has_edge(x, y), (u, x, y)


class TestSerialization:
    def test_round_trip(self):
        a = compute_allocation(complete_graph(4), F(3, 2))
        doc = allocation_doc(a)
        back = allocation_from_doc(doc)
        assert back.theta == a.theta
        assert back.m == a.m and back.quantum_den == a.quantum_den

    def test_tampered_doc_rejected(self):
        from sparsedecomp.errors import InputFormatError

        a = compute_allocation(cycle_graph(3), F(1))
        doc = allocation_doc(a)
        doc["theta"][0][2] = "1/3"
        with pytest.raises(InputFormatError):
            allocation_from_doc(doc)
