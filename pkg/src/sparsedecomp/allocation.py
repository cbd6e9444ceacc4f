"""Fractional edge orientations with bounded out-weight, and their
local-search optimization.

An allocation assigns each edge uv a split theta(u,v) + theta(v,u) = 1
with every vertex's total out-weight at most m. Edges split 0/1 are
integral and orient into a digraph; the rest are fractional. The
optimizer shifts weight around cycles, accepting exactly the moves that
lexicographically decrease a four-part potential:

    (terminal components, fractional edges,
     -vertices inside terminal components,
     -arcs entering singleton terminal components)

Each accepted move strictly decreases the potential, so the move count
is bounded by the size of the potential grid; exceeding the bound is an
internal error. Fixed points have acyclic fractional graphs and satisfy
the structural independence properties the decomposition stages rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, NamedTuple

from .errors import OptimizerBudgetError
from .flow import allocation_network, max_flow
from .graphs import (
    ComponentPartition,
    Digraph,
    Graph,
    normalize_edge,
    strong_components,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Allocation:
    """A valid m-allocation; invariants are enforced at construction."""

    graph: Graph
    m: Fraction
    theta: dict[tuple[int, int], Fraction]
    quantum_den: int

    def __post_init__(self):
        g, m, theta = self.graph, self.m, self.theta
        if m < 0:
            raise ValueError("out-weight bound must be non-negative")
        if self.quantum_den < 1:
            raise ValueError("quantum denominator must be positive")
        expected = set()
        for u, v in g.edges:
            expected.add((u, v))
            expected.add((v, u))
        if set(theta) != expected:
            raise ValueError("theta keys must be the ordered edge pairs")
        out = [ZERO] * g.n
        for (u, v), value in theta.items():
            if not 0 <= value <= 1:
                raise ValueError(f"theta({u},{v}) outside [0,1]")
            if (value * self.quantum_den).denominator != 1:
                raise ValueError("theta value off the quantum grid")
            out[u] += value
        for u, v in g.edges:
            if theta[(u, v)] + theta[(v, u)] != 1:
                raise ValueError(f"theta does not sum to 1 on edge ({u},{v})")
        for u in range(g.n):
            if out[u] > m:
                raise ValueError(f"out-weight of vertex {u} exceeds m")

    def theta_of(self, u: int, v: int) -> Fraction:
        return self.theta.get((u, v), ZERO)

    @cached_property
    def integral_digraph(self) -> Digraph:
        return Digraph.from_arcs(
            self.graph.n,
            (pair for pair, value in self.theta.items() if value == 1),
        )

    @cached_property
    def fractional_graph(self) -> Graph:
        frac = [
            (u, v)
            for (u, v), value in self.theta.items()
            if u < v and 0 < value < 1
        ]
        return Graph.from_edges(self.graph.n, frac)

    def views(self) -> "AllocationViews":
        return AllocationViews(self.integral_digraph, self.fractional_graph)

    def __repr__(self):
        return (
            f"Allocation(n={self.graph.n}, m={self.m}, "
            f"integral={self.integral_digraph.arc_count}, "
            f"fractional={self.fractional_graph.edge_count})"
        )


@dataclass(frozen=True)
class AllocationViews:
    """The integral orientation and the fractional-edge graph."""

    integral_digraph: Digraph
    fractional_graph: Graph


class Potential(NamedTuple):
    """Lexicographic objective; smaller is better."""

    terminal_components: int
    fractional_edges: int
    neg_terminal_vertices: int
    neg_arcs_into_singletons: int


@dataclass(frozen=True)
class MoveRecord:
    """One accepted optimizer move, supplied to observers."""

    kind: str
    cycle: tuple[int, ...]
    before: Potential
    after: Potential
    result: Allocation


def compute_allocation(g: Graph, m: Fraction) -> Allocation | None:
    """Build an m-allocation from a maximum flow, or report none exists.

    The allocation exists exactly when the flow saturates every edge
    node, i.e. the flow value equals e(g); the weight each endpoint
    sends to its edge node becomes theta.
    """
    m = Fraction(m)
    if m < 0:
        raise ValueError("out-weight bound must be non-negative")
    net = allocation_network(g, m)
    result = max_flow(net)
    if result.value != g.edge_count:
        return None
    n = g.n
    theta: dict[tuple[int, int], Fraction] = {}
    for i, (u, v) in enumerate(g.sorted_edges):
        theta[(u, v)] = result.flows[n + 2 * i]
        theta[(v, u)] = result.flows[n + 2 * i + 1]
    return Allocation(g, m, theta, m.denominator)


def shift_along_cycle(a: Allocation, cycle, eps: Fraction | None = None) -> Allocation:
    """Move weight around the cycle in reverse.

    ``cycle`` lists the vertices in shift order; the pair
    (cycle[i-1], cycle[i]) loses eps and its reverse gains it. By
    default eps is the minimum forward weight along the cycle (the
    canonical shift); an explicit eps must lie in (0, minimum] and on
    the quantum grid. Rejects vertex lists that are not cycles of the
    graph and shifts whose eps would be 0.
    """
    cycle = list(cycle)
    k = len(cycle)
    if k < 3:
        raise ValueError("cycles need at least three vertices")
    if len(set(cycle)) != k:
        raise ValueError("cycle vertices must be distinct")
    pairs = [(cycle[i - 1], cycle[i]) for i in range(k)]
    for u, v in pairs:
        if not a.graph.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
    slack = min(a.theta[(u, v)] for u, v in pairs)
    if eps is None:
        eps = slack
    elif not 0 < eps <= slack:
        raise ValueError(f"eps must lie in (0, {slack}]")
    elif (eps * a.quantum_den).denominator != 1:
        raise ValueError("eps off the quantum grid")
    if eps == 0:
        raise ValueError("cycle carries no forward weight to shift")

    theta = dict(a.theta)
    for u, v in pairs:
        theta[(u, v)] -= eps
        theta[(v, u)] += eps
    shifted = Allocation(a.graph, a.m, theta, a.quantum_den)

    removed = {(u, v) for u, v in pairs if a.theta[(u, v)] == 1}
    added = {(v, u) for u, v in pairs if a.theta[(u, v)] == eps}
    expected = (a.integral_digraph.arcs - removed) | added
    assert shifted.integral_digraph.arcs == expected, "arc bookkeeping broke"
    return shifted


def potential(a: Allocation) -> Potential:
    parts = strong_components(a.integral_digraph)
    terminal_vertices = sum(
        len(comp)
        for comp, is_term in zip(parts.components, parts.terminal)
        if is_term
    )
    into_singletons = sum(
        1
        for _, head in a.integral_digraph.arcs
        if parts.terminal[parts.comp_of[head]]
        and len(parts.components[parts.comp_of[head]]) == 1
    )
    return Potential(
        parts.terminal_count,
        a.fractional_graph.edge_count,
        -terminal_vertices,
        -into_singletons,
    )


def optimize(
    a: Allocation, observer: Callable[[MoveRecord], None] | None = None
) -> Allocation:
    """Run local search to a fixed point of the shift-move catalog.

    Move families, cheapest first: cycles of fractional edges; an
    integral arc inside a terminal component closed up by the fractional
    path between its endpoints; triangles over an integral arc whose
    apex is a common fractional neighbor (apex in a singleton terminal
    component, or, when m < 2, arc inside a terminal component). A
    candidate is accepted only if its potential is strictly smaller.
    """
    n, e = a.graph.n, a.graph.edge_count
    budget = (n + 1) * (e + 1) * (n + 1) * (e + 1)
    moves = 0
    current = a
    current_pot = potential(a)
    while True:
        improved = False
        for kind, cycle in _candidate_cycles(current):
            candidate = shift_along_cycle(current, cycle)
            candidate_pot = potential(candidate)
            if candidate_pot < current_pot:
                moves += 1
                if moves > budget:
                    raise OptimizerBudgetError(
                        f"exceeded proven move bound {budget}"
                    )
                if observer is not None:
                    observer(
                        MoveRecord(
                            kind, tuple(cycle), current_pot, candidate_pot,
                            candidate,
                        )
                    )
                current, current_pot = candidate, candidate_pot
                improved = True
                break
        if not improved:
            return current


def _candidate_cycles(a: Allocation):
    """Yield (kind, vertex cycle) shift candidates in family order."""
    frac = a.fractional_graph
    cycle = _find_cycle(frac)
    if cycle is not None:
        yield "fractional-cycle", cycle
        yield "fractional-cycle", [cycle[0]] + list(reversed(cycle[1:]))

    digraph = a.integral_digraph
    parts = strong_components(digraph)

    # Integral arc inside a terminal component + fractional return path.
    for v, w in sorted(digraph.arcs):
        ci = parts.comp_of[v]
        if ci != parts.comp_of[w] or not parts.terminal[ci]:
            continue
        path = _frac_path(frac, w, v)
        if path is not None:
            yield "arc-plus-fractional-path", [v] + path[:-1]

    # Triangle shifts over an integral arc (v, w) with fractional apex u.
    small_m = a.m < 2
    for v, w in sorted(digraph.arcs):
        common = frac.adj[v] & frac.adj[w]
        if not common:
            continue
        in_terminal = (
            parts.comp_of[v] == parts.comp_of[w]
            and parts.terminal[parts.comp_of[v]]
        )
        for u in sorted(common):
            cu = parts.comp_of[u]
            apex_singleton = (
                parts.terminal[cu] and len(parts.components[cu]) == 1
            )
            if apex_singleton:
                yield "singleton-apex-triangle", [u, v, w]
            elif small_m and in_terminal:
                yield "terminal-cycle-triangle", [u, v, w]


def _find_cycle(g: Graph):
    """Some cycle of g as a vertex list, or None.

    Grows a forest edge by edge; the first edge joining two already
    connected vertices closes a cycle, recovered by a path walk.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.sorted_edges:
        if find(u) == find(v):
            prev = {u: -1}
            queue = [u]
            for x in queue:
                for y in forest[x]:
                    if y not in prev:
                        prev[y] = x
                        queue.append(y)
            path = [v]
            while path[-1] != u:
                path.append(prev[path[-1]])
            path.reverse()
            return path
        parent[find(u)] = find(v)
        forest[u].append(v)
        forest[v].append(u)
    return None


def _frac_path(frac: Graph, s: int, t: int):
    """Path from s to t in the fractional graph (BFS), or None."""
    if s == t:
        return [s]
    prev = {s: -1}
    queue = [s]
    for v in queue:
        for w in sorted(frac.adj[v]):
            if w not in prev:
                prev[w] = v
                if w == t:
                    path = [t]
                    while path[-1] != s:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                queue.append(w)
    return None
