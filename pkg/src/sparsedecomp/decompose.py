"""Certified edge decompositions.

Three producers: split off a pseudoforest leaving small 2-density,
split off a forest leaving small 4/3-density (three root strategies
keyed on the budget), and partition into k forests (matroid-style
augmenting insertion). Every two-part result is certified by the
independent flow-based density checker before it is returned; a failed
certificate raises a diagnostic carrying an inclusion-minimal violating
set, it is never silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .allocation import compute_allocation, optimize
from .density import (
    ENUM_LIMIT,
    DensityCheck,
    check_density_at_most,
    max_density,
)
from .errors import CertificationError, DiagnosticError, InfeasibleError
from .graphs import (
    Edge,
    Graph,
    is_forest,
    is_pseudoforest,
    strong_components,
    underlying_graph,
)
from .spine import (
    build_spine,
    choose_roots_good_arcs,
    extend_to_pseudospine,
    minimize_k4_reroot,
)

PSEUDOFOREST_M2 = "pseudoforest_m2"
FOREST_43 = "forest_43"
K_FORESTS = "k_forests"


@dataclass(frozen=True)
class ViolatingSet:
    """A vertex set certifying that a density bound fails."""

    vertices: frozenset[int]
    mode: str  # "m2" or "m43"
    edge_count: int


@dataclass(frozen=True)
class Decomposition:
    """An edge partition with the mode's structural guarantee on the
    first part and a density certificate on the rest."""

    graph: Graph
    mode: str
    parts: tuple[frozenset[Edge], ...]
    budget: Fraction | None
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        union: set[Edge] = set()
        total = 0
        for part in self.parts:
            union |= part
            total += len(part)
        if union != self.graph.edges or total != self.graph.edge_count:
            raise ValueError("parts do not partition the edge set")

    @property
    def part_f(self) -> frozenset[Edge]:
        return self.parts[0]

    @property
    def part_rest(self) -> frozenset[Edge]:
        if self.mode == K_FORESTS:
            raise ValueError("k-forest decompositions have no rest part")
        return self.parts[1]


def certify_m2_at_most(rest: Graph, bound: Fraction) -> DensityCheck:
    """m2(rest) <= bound, exactly, for any bound >= 0.

    The flow checker requires bound > 1/2; at or below that the answer
    is structural: a 2-density of exactly 1/2 means a nonempty matching,
    0 means no edges.
    """
    if bound > Fraction(1, 2):
        return check_density_at_most(rest, "m2", bound)
    if bound == Fraction(1, 2):
        return DensityCheck(
            all(rest.degree(v) <= 1 for v in range(rest.n)), None
        )
    return DensityCheck(rest.edge_count == 0, None)


def pseudoforest_decompose(g: Graph) -> Decomposition:
    """Split g into a pseudoforest and a part of 2-density at most the
    maximal density of g.

    Pipeline: orientation budget m = max density, allocation from the
    flow network, local-search optimization, spine with the smallest
    vertex of each terminal component as root, then one extra out-arc
    per root that still has one. The rest is certified before return.
    """
    if g.n == 0:
        return Decomposition(g, PSEUDOFOREST_M2, (frozenset(), frozenset()),
                             Fraction(0))
    m = max_density(g).value
    if m <= 1:
        # Every component already has at most one cycle: the graph is its
        # own pseudoforest and nothing is left over. (With no weight to
        # spare above 1, no integral arc can exist, so the spine pipeline
        # would return an empty forest here.)
        assert is_pseudoforest(g)
        return Decomposition(
            g, PSEUDOFOREST_M2, (g.edges, frozenset()), m,
            {"measure": "m2", "bound": m, "strict": False},
        )
    alloc = compute_allocation(g, m)
    if alloc is None:
        raise DiagnosticError("allocation must exist at the maximal density")
    opt = optimize(alloc)
    digraph = opt.integral_digraph
    parts = strong_components(digraph)
    roots = frozenset(
        min(comp)
        for comp, term in zip(parts.components, parts.terminal)
        if term
    )
    spine = build_spine(digraph, roots)
    extended = extend_to_pseudospine(spine, digraph)
    f_edges = underlying_graph(extended).edges
    rest_edges = g.edges - f_edges
    f_graph = g.edge_subgraph(f_edges)
    rest_graph = g.edge_subgraph(rest_edges)
    assert is_pseudoforest(f_graph)

    check = certify_m2_at_most(rest_graph, m)
    if not check.ok:
        raise CertificationError(
            f"pseudoforest split left 2-density above {m}",
            violating=find_violating_set(rest_graph, m, "m2"),
        )
    certificate = {"measure": "m2", "bound": m, "strict": False}
    return Decomposition(
        g, PSEUDOFOREST_M2, (f_edges, rest_edges), m, certificate
    )


def forest_decompose_43(g: Graph, m: Fraction) -> Decomposition:
    """Split g into a forest and a part of 4/3-density strictly below m.

    Needs m > 3/2 and max density of g at most m. Root strategy keyed on
    m: arbitrary roots in general, 4-clique-minimizing re-rooting at
    exactly 9/4, good-arc tails on (3/2, 9/5].
    """
    m = Fraction(m)
    if m <= Fraction(3, 2):
        raise InfeasibleError("forest split needs a budget above 3/2")
    if g.n == 0:
        return Decomposition(g, FOREST_43, (frozenset(), frozenset()), m)
    mg = max_density(g).value
    if mg > m:
        raise InfeasibleError(
            f"graph has maximal density {mg}, above the budget {m}"
        )
    alloc = compute_allocation(g, m)
    if alloc is None:
        raise DiagnosticError("allocation must exist when density fits budget")
    opt = optimize(alloc)
    digraph = opt.integral_digraph
    parts = strong_components(digraph)

    if Fraction(3, 2) < m <= Fraction(9, 5):
        roots = choose_roots_good_arcs(opt)
        spine = build_spine(digraph, roots)
    else:
        roots = frozenset(
            min(comp)
            for comp, term in zip(parts.components, parts.terminal)
            if term
        )
        spine = build_spine(digraph, roots)
        if m == Fraction(9, 4):
            spine = minimize_k4_reroot(opt, spine)

    f_edges = underlying_graph(spine.digraph).edges
    rest_edges = g.edges - f_edges
    f_graph = g.edge_subgraph(f_edges)
    rest_graph = g.edge_subgraph(rest_edges)
    assert is_forest(f_graph)

    check = check_density_at_most(rest_graph, "m43", m, strict=True)
    if not check.ok:
        violating = find_violating_set(rest_graph, m, "m43")
        raise CertificationError(
            f"forest split left 4/3-density not strictly below {m}; "
            f"shape: {analyze_forest_violation(opt, violating, m)}",
            violating=violating,
        )
    certificate = {"measure": "m43", "bound": m, "strict": True}
    return Decomposition(g, FOREST_43, (f_edges, rest_edges), m, certificate)


def nash_williams_partition(g: Graph, k: int):
    """Partition the edges into k forests, or None when impossible.

    Incremental insertion: each edge either extends some forest or
    triggers a breadth-first search over exchange moves (an edge on the
    cycle the newcomer closes may migrate to another forest). Failure of
    the search certifies infeasibility.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    adj: list[dict[int, set[int]]] = [
        {v: set() for v in range(g.n)} for _ in range(k)
    ]
    assigned: dict[Edge, int] = {}

    def tree_path(i: int, s: int, t: int):
        """Vertex path from s to t in forest i, or None."""
        prev = {s: -1}
        queue = [s]
        for x in queue:
            for y in adj[i][x]:
                if y not in prev:
                    prev[y] = x
                    if y == t:
                        path = [t]
                        while path[-1] != s:
                            path.append(prev[path[-1]])
                        return path
                    queue.append(y)
        return None

    def place(edge: Edge, i: int):
        u, v = edge
        adj[i][u].add(v)
        adj[i][v].add(u)
        assigned[edge] = i

    def remove(edge: Edge):
        i = assigned.pop(edge)
        u, v = edge
        adj[i][u].remove(v)
        adj[i][v].remove(u)
        return i

    for new_edge in g.sorted_edges:
        parent: dict[Edge, tuple[Edge | None, int]] = {new_edge: (None, -1)}
        queue = [new_edge]
        done = False
        for edge in queue:
            if done:
                break
            u, v = edge
            for i in range(k):
                path = tree_path(i, u, v)
                if path is None:
                    # Fits here: migrate the eviction chain.
                    mover, slot = edge, i
                    while mover is not None:
                        if mover in assigned:
                            freed = remove(mover)
                        else:
                            freed = None
                        place(mover, slot)
                        mover, _ = parent[mover]
                        if mover is not None:
                            slot = freed
                    done = True
                    break
                for x, y in zip(path, path[1:]):
                    blocker = (x, y) if x < y else (y, x)
                    if blocker not in parent:
                        parent[blocker] = (edge, i)
                        queue.append(blocker)
        if not done:
            return None

    forests = [set() for _ in range(k)]
    for edge, i in assigned.items():
        forests[i].add(edge)
    result = tuple(frozenset(f) for f in forests)
    for part in result:
        assert is_forest(g.edge_subgraph(part))
    assert sum(len(p) for p in result) == g.edge_count
    return result


def analyze_forest_violation(allocation, violating: ViolatingSet,
                             m: Fraction) -> dict:
    """Structural shape of a violating set found against a spine-built
    forest: such a set can only meet one terminal component of the
    orientation (in at least two vertices), stay below 4m/3 + 1
    vertices, and appear for budgets at most 9/5 or exactly 9/4. Any
    False here points at an optimizer bug, not at the inputs.
    """
    parts = strong_components(allocation.integral_digraph)
    touched = {parts.comp_of[v] for v in violating.vertices}
    terminal = [i for i in touched if parts.terminal[i]]
    overlap = (
        len(parts.components[terminal[0]] & violating.vertices)
        if len(terminal) == 1
        else 0
    )
    return {
        "single_terminal_component": len(terminal) == 1,
        "met_in_at_least_two_vertices": overlap >= 2,
        "size_within_bound": len(violating.vertices) <= Fraction(4, 3) * m + 1,
        "budget_in_violation_range": m <= Fraction(9, 5) or m == Fraction(9, 4),
    }


def _violates(g: Graph, vertices, m: Fraction, mode: str) -> bool:
    size = len(vertices)
    e = g.edges_within(vertices)
    if mode == "m2":
        return size >= 3 and e - 1 > m * (size - 2)
    if mode == "m43":
        return size >= 2 and e >= m * (size - Fraction(4, 3))
    raise ValueError(f"unknown mode {mode!r}")


def find_violating_set(g_rest: Graph, m: Fraction, mode: str):
    """Inclusion-minimal vertex set violating the mode's density bound,
    or None.

    Small graphs are searched exhaustively in size order (the first hit
    is minimum-cardinality, hence inclusion-minimal); larger ones start
    from a flow witness and shrink greedily.
    """
    m = Fraction(m)
    if mode not in ("m2", "m43"):
        raise ValueError(f"unknown mode {mode!r}")
    n = g_rest.n
    if n <= ENUM_LIMIT:
        min_size = 3 if mode == "m2" else 2
        for size in range(min_size, n + 1):
            for combo in combinations(range(n), size):
                if _violates(g_rest, combo, m, mode):
                    return ViolatingSet(
                        frozenset(combo), mode,
                        g_rest.edges_within(combo),
                    )
        return None

    if mode == "m2":
        check = check_density_at_most(g_rest, "m2", m)
    else:
        check = check_density_at_most(g_rest, "m43", m, strict=True)
    if check.ok:
        return None
    vertices = set(check.witness)
    shrunk = True
    while shrunk:
        shrunk = False
        for v in sorted(vertices):
            smaller = vertices - {v}
            if _violates(g_rest, smaller, m, mode):
                vertices = smaller
                shrunk = True
                break
    return ViolatingSet(
        frozenset(vertices), mode, g_rest.edges_within(vertices)
    )
