"""Spines: spanning subdigraphs with one out-arc per vertex except a
root per terminal component, whose underlying graph is a forest.

Built from per-component spanning in-trees (reverse BFS from the root)
plus one escape arc per non-terminal component. Root selection
strategies for the decomposition stages live here too: good-arc tails
for small out-weight bounds, and 4-clique-minimizing re-rooting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .allocation import Allocation
from .errors import GoodArcNotFoundError
from .graphs import (
    Digraph,
    Graph,
    count_k4,
    has_antiparallel_pair,
    is_forest,
    is_pseudoforest,
    strong_components,
    underlying_graph,
)


@dataclass(frozen=True)
class Spine:
    """The chosen subdigraph and its out-degree-zero roots."""

    digraph: Digraph
    roots: frozenset[int]


def _check_root_set(parts, roots: frozenset[int], n: int):
    terminal_index: dict[int, int] = {}
    for idx, (comp, term) in enumerate(zip(parts.components, parts.terminal)):
        if term:
            for v in comp:
                terminal_index[v] = idx
    hit: dict[int, int] = {}
    for r in roots:
        if not 0 <= r < n:
            raise ValueError(f"root {r} out of range")
        if r not in terminal_index:
            raise ValueError(f"root {r} is not in a terminal component")
        idx = terminal_index[r]
        if idx in hit:
            raise ValueError(
                f"roots {hit[idx]} and {r} share a terminal component"
            )
        hit[idx] = r
    for idx, term in enumerate(parts.terminal):
        if term and idx not in hit:
            raise ValueError(
                f"terminal component {sorted(parts.components[idx])} missing a root"
            )


def _in_tree(d: Digraph, comp: frozenset[int], root: int) -> list[tuple[int, int]]:
    """Spanning in-tree of d[comp] rooted at root: BFS over reversed arcs;
    every discovered vertex points along its discovery arc toward the root."""
    arcs = []
    seen = {root}
    queue = [root]
    for v in queue:
        for w in d.in_adj[v]:
            if w in comp and w not in seen:
                seen.add(w)
                arcs.append((w, v))
                queue.append(w)
    if seen != comp:
        raise ValueError("component is not strongly connected")
    return arcs


def build_spine(d: Digraph, roots) -> Spine:
    """Spine of d whose out-degree-zero vertices are exactly ``roots``.

    ``roots`` must contain exactly one vertex of each terminal
    component. Escape arcs of non-terminal components are chosen
    lexicographically smallest for determinism.
    """
    roots = frozenset(roots)
    parts = strong_components(d)
    _check_root_set(parts, roots, d.n)

    arcs: list[tuple[int, int]] = []
    for idx, comp in enumerate(parts.components):
        if parts.terminal[idx]:
            (root,) = roots & comp
            arcs.extend(_in_tree(d, comp, root))
        else:
            escape = min(
                (u, v)
                for u, v in d.arcs
                if u in comp and parts.comp_of[v] != idx
            )
            arcs.extend(_in_tree(d, comp, escape[0]))
            arcs.append(escape)
    spine = Spine(Digraph.from_arcs(d.n, arcs), roots)
    validate_spine(spine, d)
    return spine


def validate_spine(s: Spine, d: Digraph):
    """Assert the three defining properties of a spine of d."""
    h = s.digraph
    if h.n != d.n or not h.arcs <= d.arcs:
        raise AssertionError("spine is not a spanning subdigraph")
    parts = strong_components(d)
    for v in range(d.n):
        deg = h.out_degree(v)
        if parts.terminal[parts.comp_of[v]]:
            expected = 0 if v in s.roots else 1
            if deg != expected:
                raise AssertionError(
                    f"vertex {v} has spine out-degree {deg}, wanted {expected}"
                )
        elif deg != 1:
            raise AssertionError(
                f"non-terminal vertex {v} has spine out-degree {deg}"
            )
    _check_root_set(parts, s.roots, d.n)
    if has_antiparallel_pair(h):
        raise AssertionError("spine contains an antiparallel arc pair")
    if not is_forest(underlying_graph(h)):
        raise AssertionError("underlying graph of the spine is not a forest")


def extend_to_pseudospine(s: Spine, d: Digraph) -> Digraph:
    """Give every spine root with an out-arc in d one such arc back.

    The result has exactly one out-arc at every vertex that has any in
    d; only vertices forming singleton terminal components stay at
    out-degree zero, so the underlying graph is a pseudoforest.
    """
    validate_spine(s, d)
    arcs = set(s.digraph.arcs)
    for v in range(d.n):
        if s.digraph.out_degree(v) == 0 and d.out_adj[v]:
            arcs.add((v, d.out_adj[v][0]))
    extended = Digraph.from_arcs(d.n, arcs)
    for v in range(d.n):
        want = 1 if d.out_adj[v] else 0
        assert extended.out_degree(v) == want
    assert is_pseudoforest(underlying_graph(extended))
    return extended


def choose_roots_good_arcs(a: Allocation) -> frozenset[int]:
    """Per terminal component: its vertex if singleton, else the tail of
    an arc whose endpoints share no fractional neighbor.

    Requires m < 2, so each non-singleton terminal component is a
    directed cycle. If some component offers no such arc, the failure is
    reported with the vertex fractionally adjacent to the whole cycle.
    """
    if a.m >= 2:
        raise ValueError("good-arc root selection needs m < 2")
    digraph = a.integral_digraph
    frac = a.fractional_graph
    parts = strong_components(digraph)
    roots = []
    for comp, term in zip(parts.components, parts.terminal):
        if not term:
            continue
        if len(comp) == 1:
            roots.append(next(iter(comp)))
            continue
        for v in comp:
            assert digraph.out_degree(v) == 1, "terminal component not a cycle"
        good_tails = [
            u
            for u in sorted(comp)
            for v in digraph.out_adj[u]
            if not (frac.adj[u] & frac.adj[v])
        ]
        if good_tails:
            roots.append(good_tails[0])
            continue
        star = frozenset.intersection(*(frac.adj[v] for v in sorted(comp)))
        raise GoodArcNotFoundError(
            f"terminal cycle {sorted(comp)} has no arc with fractionally "
            "disjoint endpoints",
            component=comp,
            star_center=min(star) if star else None,
        )
    return frozenset(roots)


def minimize_k4_reroot(a: Allocation, s: Spine) -> Spine:
    """Re-root terminal components while that strictly lowers the number
    of 4-cliques left outside the spine's forest.

    Exchange move: for a root r and an arc (r, u) of the orientation,
    add (r, u) and delete u's current spine arc; u becomes the new root.
    Requires m = 9/4. Each accepted exchange lowers the 4-clique count,
    which bounds the search.
    """
    if a.m != Fraction(9, 4):
        raise ValueError("re-rooting strategy is specific to m = 9/4")
    g = a.graph
    digraph = a.integral_digraph
    validate_spine(s, digraph)

    def leftover_count(spine: Spine) -> int:
        forest = underlying_graph(spine.digraph)
        return count_k4(g.without_edges(forest.edges))

    current = s
    current_count = leftover_count(s)
    improved = True
    while improved and current_count > 0:
        improved = False
        for r in sorted(current.roots):
            for u in digraph.out_adj[r]:
                follow = current.digraph.out_adj[u]
                if not follow:
                    continue
                successor = follow[0]
                arcs = (
                    current.digraph.arcs - {(u, successor)} | {(r, u)}
                )
                candidate = Spine(
                    Digraph(digraph.n, arcs),
                    current.roots - {r} | {u},
                )
                validate_spine(candidate, digraph)
                count = leftover_count(candidate)
                if count < current_count:
                    current, current_count = candidate, count
                    improved = True
                    break
            if improved:
                break
    return current
