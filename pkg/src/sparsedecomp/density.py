"""Exact density measures and threshold checks.

Four measures share one shape: the maximum of (e(J) - a) / (v(J) - b)
over vertex sets J of at least a minimum size, where J carries all the
edges it induces. Two computation paths exist:

* exhaustive subset enumeration, the authoritative oracle up to
  ``ENUM_LIMIT`` vertices, with deterministic witness tie-breaking
  (fewest vertices, then lexicographically smallest vertex set);
* a flow-based threshold checker that scales further, answering
  "is the measure at most this bound" with one minimum cut per edge,
  plus an exact value search on top of it (interval halving down to the
  unique rational with bounded denominator).

All arithmetic is over Fractions or scaled integers; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .graphs import Graph

ENUM_LIMIT = 16

# measure name -> (a, b, minimum size of J)
_MEASURE_PARAMS = {
    "m": (0, Fraction(0), 1),
    "m1": (0, Fraction(1), 2),
    "m2": (1, Fraction(2), 3),
    "m43": (0, Fraction(4, 3), 2),
}

MEASURES = tuple(_MEASURE_PARAMS)


@dataclass(frozen=True)
class DensityWitness:
    """A measure value together with a vertex set attaining it."""

    value: Fraction
    witness: frozenset[int]


class DensityCheck(NamedTuple):
    ok: bool
    witness: frozenset[int] | None


def _enum_extremum(g: Graph, a: int, b: Fraction, min_size: int):
    """Maximize (e(J) - a) / (|J| - b) over subsets by exhaustion.

    Returns (value, witness frozenset); witness prefers fewer vertices,
    then the lexicographically smallest sorted vertex tuple. Returns
    None when no subset meets the size floor.
    """
    n = g.n
    if n > ENUM_LIMIT:
        raise ValueError(f"enumeration limited to {ENUM_LIMIT} vertices")
    if n < min_size:
        return None
    bn, bd = b.numerator, b.denominator
    masks = g.adj_masks
    edge_counts = [0] * (1 << n)
    best = None  # (num, den, size, mask)
    for s in range(1, 1 << n):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        cnt = edge_counts[rest] + (masks[v] & rest).bit_count()
        edge_counts[s] = cnt
        size = s.bit_count()
        if size < min_size:
            continue
        num = (cnt - a) * bd
        den = size * bd - bn
        if best is None:
            best = (num, den, size, s)
            continue
        diff = num * best[1] - best[0] * den
        if diff > 0:
            best = (num, den, size, s)
        elif diff == 0:
            if size < best[2] or (size == best[2] and _lex_less(s, best[3])):
                best = (num, den, size, s)
    if best is None:
        return None
    value = Fraction(best[0], best[1])
    return value, frozenset(_mask_vertices(best[3]))


def _mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask ^= 1 << v
    return out


def _lex_less(mask_a: int, mask_b: int) -> bool:
    return _mask_vertices(mask_a) < _mask_vertices(mask_b)


def max_density(g: Graph) -> DensityWitness:
    """Largest e(J)/v(J) over nonempty vertex sets J."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if g.edge_count == 0:
        return DensityWitness(Fraction(0), frozenset({0}))
    return _density_witness(g, "m")


def m1(g: Graph) -> DensityWitness:
    """Largest e(J)/(v(J)-1) over sets of at least two vertices
    (the fractional arboricity)."""
    if g.n < 2:
        raise ValueError("graph must have at least two vertices")
    if g.edge_count == 0:
        return DensityWitness(Fraction(0), frozenset({0, 1}))
    return _density_witness(g, "m1")


def m2(g: Graph) -> DensityWitness:
    """Largest (e(J)-1)/(v(J)-2) over sets of at least three vertices.

    Conventions: 0 for an edgeless graph, 1/2 when there is exactly one
    edge (witnessed by that edge's endpoints).
    """
    if g.edge_count == 0:
        return DensityWitness(Fraction(0), frozenset())
    if g.edge_count == 1:
        (u, v), = g.edges
        return DensityWitness(Fraction(1, 2), frozenset({u, v}))
    return _density_witness(g, "m2")


def m43(g: Graph) -> DensityWitness:
    """Largest e(J)/(v(J)-4/3) over sets of at least two vertices."""
    if g.n < 2:
        raise ValueError("graph must have at least two vertices")
    if g.edge_count == 0:
        return DensityWitness(Fraction(0), frozenset({0, 1}))
    return _density_witness(g, "m43")


def _density_witness(g: Graph, measure: str) -> DensityWitness:
    a, b, min_size = _MEASURE_PARAMS[measure]
    if g.n <= ENUM_LIMIT:
        value, witness = _enum_extremum(g, a, b, min_size)
        return DensityWitness(value, witness)
    return _value_by_flow(g, measure)


def mixed_m2(h1: Graph, h2: Graph) -> DensityWitness:
    """Largest e(J)/(v(J) - 2 + 1/m2(h2)) over J inside h1 with
    v(J) >= 2. Requires m2(h1) >= m2(h2) > 0."""
    d2 = m2(h2).value
    if d2 <= 0:
        raise ValueError("second pattern must have positive 2-density")
    d1 = m2(h1).value
    if d1 < d2:
        raise ValueError(
            "arguments must be ordered by 2-density (first one densest)"
        )
    if h1.n < 2:
        raise ValueError("first pattern must have at least two vertices")
    b = 2 - 1 / d2
    if h1.edge_count == 0:
        return DensityWitness(Fraction(0), frozenset({0, 1}))
    value, witness = _enum_extremum(h1, 0, b, 2)
    return DensityWitness(value, witness)


def strictly_2_balanced_subgraph(h: Graph) -> Graph:
    """Smallest subgraph of h with the same 2-density whose proper
    subgraphs all have strictly smaller 2-density.

    Returned relabeled to dense indices, order preserving. The witness of
    the 2-density maximum with fewest vertices is automatically strictly
    2-balanced, so a brute-force maximum suffices.
    """
    if h.edge_count < 2:
        raise ValueError("pattern needs at least two edges")
    top = m2(h)
    if top.value == Fraction(1, 2):
        # The pattern is a matching; a single edge attains the value.
        u, v = min(h.edges)
        return h.induced_compact([u, v])
    return h.induced_compact(top.witness)


# ---------------------------------------------------------------------------
# Flow-based threshold checking
# ---------------------------------------------------------------------------


def check_density_at_most(
    g: Graph, measure: str, bound: Fraction, strict: bool = False
) -> DensityCheck:
    """Decide measure(g) <= bound (or < bound when strict) by one
    minimum cut per edge.

    For each edge uv the routine maximizes e(J) - bound*v(J) over sets J
    containing u and v, forcing both onto the source side of a cut; a
    set violating the bound always contains an edge, so scanning edges
    is exhaustive. Returns the violating set when the answer is no.

    Preconditions: bound > 1/2 for m2 (strict unsupported there),
    bound > 3/4 for m43, bound >= 0 otherwise.
    """
    if measure not in _MEASURE_PARAMS:
        raise ValueError(f"unknown measure {measure!r}")
    bound = Fraction(bound)
    a, b, min_size = _MEASURE_PARAMS[measure]
    if measure == "m2":
        if bound <= Fraction(1, 2):
            raise ValueError("m2 checks need bound > 1/2")
        if strict:
            raise ValueError("strict variant unsupported for m2")
    elif measure == "m43":
        if bound <= Fraction(3, 4):
            raise ValueError("m43 checks need bound > 3/4")
    else:
        if bound < 0 or (strict and bound == 0):
            raise ValueError("bound must be non-negative")

    if g.edge_count == 0:
        return DensityCheck(True, None)

    cn, cd = bound.numerator, bound.denominator
    scale = 6 * cd
    e_total = g.edge_count
    threshold = (a - bound * b) * scale  # exact integer by construction
    assert threshold.denominator == 1
    threshold = threshold.numerator

    for u, v in g.sorted_edges:
        cut = _forced_pair_min_cut(g, cn, cd, u, v)
        excess = e_total * scale - cut[0]
        if excess > threshold or (strict and excess == threshold):
            witness = frozenset(w for w in cut[1] if w < g.n)
            _assert_genuine(g, measure, bound, strict, witness)
            return DensityCheck(False, witness)
    return DensityCheck(True, None)


def _assert_genuine(g, measure, bound, strict, witness):
    a, b, min_size = _MEASURE_PARAMS[measure]
    assert len(witness) >= min_size
    lhs = Fraction(g.edges_within(witness) - a)
    rhs = bound * (len(witness) - b)
    assert (lhs >= rhs) if strict else (lhs > rhs)


def _forced_pair_min_cut(g: Graph, cn: int, cd: int, fu: int, fv: int):
    """Min cut separating {s, fu, fv, ...} from t in the excess network.

    Nodes are the graph vertices plus s = n and t = n+1; capacities are
    scaled by 6*cd so everything is an integer. Cutting vertex w to the
    sink costs bound*|{w}|, keeping it source-side surrenders half of
    each incident edge; the forced endpoints are wired to s unboundedly.
    Returns (cut value, source-side node set).
    """
    n = g.n
    s, t = n, n + 1
    size = n + 2
    big = 6 * cd * g.edge_count * 2 + 6 * cn * n + 1

    to: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(size)]

    def add(x, y, c):
        adj[x].append(len(to))
        to.append(y)
        cap.append(c)
        adj[y].append(len(to))
        to.append(x)
        cap.append(0)

    for w in range(n):
        deg_cap = 3 * cd * g.degree(w)
        if w in (fu, fv):
            deg_cap += big
        if deg_cap:
            add(s, w, deg_cap)
        add(w, t, 6 * cn)
    for x, y in g.sorted_edges:
        add(x, y, 3 * cd)
        add(y, x, 3 * cd)

    total = 0
    while True:
        level = [-1] * size
        level[s] = 0
        queue = [s]
        for x in queue:
            for i in adj[x]:
                y = to[i]
                if cap[i] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue.append(y)
        if level[t] < 0:
            break
        it = [0] * size
        stack_arcs: list[int] = []
        x = s
        while True:
            if x == t:
                bott = min(cap[i] for i in stack_arcs)
                for i in stack_arcs:
                    cap[i] -= bott
                    cap[i ^ 1] += bott
                total += bott
                # Retreat to the tail of the first saturated path arc.
                for pos, i in enumerate(stack_arcs):
                    if cap[i] == 0:
                        del stack_arcs[pos:]
                        x = to[i ^ 1]
                        break
                continue
            moved = False
            while it[x] < len(adj[x]):
                i = adj[x][it[x]]
                y = to[i]
                if cap[i] > 0 and level[y] == level[x] + 1:
                    stack_arcs.append(i)
                    x = y
                    moved = True
                    break
                it[x] += 1
            if not moved:
                level[x] = -1
                if not stack_arcs:
                    break
                i = stack_arcs.pop()
                x = to[i ^ 1]

    seen = [False] * size
    seen[s] = True
    queue = [s]
    for x in queue:
        for i in adj[x]:
            y = to[i]
            if cap[i] > 0 and not seen[y]:
                seen[y] = True
                queue.append(y)
    side = {w for w in range(size) if seen[w]}
    # The forced arcs must stay uncut.
    assert total < big
    return total, side


# ---------------------------------------------------------------------------
# Exact values beyond enumeration range
# ---------------------------------------------------------------------------


def _denominator_bound(g: Graph, measure: str) -> int:
    if measure == "m":
        return g.n
    if measure == "m1":
        return max(1, g.n - 1)
    if measure == "m2":
        return max(1, g.n - 2)
    return 3 * g.n - 4  # m43: e/(v - 4/3) = 3e/(3v - 4)


def _value_by_flow(g: Graph, measure: str) -> DensityWitness:
    """Exact measure value for large graphs: bisect the threshold
    checker down to a window holding a unique bounded-denominator
    rational, then extract a witness one notch below the value."""
    floors = {
        "m": Fraction(1, 2),
        "m1": Fraction(1),
        "m2": Fraction(1),
        "m43": Fraction(3, 2),
    }
    if measure == "m2" and _is_matching(g):
        u, v = min(g.edges)
        return DensityWitness(Fraction(1, 2), frozenset({u, v}))
    lo = floors[measure]
    hi = Fraction(2 * g.edge_count + 1)
    if check_density_at_most(g, measure, lo).ok:
        value = lo
    else:
        q = _denominator_bound(g, measure)
        gap = Fraction(1, q * q)
        while hi - lo > gap:
            mid = (lo + hi) / 2
            if check_density_at_most(g, measure, mid).ok:
                hi = mid
            else:
                lo = mid
        value = simplest_in_open_closed(lo, hi)
    q = _denominator_bound(g, measure)
    probe = value - Fraction(1, 2 * q * q)
    violation = check_density_at_most(g, measure, probe)
    assert not violation.ok
    witness = violation.witness
    a, b, _ = _MEASURE_PARAMS[measure]
    assert Fraction(g.edges_within(witness) - a, 1) == value * (len(witness) - b)
    return DensityWitness(value, witness)


def _is_matching(g: Graph) -> bool:
    return all(g.degree(v) <= 1 for v in range(g.n))


def simplest_in_open_closed(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest fraction x with lo < x <= hi (continued-fraction walk)."""
    if not lo < hi:
        raise ValueError("empty interval")
    fl = lo.numerator // lo.denominator
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    if lo == fl:
        # Interval (fl, hi] with hi below the next integer: take the
        # largest unit fraction step that still lands inside.
        step = 1 / (hi - fl)
        y = Fraction(-((-step.numerator) // step.denominator))  # ceil
        return fl + 1 / y
    y = _simplest_in_closed_open(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / y


def _simplest_in_closed_open(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest fraction y with lo <= y < hi."""
    if lo.denominator == 1:
        return lo
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    z = simplest_in_open_closed(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / z
