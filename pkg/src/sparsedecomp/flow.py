"""Exact-rational maximum flow / minimum cut.

Capacities are Fractions or the sentinel INF (= None); arithmetic runs
on integers after scaling every finite capacity by the common
denominator, so results are exact and every flow value is a multiple of
1/q when all finite capacities are. Dinic's algorithm keeps the engine
deterministic for a fixed arc order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import UnboundedFlowError
from .graphs import Graph

# Sentinel for unbounded capacity; deliberately not a large number so a
# cut crossed by an INF arc can never masquerade as finite.
INF = None

Capacity = Fraction | None


@dataclass(frozen=True)
class FlowNetwork:
    """Directed flow network with one source and one sink."""

    n: int
    source: int
    sink: int
    arcs: tuple[tuple[int, int, Capacity], ...]

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for u, v, cap in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range")
            if cap is not INF and cap < 0:
                raise ValueError("negative capacity")


@dataclass(frozen=True)
class FlowResult:
    """Maximum flow with a witnessing minimum cut.

    ``flows`` is aligned with the network's arc tuple; ``min_cut`` is the
    set of nodes on the source side.
    """

    value: Fraction
    flows: tuple[Fraction, ...]
    min_cut: frozenset[int]


def max_flow(net: FlowNetwork) -> FlowResult:
    """Exact maximum flow; raises UnboundedFlowError on an all-INF path."""
    denoms = [cap.denominator for _, _, cap in net.arcs if cap is not INF]
    scale = lcm(*denoms) if denoms else 1

    # Adjacency of residual arcs: [head, residual, reverse_index, arc_id].
    # residual is an int, or None for unbounded.
    adj: list[list[list]] = [[] for _ in range(net.n)]
    handles = []
    for arc_id, (u, v, cap) in enumerate(net.arcs):
        scaled = None if cap is INF else int(cap * scale)
        fwd = [v, scaled, len(adj[v]), arc_id]
        bwd = [u, 0, len(adj[u]), -1]
        adj[u].append(fwd)
        adj[v].append(bwd)
        handles.append((u, len(adj[u]) - 1))

    s, t = net.source, net.sink
    total = 0
    while True:
        level = _levels(adj, s)
        if level[t] < 0:
            break
        it = [0] * net.n
        while True:
            pushed = _push(adj, level, it, s, t)
            if pushed == 0:
                break
            total += pushed

    flows = []
    for u, i in handles:
        arc = adj[u][i]
        rev = adj[arc[0]][arc[2]]
        flows.append(Fraction(rev[1], scale))
    cut = _residual_reachable(adj, s)
    result = FlowResult(Fraction(total, scale), tuple(flows), frozenset(cut))
    _check_result(net, result)
    return result


def _levels(adj, s):
    level = [-1] * len(adj)
    level[s] = 0
    queue = [s]
    for v in queue:
        for arc in adj[v]:
            head, residual = arc[0], arc[1]
            if (residual is None or residual > 0) and level[head] < 0:
                level[head] = level[v] + 1
                queue.append(head)
    return level


def _push(adj, level, it, s, t):
    """One blocking-flow augmentation along a level path, iteratively."""
    path = []
    v = s
    while True:
        if v == t:
            bottleneck = None
            for arc in path:
                if arc[1] is not None:
                    bottleneck = arc[1] if bottleneck is None else min(bottleneck, arc[1])
            if bottleneck is None:
                raise UnboundedFlowError("source-sink path of unbounded capacity")
            for arc in path:
                if arc[1] is not None:
                    arc[1] -= bottleneck
                rev = adj[arc[0]][arc[2]]
                if rev[1] is not None:
                    rev[1] += bottleneck
            return bottleneck
        advanced = False
        while it[v] < len(adj[v]):
            arc = adj[v][it[v]]
            head, residual = arc[0], arc[1]
            if (residual is None or residual > 0) and level[head] == level[v] + 1:
                path.append(arc)
                v = head
                advanced = True
                break
            it[v] += 1
        if not advanced:
            level[v] = -1
            if not path:
                return 0
            arc = path.pop()
            v = _tail_of(adj, arc)


def _tail_of(adj, arc):
    rev = adj[arc[0]][arc[2]]
    return rev[0]


def _residual_reachable(adj, s):
    seen = {s}
    queue = [s]
    for v in queue:
        for arc in adj[v]:
            head, residual = arc[0], arc[1]
            if (residual is None or residual > 0) and head not in seen:
                seen.add(head)
                queue.append(head)
    return seen


def _check_result(net: FlowNetwork, result: FlowResult):
    """Assert conservation, capacity bounds, and exact flow/cut duality."""
    balance = [Fraction(0)] * net.n
    for (u, v, cap), f in zip(net.arcs, result.flows):
        assert f >= 0, "negative flow"
        if cap is not INF:
            assert f <= cap, "flow exceeds capacity"
        balance[u] -= f
        balance[v] += f
    for w in range(net.n):
        if w not in (net.source, net.sink):
            assert balance[w] == 0, f"conservation fails at node {w}"
    assert balance[net.sink] == result.value
    assert net.source in result.min_cut and net.sink not in result.min_cut
    cut_cap = Fraction(0)
    for u, v, cap in net.arcs:
        if u in result.min_cut and v not in result.min_cut:
            assert cap is not INF, "unbounded arc crosses the min cut"
            cut_cap += cap
    assert cut_cap == result.value, "flow value differs from cut capacity"


def allocation_network(g: Graph, m: Fraction) -> FlowNetwork:
    """Network whose max flow is e(g) iff g has a fractional orientation
    with per-vertex out-weight at most m.

    Nodes: source, one per vertex, one per edge, sink. The source feeds
    each vertex with capacity m; each vertex feeds its incident edge
    nodes without bound; each edge node passes capacity 1 to the sink.
    Arc order: the n source arcs, then the two incidence arcs per edge in
    sorted edge order (smaller endpoint first), then the edge-sink arcs.
    """
    if m < 0:
        raise ValueError("out-weight bound must be non-negative")
    n, edges = g.n, g.sorted_edges
    source = 0
    sink = n + len(edges) + 1
    arcs: list[tuple[int, int, Capacity]] = []
    for v in range(n):
        arcs.append((source, 1 + v, m))
    for i, (u, v) in enumerate(edges):
        node = 1 + n + i
        arcs.append((1 + u, node, INF))
        arcs.append((1 + v, node, INF))
    for i in range(len(edges)):
        arcs.append((1 + n + i, sink, Fraction(1)))
    return FlowNetwork(sink + 1, source, sink, tuple(arcs))
