"""Simple graphs and digraphs on dense integer vertices.

Vertices are the indices 0..n-1; undirected edges are stored as ordered
pairs (u, v) with u < v, arcs as (tail, head). All values here are
immutable after construction and every function is pure, so objects can
be shared freely between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

Edge = tuple[int, int]
Arc = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the canonical (min, max) form of an undirected edge."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no parallel edges."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) invalid for n={self.n}")

    @staticmethod
    def from_edges(n: int, pairs) -> "Graph":
        return Graph(n, frozenset(normalize_edge(u, v) for u, v in pairs))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def edges_within(self, vertices) -> int:
        """Number of edges with both endpoints in the given vertex set."""
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return self.edges_within_mask(mask)

    def edges_within_mask(self, mask: int) -> int:
        total = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m ^= 1 << v
            total += (self.adj_masks[v] & m).bit_count()
        return total

    def edge_subgraph(self, edges) -> "Graph":
        """Spanning subgraph keeping only the given edges."""
        kept = frozenset(normalize_edge(u, v) for u, v in edges)
        if not kept <= self.edges:
            raise ValueError("edge_subgraph got edges outside the graph")
        return Graph(self.n, kept)

    def without_edges(self, edges) -> "Graph":
        drop = frozenset(normalize_edge(u, v) for u, v in edges)
        return Graph(self.n, self.edges - drop)

    def induced_compact(self, vertices) -> "Graph":
        """Induced subgraph relabeled to 0..k-1, order preserving."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        kept = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph.from_edges(len(order), kept)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class Digraph:
    """Simple directed graph: no loops, no parallel arcs."""

    n: int
    arcs: frozenset[Arc]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) invalid for n={self.n}")

    @staticmethod
    def from_arcs(n: int, pairs) -> "Digraph":
        return Digraph(n, frozenset((u, v) for u, v in pairs))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(h)) for h in out)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        into = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            into[v].append(u)
        return tuple(tuple(sorted(t)) for t in into)

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def with_arcs(self, pairs) -> "Digraph":
        return Digraph(self.n, self.arcs | frozenset(pairs))

    def without_arcs(self, pairs) -> "Digraph":
        return Digraph(self.n, self.arcs - frozenset(pairs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


def underlying_graph(d: Digraph) -> Graph:
    """Undirected shadow of a digraph (antiparallel arcs collapse)."""
    return Graph.from_edges(d.n, d.arcs)


def has_antiparallel_pair(d: Digraph) -> bool:
    return any((v, u) in d.arcs for u, v in d.arcs)


# Named constructors used throughout the tests and the CLI docs.

def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


@dataclass(frozen=True)
class ComponentPartition:
    """Strongly connected components of a digraph with terminal flags.

    A component is terminal when no arc leaves it. ``comp_of[v]`` is the
    index of v's component in ``components``.
    """

    components: tuple[frozenset[int], ...]
    terminal: tuple[bool, ...]
    comp_of: tuple[int, ...]

    def component_of(self, v: int) -> frozenset[int]:
        return self.components[self.comp_of[v]]

    def is_terminal_vertex(self, v: int) -> bool:
        return self.terminal[self.comp_of[v]]

    def terminal_components(self) -> tuple[frozenset[int], ...]:
        return tuple(
            comp for comp, t in zip(self.components, self.terminal) if t
        )

    @property
    def terminal_count(self) -> int:
        return sum(self.terminal)


def strong_components(d: Digraph) -> ComponentPartition:
    """Tarjan's algorithm, iterative, with deterministic ordering."""
    n = d.n
    out = d.out_adj
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[frozenset[int]] = []
    comp_of = [-1] * n
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(out[v])):
                w = out[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])

    terminal = [True] * len(components)
    for u, v in d.arcs:
        if comp_of[u] != comp_of[v]:
            terminal[comp_of[u]] = False
    return ComponentPartition(tuple(components), tuple(terminal), tuple(comp_of))


def _forest_components(g: Graph):
    """Union-find pass; yields (vertex_count, edge_count) per component."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edge_counts = [0] * g.n
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            edge_counts[rv] += edge_counts[ru] + 1
            edge_counts[ru] = 0
        else:
            edge_counts[ru] += 1
    sizes = [0] * g.n
    for v in range(g.n):
        sizes[find(v)] += 1
    return [
        (sizes[r], edge_counts[r])
        for r in range(g.n)
        if find(r) == r
    ]


def is_forest(g: Graph) -> bool:
    """True iff the graph has no cycle."""
    return all(e == v - 1 for v, e in _forest_components(g))


def is_pseudoforest(g: Graph) -> bool:
    """True iff every connected component has at most one cycle (e <= v)."""
    return all(e <= v for v, e in _forest_components(g))


def connected_components(g: Graph) -> tuple[frozenset[int], ...]:
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return tuple(comps)


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """Does g contain a (not necessarily induced) copy of h?

    Backtracking over injective vertex maps with degree-based pruning.
    Intended for small patterns; worst case is exponential in v(h).
    """
    if h.edge_count == 0:
        return h.n <= g.n
    if h.n > g.n or h.edge_count > g.edge_count:
        return False
    hdegs = sorted((h.degree(v) for v in range(h.n)), reverse=True)
    gdegs = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    if any(hd > gd for hd, gd in zip(hdegs, gdegs)):
        return False

    order = _pattern_order(h)
    # Per pattern vertex, the neighbors already placed before it.
    placed_nbrs = []
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        placed_nbrs.append([w for w in h.adj[v] if pos[w] < i])

    candidates = [
        [u for u in range(g.n) if g.degree(u) >= h.degree(v)] for v in order
    ]
    return _match(order, placed_nbrs, pos, candidates, g.adj_masks)


def _pattern_order(h: Graph) -> list[int]:
    """Vertex order for matching: densest first, then connectivity-greedy."""
    order: list[int] = []
    chosen = set()
    while len(order) < h.n:
        best = None
        best_key = None
        for v in range(h.n):
            if v in chosen:
                continue
            attach = sum(1 for w in h.adj[v] if w in chosen)
            key = (attach, h.degree(v), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        chosen.add(best)
    return order


def _match(order, placed_nbrs, pos, candidates, gm) -> bool:
    k = len(order)
    image = [0] * k
    cursor = [0] * k
    used = 0
    i = 0
    while True:
        found = False
        clist = candidates[i]
        j = cursor[i]
        while j < len(clist):
            u = clist[j]
            j += 1
            if used & (1 << u):
                continue
            ok = True
            for w in placed_nbrs[i]:
                if not (gm[u] >> image[pos[w]]) & 1:
                    ok = False
                    break
            if ok:
                cursor[i] = j
                image[i] = u
                used |= 1 << u
                found = True
                break
        if found:
            i += 1
            if i == k:
                return True
            cursor[i] = 0
        else:
            cursor[i] = 0
            i -= 1
            if i < 0:
                return False
            used &= ~(1 << image[i])


def count_k4(g: Graph) -> int:
    """Number of 4-cliques, by common-neighborhood bit counting."""
    gm = g.adj_masks
    total = 0
    for a, b in g.sorted_edges:
        common = gm[a] & gm[b] & ~((1 << (b + 1)) - 1)
        m = common
        while m:
            c = (m & -m).bit_length() - 1
            m ^= 1 << c
            total += (common & gm[c] & ~((1 << (c + 1)) - 1)).bit_count()
    return total
