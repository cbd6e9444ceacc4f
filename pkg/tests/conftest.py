import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from sparsedecomp.allocation import Allocation
from sparsedecomp.graphs import Digraph, Graph, complete_graph
from corpus import load_corpus


@pytest.fixture(scope="session")
def corpus7():
    return load_corpus(7)


@pytest.fixture(scope="session")
def corpus6(corpus7):
    return [g for g in corpus7 if g.n <= 6]


def diamond() -> Graph:
    """Complete graph on four vertices minus one edge."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def two_triangles_sharing_an_edge() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [pair for pair in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs_st(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(
        n, (pairs[k] for k in range(len(pairs)) if (mask >> k) & 1)
    )


@st.composite
def digraphs_st(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Digraph.from_arcs(
        n, (pairs[k] for k in range(len(pairs)) if (mask >> k) & 1)
    )


def reroot_gadget() -> Allocation:
    """Fixed-point orientation of K5 at budget 9/4 whose spine rooted at
    0 leaves the K4 on {0,1,2,3} entirely outside the forest."""
    F = Fraction
    g = complete_graph(5)
    one = [(0, 1), (0, 2), (2, 3), (1, 4), (4, 0), (3, 4), (2, 4)]
    theta = {}
    for u, v in one:
        theta[(u, v)] = F(1)
        theta[(v, u)] = F(0)
    theta.update({
        (0, 3): F(1, 4), (3, 0): F(3, 4),
        (1, 2): F(3, 4), (2, 1): F(1, 4),
        (1, 3): F(1, 2), (3, 1): F(1, 2),
    })
    return Allocation(g, F(9, 4), theta, 4)
