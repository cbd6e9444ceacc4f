"""The committed corpus file matches the known isomorphism-class counts
and contains no duplicate classes."""

from collections import Counter

import networkx as nx

from corpus import CLASS_COUNTS, load_corpus


def test_class_counts():
    counts = Counter(g.n for g in load_corpus(7))
    assert dict(counts) == CLASS_COUNTS


def test_no_two_small_graphs_isomorphic():
    graphs = [g for g in load_corpus(6) if g.n == 6]
    assert len(graphs) == 156
    buckets = {}
    converted = []
    for g in graphs:
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        converted.append(G)
        key = nx.weisfeiler_lehman_graph_hash(G, iterations=4)
        buckets.setdefault(key, []).append(G)
    # The refinement hash can collide (e.g. one hexagon vs two
    # triangles); settle those buckets by exact isomorphism testing.
    for group in buckets.values():
        for i, A in enumerate(group):
            for B in group[i + 1:]:
                assert not nx.is_isomorphic(A, B)
