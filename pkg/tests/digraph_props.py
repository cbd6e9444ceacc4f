"""Reference checks for how arc edits move terminal components around.

Five facts are checked per digraph:

  (a) adding arcs never increases the number of terminal components,
      and strictly decreases it when some arc set links two previously
      distinct terminal components by a directed path;
  (b) deleting an arc inside a terminal component X replaces X by a
      subset of X containing the arc's tail;
  (c) deleting an out-arc of a vertex outside every terminal component
      changes nothing, provided another route to a terminal component
      remains;
  (d) adding an out-arc to a vertex outside every terminal component
      changes nothing;
  (e) adding an out-arc to a singleton terminal component either lowers
      the count or grows that singleton into a component containing
      both endpoints.

The pure-Python versions run the library implementation on small
digraphs; a vectorized variant covers every 5-vertex arc set.
"""

from __future__ import annotations

from sparsedecomp.graphs import Digraph, strong_components


def reach_table(d: Digraph) -> list[int]:
    """reach[u] has bit w set iff a nonempty directed path u -> w exists."""
    reach = [0] * d.n
    for u, v in d.arcs:
        reach[u] |= 1 << v
    for k in range(d.n):
        for i in range(d.n):
            if (reach[i] >> k) & 1:
                reach[i] |= reach[k]
    return reach


def terminal_comps(d: Digraph) -> frozenset[frozenset[int]]:
    parts = strong_components(d)
    return frozenset(
        comp for comp, term in zip(parts.components, parts.terminal) if term
    )


def check_arc_edit_facts(d: Digraph):
    """Assert facts (a)-(e) for every applicable single-arc edit of d."""
    base = terminal_comps(d)
    reach = reach_table(d)
    in_terminal = {v for comp in base for v in comp}
    singles = {next(iter(comp)) for comp in base if len(comp) == 1}

    for arc in sorted(d.arcs):
        u, v = arc
        smaller = d.without_arcs([arc])
        sub_terms = terminal_comps(smaller)

        # (a) with D1 = d - arc and D2 = d.
        assert len(base) <= len(sub_terms)
        linked = any(
            cu != cw and any((reach[x] >> w) & 1 for x in cu for w in cw)
            for cu in sub_terms
            for cw in sub_terms
        )
        if linked:
            assert len(base) < len(sub_terms)

        home = next((comp for comp in base if u in comp), None)
        if home is not None and v in home:
            # (b): the arc lies inside the terminal component `home`.
            kept = base - {home}
            assert kept <= sub_terms
            fresh = sub_terms - kept
            assert len(fresh) == 1
            replacement = next(iter(fresh))
            assert u in replacement and replacement <= home
        if u not in in_terminal:
            # (c): an escape route must survive without this arc.
            sub_reach = reach_table(smaller)
            if any((sub_reach[u] >> w) & 1 for w in in_terminal):
                assert sub_terms == base

    for u in range(d.n):
        for v in range(d.n):
            if u == v or (u, v) in d.arcs:
                continue
            bigger = d.with_arcs([(u, v)])
            big_terms = terminal_comps(bigger)
            if u not in in_terminal:
                # (d)
                assert big_terms == base
            if u in singles:
                # (e)
                if len(big_terms) == len(base):
                    kept = base - {frozenset({u})}
                    assert kept <= big_terms
                    fresh = big_terms - kept
                    assert len(fresh) == 1
                    grown = next(iter(fresh))
                    assert u in grown and v in grown
                else:
                    assert len(big_terms) < len(base)


def all_digraphs(n: int):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        yield Digraph.from_arcs(
            n, (pairs[k] for k in range(len(pairs)) if (mask >> k) & 1)
        )


def brute_terminal_comps(d: Digraph) -> frozenset[frozenset[int]]:
    """Independent oracle: components from the mutual-reachability
    relation, terminal when no member arc leaves."""
    reach = reach_table(d)
    comps = []
    assigned = set()
    for v in range(d.n):
        if v in assigned:
            continue
        comp = {
            w
            for w in range(d.n)
            if w == v
            or ((reach[v] >> w) & 1 and (reach[w] >> v) & 1)
        }
        comps.append(frozenset(comp))
        assigned |= comp
    out = set()
    for comp in comps:
        if all(w in comp for u, w in d.arcs if u in comp):
            out.add(comp)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Vectorized tables for every digraph on exactly five vertices
# ---------------------------------------------------------------------------

N5 = 5
ARCS5 = [(i, j) for i in range(N5) for j in range(N5) if i != j]
BIT5 = {arc: k for k, arc in enumerate(ARCS5)}


def build_tables_n5():
    """Adjacency, reachability, component and terminal tables indexed by
    the 20-bit arc mask, for all 2**20 digraphs on five vertices."""
    import numpy as np

    total = 1 << len(ARCS5)
    masks = np.arange(total, dtype=np.int64)
    adj = [np.zeros(total, dtype=np.int16) for _ in range(N5)]
    for (i, j), k in BIT5.items():
        adj[i] |= (((masks >> k) & 1) << j).astype(np.int16)
    reach = [row.copy() for row in adj]
    for k in range(N5):
        for i in range(N5):
            take = ((reach[i] >> k) & 1).astype(bool)
            reach[i] |= np.where(take, reach[k], 0).astype(np.int16)
    comp = []
    for i in range(N5):
        ci = np.full(total, 1 << i, dtype=np.int16)
        for j in range(N5):
            if j == i:
                continue
            both = (((reach[i] >> j) & 1) & ((reach[j] >> i) & 1)).astype(bool)
            ci |= np.where(both, np.int16(1 << j), np.int16(0))
        comp.append(ci)
    term = []
    for i in range(N5):
        bad = np.zeros(total, dtype=bool)
        for j in range(N5):
            member = (((comp[i] >> j) & 1) != 0)
            escapes = (adj[j] & ~comp[i]) != 0
            bad |= member & escapes
        term.append(~bad)
    ncomp = np.zeros(total, dtype=np.int8)
    for i in range(N5):
        lowest = (comp[i] & ((1 << i) - 1)) == 0
        ncomp += (term[i] & lowest).astype(np.int8)
    return {"masks": masks, "adj": adj, "reach": reach, "comp": comp,
            "term": term, "ncomp": ncomp}


def check_tables_against_library(tables, sample_masks):
    """Bridge the vectorized tables to the library on sampled digraphs."""
    for mask in sample_masks:
        d = Digraph.from_arcs(
            N5, (arc for arc, k in BIT5.items() if (mask >> k) & 1)
        )
        want = terminal_comps(d)
        got = set()
        for i in range(N5):
            if tables["term"][i][mask] and (
                int(tables["comp"][i][mask]) & ((1 << i) - 1)
            ) == 0:
                got.add(
                    frozenset(
                        j
                        for j in range(N5)
                        if (int(tables["comp"][i][mask]) >> j) & 1
                    )
                )
        assert frozenset(got) == want, mask
        assert int(tables["ncomp"][mask]) == len(want)


def check_items_n5(tables):
    """Run facts (a)-(e) across all 5-vertex digraphs, vectorized.

    Every claim, including the per-edit collection claims, is exhaustive
    over all 2**20 arc sets and all single-arc edits.
    """
    import numpy as np

    masks = tables["masks"]
    adj, reach = tables["adj"], tables["reach"]
    comp, term, ncomp = tables["comp"], tables["term"], tables["ncomp"]

    for (u, v), k in sorted(BIT5.items()):
        bit = 1 << k
        present = (masks & bit) != 0
        sub = (masks & ~bit).astype(np.int64)

        # (a) count part, exhaustive: removing an arc never lowers the
        # terminal-component count.
        nc_sub = ncomp[sub]
        assert (ncomp[present] <= nc_sub[present]).all()

        # (a) strict part, exhaustive: a directed path of D linking two
        # distinct terminal components of D - arc forces a strict drop.
        linked = np.zeros(len(masks), dtype=bool)
        for x in range(N5):
            for w in range(N5):
                if x == w:
                    continue
                tx = term[x][sub] & ((comp[x][sub] & ((1 << x) - 1)) == 0)
                tw = term[w][sub] & ((comp[w][sub] & ((1 << w) - 1)) == 0)
                diff = ((comp[x][sub] >> w) & 1) == 0
                path = ((reach[x] >> w) & 1) != 0
                linked |= tx & tw & diff & path
        sel = present & linked
        assert (ncomp[sel] < nc_sub[sel]).all()

        # (b) exhaustive: deleting an arc inside a terminal component
        # keeps every other terminal component and shrinks that one onto
        # a piece containing the tail.
        inside = present & (((comp[u][masks] >> v) & 1) != 0) & term[u][masks]
        tail_term = term[u][sub]
        tail_subset = (comp[u][sub] & ~comp[u][masks]) == 0
        assert (tail_term[inside]).all()
        assert (tail_subset[inside]).all()
        for w in range(N5):
            other = inside & term[w][masks] & (((comp[u][masks] >> w) & 1) == 0)
            same = (comp[w][sub] == comp[w][masks]) & term[w][sub]
            assert same[other].all()
            # No unrelated terminal component may appear.
            new_term = inside & term[w][sub]
            legit = (((comp[w][sub] >> u) & 1) != 0) | (
                term[w][masks]
                & (comp[w][sub] == comp[w][masks])
                & (((comp[u][masks] >> w) & 1) == 0)
            )
            assert legit[new_term].all()

        # (c) and (d), exhaustive.
        out_term = ~term[u][masks]
        escape = np.zeros(len(masks), dtype=bool)
        sub_reach_u = _reach_row_after_removal(tables, u, k)
        for w in range(N5):
            escape |= (((sub_reach_u >> w) & 1) != 0) & term[w][masks]
        stable = present & out_term & escape
        grown = (masks | bit).astype(np.int64)
        # For (d): u must sit outside every terminal component of the
        # original digraph; the tables are read at the grown mask.
        added = (~present) & ~term[u][masks]
        for w in range(N5):
            assert (term[w][sub][stable] == term[w][masks][stable]).all()
            sel_t = stable & term[w][masks]
            assert (comp[w][sub][sel_t] == comp[w][masks][sel_t]).all()
            assert (term[w][grown][added] == term[w][masks][added]).all()
            sel_t = added & term[w][masks]
            assert (comp[w][grown][sel_t] == comp[w][masks][sel_t]).all()

        # (e) exhaustive: adding an out-arc to a singleton terminal.
        single = (~present) & term[u][masks] & (comp[u][masks] == (1 << u))
        nc_big = ncomp[grown]
        drop = nc_big < ncomp[masks]
        same_count = single & ~drop
        assert (nc_big[single] <= ncomp[masks][single]).all()
        keeps_uv = (((comp[u][grown] >> v) & 1) != 0) & term[u][grown]
        assert keeps_uv[same_count].all()
        for w in range(N5):
            if w == u:
                continue
            sel_t = same_count & term[w][masks]
            assert term[w][grown][sel_t].all()
            assert (comp[w][grown][sel_t] == comp[w][masks][sel_t]).all()


def _reach_row_after_removal(tables, u: int, arc_bit_index: int):
    """Reachability row of u in every digraph minus the given arc,
    gathered from the precomputed tables."""
    import numpy as np

    masks = tables["masks"]
    sub = (masks & ~(1 << arc_bit_index)).astype(np.int64)
    return tables["reach"][u][sub]
