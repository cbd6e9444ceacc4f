"""Self-contained JSON certificates and their independent verification.

Every document embeds the graph it talks about, so ``verify`` re-derives
each claim (partitions, structural predicates, density bounds,
pattern-freeness) from scratch; recorded values are cross-checked, never
trusted.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .allocation import Allocation
from .decompose import (
    FOREST_43,
    K_FORESTS,
    PSEUDOFOREST_M2,
    Decomposition,
    certify_m2_at_most,
)
from .density import check_density_at_most, m2, max_density, mixed_m2
from .errors import InputFormatError
from .formats import format_fraction, parse_fraction
from .graphs import Graph, contains_subgraph, is_forest, is_pseudoforest
from .ramsey import RamseyColoring

SCHEMA = "sparsedecomp-certificate-v1"


def graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges]}


def graph_from_obj(obj) -> Graph:
    try:
        return Graph.from_edges(int(obj["n"]), obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad graph object: {exc}") from None


def _edges_to_list(edges) -> list[list[int]]:
    return [list(e) for e in sorted(edges)]


def _edges_from_list(items) -> frozenset:
    out = set()
    for u, v in items:
        u, v = int(u), int(v)
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def decomposition_doc(dec: Decomposition) -> dict:
    doc = {
        "schema": SCHEMA,
        "kind": "decomposition",
        "mode": dec.mode,
        "graph": graph_to_obj(dec.graph),
    }
    if dec.mode == K_FORESTS:
        doc["k"] = len(dec.parts)
        doc["forests"] = [_edges_to_list(part) for part in dec.parts]
    else:
        doc["m"] = format_fraction(dec.budget)
        doc["part_f"] = _edges_to_list(dec.part_f)
        doc["part_rest"] = _edges_to_list(dec.part_rest)
        doc["certifier"] = {
            "measure": dec.certificate.get("measure"),
            "bound": format_fraction(dec.certificate.get("bound", dec.budget)),
            "strict": bool(dec.certificate.get("strict", False)),
        }
    return doc


def kforests_doc(g: Graph, forests) -> dict:
    dec = Decomposition(g, K_FORESTS, tuple(forests), None, {"k": len(forests)})
    return decomposition_doc(dec)


def coloring_doc(c: RamseyColoring, patterns=None, mixed=None, host_density=None) -> dict:
    """Certificate for a coloring; extra patterns beyond the two active
    ones receive empty color classes."""
    patterns = list(patterns) if patterns is not None else [c.h1, c.h2]
    colors = [_edges_to_list(c.color1_edges), _edges_to_list(c.color2_edges)]
    colors.extend([] for _ in patterns[2:])
    doc = {
        "schema": SCHEMA,
        "kind": "ramsey_coloring",
        "graph": graph_to_obj(c.graph),
        "patterns": [graph_to_obj(h) for h in patterns],
        "branch": c.branch,
        "colors": colors,
    }
    if mixed is not None:
        doc["mixed_m2"] = format_fraction(mixed)
    if host_density is not None:
        doc["m"] = format_fraction(host_density)
    return doc


def allocation_doc(a: Allocation) -> dict:
    theta = [
        [u, v, format_fraction(value)]
        for (u, v), value in sorted(a.theta.items())
    ]
    return {
        "schema": SCHEMA,
        "kind": "allocation",
        "graph": graph_to_obj(a.graph),
        "m": format_fraction(a.m),
        "quantum_den": a.quantum_den,
        "theta": theta,
    }


def allocation_from_doc(doc) -> Allocation:
    g = graph_from_obj(doc["graph"])
    m = parse_fraction(doc["m"])
    theta = {}
    for u, v, text in doc["theta"]:
        theta[(int(u), int(v))] = parse_fraction(text)
    try:
        return Allocation(g, m, theta, int(doc["quantum_den"]))
    except ValueError as exc:
        raise InputFormatError(f"invalid allocation: {exc}") from None


def save_doc(doc: dict, path):
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_doc(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON: {exc}") from None


def verify_certificate(doc) -> tuple[bool, str]:
    """Re-derive every claim of a certificate. Returns (ok, detail)."""
    if not isinstance(doc, dict):
        raise InputFormatError("certificate must be a JSON object")
    kind = doc.get("kind")
    if kind == "decomposition":
        return _verify_decomposition(doc)
    if kind == "ramsey_coloring":
        return _verify_coloring_doc(doc)
    if kind == "allocation":
        return _verify_allocation_doc(doc)
    raise InputFormatError(f"unknown certificate kind {kind!r}")


def _verify_decomposition(doc) -> tuple[bool, str]:
    g = graph_from_obj(doc["graph"])
    mode = doc.get("mode")
    if mode == K_FORESTS:
        try:
            forests = [_edges_from_list(part) for part in doc["forests"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad forests field: {exc}") from None
        if len(forests) != int(doc.get("k", len(forests))):
            return False, "stated k differs from the number of parts"
        if not _is_partition(g, forests):
            return False, "forests do not partition the edge set"
        for i, part in enumerate(forests):
            if not is_forest(g.edge_subgraph(part)):
                return False, f"part {i} is not a forest"
        return True, f"{len(forests)} forests partition the edges"
    if mode not in (PSEUDOFOREST_M2, FOREST_43):
        raise InputFormatError(f"unknown decomposition mode {mode!r}")
    try:
        part_f = _edges_from_list(doc["part_f"])
        part_rest = _edges_from_list(doc["part_rest"])
        bound = parse_fraction(doc["m"])
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"missing field: {exc}") from None
    if not _is_partition(g, [part_f, part_rest]):
        return False, "parts do not partition the edge set"
    f_graph = g.edge_subgraph(part_f)
    rest = g.edge_subgraph(part_rest)
    if mode == PSEUDOFOREST_M2:
        if not is_pseudoforest(f_graph):
            return False, "first part is not a pseudoforest"
        if not certify_m2_at_most(rest, bound).ok:
            return False, f"2-density of the rest exceeds {bound}"
        return True, "pseudoforest plus 2-density bound verified"
    if not is_forest(f_graph):
        return False, "first part is not a forest"
    if bound <= Fraction(3, 2):
        return False, "forest-mode bound must exceed 3/2"
    if not check_density_at_most(rest, "m43", bound, strict=True).ok:
        return False, f"4/3-density of the rest is not strictly below {bound}"
    return True, "forest plus strict 4/3-density bound verified"


def _verify_coloring_doc(doc) -> tuple[bool, str]:
    g = graph_from_obj(doc["graph"])
    try:
        patterns = [graph_from_obj(obj) for obj in doc["patterns"]]
        colors = [_edges_from_list(part) for part in doc["colors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad coloring fields: {exc}") from None
    if len(patterns) < 2 or len(colors) != len(patterns):
        return False, "need one color class per pattern, at least two"
    if not _is_partition(g, colors):
        return False, "color classes do not partition the edge set"
    densities = [m2(h).value for h in patterns]
    if any(d1 < d2 for d1, d2 in zip(densities, densities[1:])):
        return False, "patterns are not ordered by decreasing 2-density"
    for i, (h, part) in enumerate(zip(patterns, colors), start=1):
        if contains_subgraph(g.edge_subgraph(part), h):
            return False, f"color {i} contains its forbidden pattern"
    if "m" in doc and parse_fraction(doc["m"]) != max_density(g).value:
        return False, "recorded maximal density is wrong"
    if "mixed_m2" in doc:
        recorded = parse_fraction(doc["mixed_m2"])
        if recorded != mixed_m2(patterns[0], patterns[1]).value:
            return False, "recorded mixed density is wrong"
    return True, "coloring verified: every class avoids its pattern"


def _verify_allocation_doc(doc) -> tuple[bool, str]:
    try:
        allocation_from_doc(doc)
    except InputFormatError as exc:
        return False, str(exc)
    return True, "allocation invariants verified"


def _is_partition(g: Graph, parts) -> bool:
    union = set()
    total = 0
    for part in parts:
        if not part <= g.edges:
            return False
        union |= part
        total += len(part)
    return union == g.edges and total == g.edge_count
