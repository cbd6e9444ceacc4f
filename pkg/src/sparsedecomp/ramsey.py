"""End-to-end driver: 2-color the edges of a sparse graph so that color
one avoids the denser pattern and color two avoids the sparser one.

The branch machinery mirrors the density thresholds: very sparse hosts
split into two forests outright; a sparser-pattern core with two or
more cycles fits no pseudoforest, so a pseudoforest split works; a core
that is a cycle of 2-density at most 3/2 is handled by the forest /
4/3-density split. The one refused input family is a triangle core on a
host of maximal density above 3/2. Every produced coloring is verified
by explicit subgraph search before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .decompose import (
    forest_decompose_43,
    nash_williams_partition,
    pseudoforest_decompose,
)
from .density import m2, m43, max_density, mixed_m2, strictly_2_balanced_subgraph
from .errors import (
    DiagnosticError,
    HypothesisError,
    InfeasibleError,
    UnsupportedCaseError,
    VerificationError,
)
from .graphs import Edge, Graph, contains_subgraph

TWO_FORESTS = "two_forests"
PSEUDOFOREST = "pseudoforest"
FOREST_43_BRANCH = "forest_43"


@dataclass(frozen=True)
class ProblemInstance:
    """Host graph plus two patterns ordered by decreasing 2-density.

    Requires m2(h1) > m2(h2) > 1; the mixed density then sits strictly
    between the two, which is asserted at load.
    """

    g: Graph
    h1: Graph
    h2: Graph

    def __post_init__(self):
        d1, d2 = m2(self.h1).value, m2(self.h2).value
        if not d1 > d2:
            raise HypothesisError(
                f"patterns must be ordered by 2-density ({d1} vs {d2})"
            )
        if not d2 > 1:
            raise HypothesisError(
                f"second pattern must have 2-density above 1, got {d2}"
            )
        mixed = mixed_m2(self.h1, self.h2).value
        assert d1 > mixed > d2, "mixed density escaped its sandwich"

    @cached_property
    def mixed_density(self) -> Fraction:
        return mixed_m2(self.h1, self.h2).value

    @cached_property
    def host_density(self) -> Fraction:
        return max_density(self.g).value


@dataclass(frozen=True)
class RamseyColoring:
    """A verified 2-coloring witness: color one omits h1, color two
    omits h2."""

    graph: Graph
    h1: Graph
    h2: Graph
    branch: str
    color1_edges: frozenset[Edge]
    color2_edges: frozenset[Edge]
    verified: bool


def verify_coloring(c: RamseyColoring) -> bool:
    """Re-check the witness from scratch: exact partition, then explicit
    subgraph search for each forbidden pattern."""
    if c.color1_edges & c.color2_edges:
        raise ValueError("color classes overlap")
    if c.color1_edges | c.color2_edges != c.graph.edges:
        raise ValueError("color classes do not cover the edge set")
    part1 = c.graph.edge_subgraph(c.color1_edges)
    part2 = c.graph.edge_subgraph(c.color2_edges)
    return not contains_subgraph(part1, c.h1) and not contains_subgraph(
        part2, c.h2
    )


def ramsey_decompose(
    inst: ProblemInstance, best_effort: bool = False
) -> RamseyColoring:
    """Produce a verified coloring for any instance whose host density
    is at most the mixed density, except the documented refusal.

    With best_effort the density precondition is skipped and the
    branches are attempted anyway; an unverifiable outcome is then
    reported as infeasible rather than as an internal error.
    """
    g, h1, h2 = inst.g, inst.h1, inst.h2
    mg = inst.host_density
    mixed = inst.mixed_density
    if mg > mixed and not best_effort:
        raise HypothesisError(
            f"host maximal density {mg} exceeds the mixed density {mixed}"
        )

    if mg <= Fraction(3, 2):
        forests = nash_williams_partition(g, 2)
        if forests is None:
            raise DiagnosticError(
                "two-forest partition failed although density is at most 3/2"
            )
        branch = TWO_FORESTS
        color1, color2 = forests
    else:
        core = strictly_2_balanced_subgraph(h2)
        if core.edge_count >= core.n + 1:
            dec = pseudoforest_decompose(g)
            branch = PSEUDOFOREST
            color1, color2 = dec.part_rest, dec.part_f
        elif core.edge_count == core.n and m2(core).value <= Fraction(3, 2):
            dec = forest_decompose_43(g, mg)
            branch = FOREST_43_BRANCH
            color1, color2 = dec.part_rest, dec.part_f
            if not best_effort:
                rest_density = m43(g.edge_subgraph(color1)).value
                assert rest_density < mg <= mixed <= m43(h1).value
        elif core.edge_count == core.n:
            raise UnsupportedCaseError(
                "sparser pattern reduces to a triangle while the host has "
                "maximal density above 3/2; this family is not supported"
            )
        else:
            raise DiagnosticError(
                "strictly 2-balanced core is a forest despite 2-density > 1"
            )

    coloring = RamseyColoring(g, h1, h2, branch, frozenset(color1),
                              frozenset(color2), verified=False)
    if not verify_coloring(coloring):
        if best_effort:
            raise InfeasibleError(
                "best-effort coloring failed verification; the instance is "
                "outside the guaranteed density range"
            )
        raise VerificationError(
            "coloring failed verification despite certified decomposition"
        )
    return RamseyColoring(g, h1, h2, branch, frozenset(color1),
                          frozenset(color2), verified=True)


def order_patterns_by_density(patterns) -> list[Graph]:
    """Sort pattern graphs by decreasing 2-density (stable)."""
    return sorted(patterns, key=lambda h: m2(h).value, reverse=True)
