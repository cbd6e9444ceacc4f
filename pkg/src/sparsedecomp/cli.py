"""Command-line interface.

Exit codes: 0 success, 1 infeasible or unsupported instance, 2 input
error (also used by the argument parser itself), 3 internal diagnostic.
Certificates are printed as JSON; ``--plot`` renders a figure of the
result next to the textual output.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import certificates as certs
from .allocation import compute_allocation
from .decompose import (
    FOREST_43,
    K_FORESTS,
    PSEUDOFOREST_M2,
    Decomposition,
    forest_decompose_43,
    nash_williams_partition,
    pseudoforest_decompose,
)
from .density import m1, m2, m43, max_density, mixed_m2
from .errors import DiagnosticError, InfeasibleError, InputFormatError
from .formats import format_fraction, parse_fraction, read_graph
from .ramsey import ProblemInstance, ramsey_decompose
from .report import render_coloring, render_decomposition

_MEASURE_FUNCS = {"m": max_density, "m1": m1, "m2": m2, "m43": m43}


def _tidy_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputFormatError as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(2)
        except InfeasibleError as exc:
            click.echo(f"infeasible: {exc}")
            sys.exit(1)
        except DiagnosticError as exc:
            click.echo(f"internal diagnostic: {exc}", err=True)
            sys.exit(3)
        except ValueError as exc:
            # Library precondition violations surface as bad input.
            click.echo(f"input error: {exc}", err=True)
            sys.exit(2)

    return wrapper


@click.group()
def main():
    """Exact graph decompositions: densities, allocations, forest and
    pseudoforest splits, and pattern-avoiding edge colorings."""


@main.command()
@click.argument("graphfile", type=click.Path())
@click.option("--measure", type=click.Choice(["m", "m1", "m2", "m43"]),
              default="m", show_default=True)
@_tidy_errors
def density(graphfile, measure):
    """Print the exact density value and a witness vertex set."""
    g = read_graph(graphfile)
    result = _MEASURE_FUNCS[measure](g)
    click.echo(f"{measure} = {format_fraction(result.value)}")
    click.echo("witness = " + " ".join(map(str, sorted(result.witness))))


@main.command()
@click.argument("h1file", type=click.Path())
@click.argument("h2file", type=click.Path())
@_tidy_errors
def mixed(h1file, h2file):
    """Print the mixed 2-density of two patterns and the threshold
    exponent -1/value. Arguments are ordered by 2-density if needed."""
    a, b = read_graph(h1file), read_graph(h2file)
    if m2(a).value < m2(b).value:
        a, b = b, a
    value = mixed_m2(a, b).value
    click.echo(f"mixed_m2 = {format_fraction(value)}")
    click.echo(f"exponent = {format_fraction(-1 / value)}")


@main.command()
@click.argument("graphfile", type=click.Path())
@click.option("--m", "m_text", required=True, metavar="P/Q",
              help="Out-weight bound as an exact fraction.")
@_tidy_errors
def allocate(graphfile, m_text):
    """Print a fractional orientation with out-weight at most m, or NONE."""
    g = read_graph(graphfile)
    bound = parse_fraction(m_text)
    if bound < 0:
        raise InputFormatError("the bound must be non-negative")
    allocation = compute_allocation(g, bound)
    if allocation is None:
        click.echo("NONE")
        sys.exit(1)
    click.echo(json.dumps(certs.allocation_doc(allocation), indent=2))


@main.command()
@click.argument("graphfile", type=click.Path())
@click.option("--mode", type=click.Choice(["pseudoforest", "forest43", "kforests"]),
              required=True)
@click.option("--m", "m_text", metavar="P/Q",
              help="Density budget for forest43 (default: the graph's m).")
@click.option("--k", type=int, help="Number of forests for kforests.")
@click.option("--plot", "plot_path", type=click.Path(),
              help="Also render the decomposition to this image file.")
@_tidy_errors
def decompose(graphfile, mode, m_text, k, plot_path):
    """Decompose the graph and print a self-contained JSON certificate."""
    g = read_graph(graphfile)
    if mode == "kforests":
        if k is None:
            raise InputFormatError("kforests mode needs --k")
        forests = nash_williams_partition(g, k)
        if forests is None:
            witness = m1(g)
            raise InfeasibleError(
                f"no partition into {k} forests: the vertex set "
                f"{sorted(witness.witness)} has fractional arboricity "
                f"{format_fraction(witness.value)} > {k}"
            )
        dec = Decomposition(g, K_FORESTS, forests, None, {"k": k})
    elif mode == "pseudoforest":
        dec = pseudoforest_decompose(g)
    else:
        budget = parse_fraction(m_text) if m_text else max_density(g).value
        dec = forest_decompose_43(g, budget)
    click.echo(json.dumps(certs.decomposition_doc(dec), indent=2))
    if plot_path:
        render_decomposition(dec, plot_path)
        click.echo(f"figure written to {plot_path}", err=True)


@main.command()
@click.argument("gfile", type=click.Path())
@click.argument("patternfiles", type=click.Path(), nargs=-1, required=True)
@click.option("--best-effort", is_flag=True,
              help="Attempt a coloring even when the density hypothesis "
                   "fails; no completeness claim.")
@click.option("--plot", "plot_path", type=click.Path(),
              help="Also render the coloring to this image file.")
@_tidy_errors
def ramsey(gfile, patternfiles, best_effort, plot_path):
    """Color the host graph's edges avoiding pattern i in color i.

    With more than two patterns, the two of largest 2-density drive the
    construction and the remaining colors stay empty.
    """
    from .ramsey import order_patterns_by_density

    if len(patternfiles) < 2:
        raise InputFormatError("need at least two pattern files")
    g = read_graph(gfile)
    patterns = order_patterns_by_density(
        [read_graph(p) for p in patternfiles]
    )
    inst = ProblemInstance(g, patterns[0], patterns[1])
    coloring = ramsey_decompose(inst, best_effort=best_effort)
    doc = certs.coloring_doc(
        coloring, patterns=patterns,
        mixed=inst.mixed_density, host_density=inst.host_density,
    )
    click.echo(json.dumps(doc, indent=2))
    if plot_path:
        render_coloring(coloring, plot_path)
        click.echo(f"figure written to {plot_path}", err=True)


@main.command()
@click.argument("certfile", type=click.Path())
@_tidy_errors
def verify(certfile):
    """Re-check a certificate from scratch; trusts nothing recorded."""
    doc = certs.load_doc(certfile)
    ok, detail = certs.verify_certificate(doc)
    if ok:
        click.echo(f"VALID: {detail}")
    else:
        click.echo(f"INVALID: {detail}")
        sys.exit(1)


if __name__ == "__main__":
    main()
