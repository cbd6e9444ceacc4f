"""Graph file formats and exact fraction strings.

The plain text format is diff-friendly: a first line ``n <count>``,
then one ``u v`` pair per line, ``#`` starting a comment. A graph6
reader/writer is included for corpus ingestion; fractions travel as
``p/q`` strings, never as floats.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import InputFormatError
from .graphs import Graph

_G6_HEADER = ">>graph6<<"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad fraction {text!r}: {exc}") from None


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_graph_text(text: str, source: str = "<string>") -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise InputFormatError(f"{source}: no graph data")
    first = lines[0]
    if first.split()[0] != "n":
        if len(lines) > 1:
            raise InputFormatError(
                f"{source}: multiple graph6 lines; expected a single graph"
            )
        return decode_graph6(first)
    parts = first.split()
    if len(parts) != 2:
        raise InputFormatError(f"{source}: header must be 'n <count>'")
    try:
        n = int(parts[1])
    except ValueError:
        raise InputFormatError(f"{source}: bad vertex count {parts[1]!r}") from None
    edges = []
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 2:
            raise InputFormatError(f"{source}: bad edge line {line!r}")
        try:
            edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise InputFormatError(f"{source}: bad edge line {line!r}") from None
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise InputFormatError(f"{source}: {exc}") from None


def read_graph(path) -> Graph:
    """Load one graph from a file, in plain text or graph6 format."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    return parse_graph_text(text, source=str(path))


def write_graph(g: Graph, path):
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    Path(path).write_text("\n".join(lines) + "\n")


def decode_graph6(line: str) -> Graph:
    """Decode one graph6 line (with or without the format header)."""
    line = line.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    data = [ord(ch) - 63 for ch in line]
    if any(b < 0 or b > 63 for b in data):
        raise InputFormatError(f"invalid graph6 byte in {line!r}")
    if not data:
        raise InputFormatError("empty graph6 line")
    if data[0] == 63:  # '~' prefix: larger vertex counts
        if len(data) < 4 or data[1] == 63:
            raise InputFormatError("unsupported graph6 size form")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        bits = data[4:]
    else:
        n = data[0]
        bits = data[1:]
    need = n * (n - 1) // 2
    if len(bits) != (need + 5) // 6:
        raise InputFormatError(
            f"graph6 line has {len(bits)} data bytes, expected {(need + 5) // 6}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = chr(n + 63)
    elif n < 258048:
        head = "~" + chr((n >> 12) + 63) + chr(((n >> 6) & 63) + 63) + chr((n & 63) + 63)
    else:
        raise ValueError("graph too large for this graph6 writer")
    chunks = []
    acc = 0
    filled = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (1 if g.has_edge(i, j) else 0)
            filled += 1
            if filled == 6:
                chunks.append(chr(acc + 63))
                acc, filled = 0, 0
    if filled:
        chunks.append(chr((acc << (6 - filled)) + 63))
    return head + "".join(chunks)


def read_graph6_file(path) -> list[Graph]:
    """All graphs from a graph6 corpus file, one per line."""
    graphs = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line:
            graphs.append(decode_graph6(line))
    return graphs
