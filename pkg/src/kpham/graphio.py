"""Plain-text graph serialization.

One graph is a header line followed by one line per edge:

    kpartite <k> <n> <m>
    <u> <v>          (m lines, 0 <= u < v < k*n, cross-part only)

Full-line comments start with '#'. Files may hold several graphs separated
by one or more blank lines. Parsing is strict: every violation names the
1-based line it happened on, and writing always emits edges in ascending
order with a trailing newline, so write o parse round-trips bytes exactly.
"""

from __future__ import annotations

from .errors import GraphFormatError, InvalidGraph, TooLarge
from .graph import KPartiteGraph, from_edge_list

HEADER_WORD = "kpartite"


def _ints(tokens: list[str], line_no: int) -> list[int]:
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise GraphFormatError(line_no, f"not an integer: {tok!r}") from None
    return out


def parse_graphs(text: str) -> list[KPartiteGraph]:
    """Parse every graph in the text, in order of appearance."""
    lines = text.split("\n")
    graphs: list[KPartiteGraph] = []
    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        if not raw or raw.startswith("#"):
            i += 1
            continue
        header_no = i + 1
        tokens = raw.split()
        if tokens[0] != HEADER_WORD or len(tokens) != 4:
            raise GraphFormatError(
                header_no, f"expected header '{HEADER_WORD} <k> <n> <m>'"
            )
        k, n, m = _ints(tokens[1:], header_no)
        if m < 0:
            raise GraphFormatError(header_no, "edge count may not be negative")
        i += 1
        edges: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        while len(edges) < m:
            if i >= len(lines):
                raise GraphFormatError(
                    len(lines), f"file ends after {len(edges)} of {m} edges"
                )
            raw = lines[i].strip()
            line_no = i + 1
            i += 1
            if raw.startswith("#"):
                continue
            if not raw:
                raise GraphFormatError(
                    line_no, f"blank line after {len(edges)} of {m} edges"
                )
            tokens = raw.split()
            if len(tokens) != 2:
                raise GraphFormatError(line_no, "expected two endpoints")
            u, v = _ints(tokens, line_no)
            if not 0 <= u < v < k * n:
                raise GraphFormatError(
                    line_no,
                    f"endpoints must satisfy 0 <= u < v < {k * n}, got {u} {v}",
                )
            if n and u // n == v // n:
                raise GraphFormatError(
                    line_no, f"{u} and {v} sit in the same part"
                )
            if (u, v) in seen:
                raise GraphFormatError(line_no, f"duplicate edge {u} {v}")
            seen.add((u, v))
            edges.append((u, v))
        try:
            graphs.append(from_edge_list(k, n, edges))
        except (InvalidGraph, TooLarge) as exc:
            raise GraphFormatError(header_no, str(exc)) from None
    return graphs


def parse_graph(text: str) -> KPartiteGraph:
    """Parse exactly one graph."""
    graphs = parse_graphs(text)
    if not graphs:
        raise GraphFormatError(1, "no graph found")
    if len(graphs) > 1:
        raise GraphFormatError(1, f"expected one graph, found {len(graphs)}")
    return graphs[0]


def write_graph(g: KPartiteGraph) -> str:
    edges = g.edges()
    lines = [f"{HEADER_WORD} {g.k} {g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_graphs(graphs: list[KPartiteGraph]) -> str:
    return "\n".join(write_graph(g) for g in graphs)
