"""Ground-truth Hamiltonicity decisions and exhaustive threshold sweeps.

The oracle is deliberately independent of the constructive solver: it
shares no cycle-building code, so a bug in one cannot hide in the other.
Two decision procedures are provided:

* backtracking — anchored depth-first search with reachability pruning,
  the default up to 12 vertices;
* dp — Held-Karp subset dynamic programming over endpoint bitmasks, the
  default from 13 vertices up to the size cap.

enumerate_threshold_sweep() runs the oracle (and, at or above the edge
threshold, the solver) over every host-edge subset of a given size range,
in colex order, optionally split across worker processes. Chunks are
assigned by index range and merged in index order, so the summary is
byte-identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .conditions import edge_threshold
from .constructive import SEARCH_FALLBACK, solve
from .errors import TooLarge
from .graph import KPartiteGraph, bits, from_edge_list, new_complete
from .paths import canonical_cycle, is_hamilton_cycle

ORACLE_VERTEX_CAP = 16
_BACKTRACKING_LIMIT = 12
HOST_EDGE_CAP = 28


@dataclass(frozen=True)
class OracleAnswer:
    hamiltonian: bool
    cycle: tuple[int, ...] | None
    method: str
    nodes_expanded: int


def is_hamiltonian(
    graph: KPartiteGraph | Sequence[int],
    method: str = "auto",
    max_vertices: int = ORACLE_VERTEX_CAP,
) -> OracleAnswer:
    """Decide Hamiltonicity exactly, returning a witness cycle when one
    exists.

    Accepts a partite graph or raw adjacency rows. method is "auto"
    (backtracking up to 12 vertices, dp beyond), "backtracking", or "dp".
    Raises TooLarge past max_vertices: the procedures are exponential and
    the cap keeps misuse loud.
    """
    rows = tuple(graph.adj) if isinstance(graph, KPartiteGraph) else tuple(graph)
    n_vertices = len(rows)
    if n_vertices > max_vertices:
        raise TooLarge(
            f"{n_vertices} vertices exceeds the oracle cap of {max_vertices}"
        )
    if method == "auto":
        method = "backtracking" if n_vertices <= _BACKTRACKING_LIMIT else "dp"
    if method not in ("backtracking", "dp"):
        raise ValueError(f"unknown oracle method {method!r}")

    if n_vertices < 3 or min(row.bit_count() for row in rows) < 2:
        return OracleAnswer(False, None, method, 0)
    if not _connected(rows):
        return OracleAnswer(False, None, method, 0)
    if method == "backtracking":
        cycle, nodes = _backtrack(rows)
    else:
        cycle, nodes = _held_karp(rows)
    if cycle is None:
        return OracleAnswer(False, None, method, nodes)
    return OracleAnswer(True, canonical_cycle(cycle), method, nodes)


def _connected(rows: tuple[int, ...]) -> bool:
    full = (1 << len(rows)) - 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def _backtrack(rows: tuple[int, ...]) -> tuple[list[int] | None, int]:
    n_vertices = len(rows)
    full = (1 << n_vertices) - 1
    path = [0]
    nodes = 0

    def reachable_all(cur: int, remaining: int) -> bool:
        allowed = remaining | (1 << cur)
        seen = 1 << cur
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return not remaining & ~seen

    def dive(visited: int) -> bool:
        nonlocal nodes
        nodes += 1
        cur = path[-1]
        if visited == full:
            return bool(rows[cur] & 1)
        remaining = full & ~visited
        avail = remaining | (1 << cur) | 1
        for w in bits(remaining):
            if (rows[w] & avail).bit_count() < 2:
                return False
        if not reachable_all(cur, remaining):
            return False
        for w in bits(rows[cur] & remaining):
            path.append(w)
            if dive(visited | (1 << w)):
                return True
            path.pop()
        return False

    if dive(1):
        return path, nodes
    return None, nodes


def _held_karp(rows: tuple[int, ...]) -> tuple[list[int] | None, int]:
    n_vertices = len(rows)
    size = 1 << n_vertices
    full = size - 1
    dp = [0] * size
    dp[1] = 1  # the trivial path sitting at vertex 0
    nodes = 0
    for mask in range(1, size, 2):
        ends = dp[mask]
        if not ends:
            continue
        for e in bits(ends):
            nodes += 1
            for w in bits(rows[e] & ~mask):
                dp[mask | (1 << w)] |= 1 << w
    finals = dp[full] & rows[0] & ~1
    if not finals:
        return None, nodes
    end = (finals & -finals).bit_length() - 1
    seq = [end]
    mask = full
    cur = end
    while mask != (1 << cur) | 1:
        prev_mask = mask & ~(1 << cur)
        for p in bits(dp[prev_mask] & rows[cur]):
            seq.append(p)
            cur = p
            mask = prev_mask
            break
        else:  # pragma: no cover - dp tables are self-consistent
            return None, nodes
    seq.append(0)
    seq.reverse()
    return seq, nodes


# =====================================================================
# exhaustive sweep over host-edge subsets
# =====================================================================


@dataclass(frozen=True)
class Counterexample:
    """One instance where solver and oracle did not agree."""

    edges: tuple[tuple[int, int], ...]
    oracle_hamiltonian: bool
    solver_failure: str | None


@dataclass(frozen=True)
class EnumerationSummary:
    k: int
    n: int
    min_edges: int
    total: int
    hamiltonian: int
    non_hamiltonian: int
    solver_agreements: int
    solver_fallbacks: int
    counterexamples: tuple[Counterexample, ...]
    branch_tags: tuple[tuple[str, int], ...]


def _unrank_colex(rank: int, m: int) -> list[int]:
    out: list[int] = []
    for i in range(m, 0, -1):
        a = i - 1
        while comb(a + 1, i) <= rank:
            a += 1
        out.append(a)
        rank -= comb(a, i)
    out.reverse()
    return out


def _next_colex(a: list[int]) -> None:
    m = len(a)
    for i in range(m - 1):
        if a[i] + 1 < a[i + 1]:
            a[i] += 1
            for j in range(i):
                a[j] = j
            return
    a[m - 1] += 1
    for j in range(m - 1):
        a[j] = j


def _sweep_chunk(
    args: tuple[int, int, int, int, int],
) -> tuple[int, int, int, int, list[Counterexample], dict[str, int]]:
    """Process flattened sweep indices [lo, hi). Sizes ascend from
    min_edges; within a size, subsets ascend in colex order."""
    k, n, min_edges, lo, hi = args
    host = new_complete(k, n).edges()
    m_host = len(host)
    threshold = edge_threshold(k, n)

    # Locate the (size, colex rank) of index lo.
    size = min_edges
    offset = lo
    while offset >= comb(m_host, size):
        offset -= comb(m_host, size)
        size += 1
    subset = _unrank_colex(offset, size) if size else []

    ham = non_ham = agreements = fallbacks = 0
    records: list[Counterexample] = []
    tags: dict[str, int] = {}
    remaining_in_size = comb(m_host, size) - offset
    for _ in range(hi - lo):
        if remaining_in_size == 0:
            size += 1
            subset = list(range(size))
            remaining_in_size = comb(m_host, size)
        edges = [host[j] for j in subset]
        g = from_edge_list(k, n, edges)
        answer = is_hamiltonian(g)
        if answer.hamiltonian:
            ham += 1
        else:
            non_ham += 1
        if g.edge_count >= threshold:
            result = solve(g)
            for tag in sorted(set(result.trace)):
                tags[tag] = tags.get(tag, 0) + 1
            if SEARCH_FALLBACK in result.trace:
                fallbacks += 1
            valid = result.cycle is not None and is_hamilton_cycle(
                g.adj, result.cycle
            )
            if valid and answer.hamiltonian:
                agreements += 1
            else:
                failure = result.failure
                if result.cycle is not None and not valid:
                    failure = "InvalidCycle"
                records.append(
                    Counterexample(tuple(edges), answer.hamiltonian, failure)
                )
        remaining_in_size -= 1
        if remaining_in_size:
            _next_colex(subset)
    return ham, non_ham, agreements, fallbacks, records, tags


def enumerate_threshold_sweep(
    k: int,
    n: int,
    min_edges: int | None = None,
    jobs: int = 1,
) -> EnumerationSummary:
    """Run oracle and solver over every host-edge subset with at least
    min_edges edges (default: the threshold), and summarize.

    The solver runs only on instances at or above the threshold, where it
    owes an answer; disagreements with the oracle are returned as
    counterexamples (the expected count is zero). Raises TooLarge when the
    host has more than HOST_EDGE_CAP edges, since the subset space doubles
    with each extra edge.
    """
    host_count = new_complete(k, n).edge_count
    if host_count > HOST_EDGE_CAP:
        raise TooLarge(
            f"host has {host_count} edges; sweeps are capped at {HOST_EDGE_CAP}"
        )
    if min_edges is None:
        min_edges = edge_threshold(k, n)
    min_edges = max(0, min_edges)
    total = sum(comb(host_count, m) for m in range(min_edges, host_count + 1))
    if jobs < 1:
        raise ValueError("jobs must be at least 1")

    if total == 0:
        chunks: list[tuple[int, int, int, int, int]] = []
    elif jobs == 1:
        chunks = [(k, n, min_edges, 0, total)]
    else:
        step = -(-total // jobs)
        chunks = [
            (k, n, min_edges, lo, min(total, lo + step))
            for lo in range(0, total, step)
        ]

    if jobs == 1 or len(chunks) <= 1:
        parts = [_sweep_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_chunk, chunks))

    ham = non_ham = agreements = fallbacks = 0
    records: list[Counterexample] = []
    tags: dict[str, int] = {}
    for c_ham, c_non, c_agree, c_fall, c_records, c_tags in parts:
        ham += c_ham
        non_ham += c_non
        agreements += c_agree
        fallbacks += c_fall
        records.extend(c_records)
        for tag, count in c_tags.items():
            tags[tag] = tags.get(tag, 0) + count
    return EnumerationSummary(
        k=k,
        n=n,
        min_edges=min_edges,
        total=total,
        hamiltonian=ham,
        non_hamiltonian=non_ham,
        solver_agreements=agreements,
        solver_fallbacks=fallbacks,
        counterexamples=tuple(records),
        branch_tags=tuple(sorted(tags.items())),
    )
