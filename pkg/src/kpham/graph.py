"""Balanced k-partite graphs with dense bitmask adjacency.

Vertices are the integers 0..k*n-1 and part membership is positional:
vertex v belongs to part v // n, so each part occupies a contiguous id
block. Only cross-part edges are representable. Graphs are immutable
values; every "mutation" returns a fresh copy, and equality is adjacency
equality, so edge insertion order is never observable.

The adjacency matrix is stored as one Python int per vertex (bit j set
iff j is a neighbor), which keeps all hot operations word-parallel at
desk scale. MAX_VERTICES caps k*n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Iterator

from .errors import InvalidGraph, TooLarge

MAX_VERTICES = 64

# Sentinel for the minimum cross-part degree sum over nonadjacent pairs when
# no such pair exists (complete multipartite). math.inf compares correctly
# against every finite bound.
SIGMA_INFINITY = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def part_masks(k: int, n: int) -> tuple[int, ...]:
    """Bitmask of each part's contiguous vertex block."""
    block = (1 << n) - 1
    return tuple(block << (i * n) for i in range(k))


@dataclass(frozen=True)
class GraphStats:
    """Degree-level summary used by all sufficient-condition checks.

    sigma is the minimum of degree(u) + degree(v) over nonadjacent pairs
    in distinct parts, or SIGMA_INFINITY when the graph is complete
    multipartite and no such pair exists.
    """

    edge_count: int
    min_degree: int
    sigma: int | float


@dataclass(frozen=True)
class KPartiteGraph:
    """Immutable n-balanced k-partite graph.

    adj[v] is the neighbor bitmask of vertex v. The constructor validates
    the whole contract (symmetry, no loops, no intra-part edges), so any
    held instance is structurally sound.
    """

    k: int
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InvalidGraph(f"need at least 2 parts, got k={self.k}")
        if self.n < 1:
            raise InvalidGraph(f"need at least 1 vertex per part, got n={self.n}")
        count = self.k * self.n
        if count > MAX_VERTICES:
            raise TooLarge(f"k*n={count} exceeds the bit-matrix cap {MAX_VERTICES}")
        if len(self.adj) != count:
            raise InvalidGraph(f"adjacency has {len(self.adj)} rows, expected {count}")
        full = (1 << count) - 1
        blocks = part_masks(self.k, self.n)
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidGraph(f"vertex {v} has neighbors outside 0..{count - 1}")
            if row & (1 << v):
                raise InvalidGraph(f"vertex {v} has a self-loop")
            if row & blocks[v // self.n]:
                raise InvalidGraph(f"vertex {v} has an intra-part neighbor")
            for u in bits(row):
                if not self.adj[u] & (1 << v):
                    raise InvalidGraph(f"asymmetric adjacency between {u} and {v}")

    # ---- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.k * self.n

    def part_of(self, v: int) -> int:
        return v // self.n

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v, ascending."""
        out = []
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def host_edge_count(self) -> int:
        """Edge count of the complete version on the same parts."""
        return comb(self.k, 2) * self.n * self.n


# ---- constructors and derived graphs ------------------------------------


def new_complete(k: int, n: int) -> KPartiteGraph:
    """The complete n-balanced k-partite graph: every cross-part pair joined."""
    if k * n > MAX_VERTICES:
        raise TooLarge(f"k*n={k * n} exceeds the bit-matrix cap {MAX_VERTICES}")
    blocks = part_masks(k, n)
    full = (1 << (k * n)) - 1
    adj = tuple(full ^ blocks[v // n] for v in range(k * n))
    return KPartiteGraph(k, n, adj)


def from_edge_list(k: int, n: int, edges: Iterable[tuple[int, int]]) -> KPartiteGraph:
    """Build a graph from (u, v) pairs.

    Duplicates are collapsed. Rejects loops, out-of-range ids, and
    intra-part pairs, naming the offending edge.
    """
    count = k * n
    if count > MAX_VERTICES:
        raise TooLarge(f"k*n={count} exceeds the bit-matrix cap {MAX_VERTICES}")
    rows = [0] * count
    for u, v in edges:
        if not (0 <= u < count and 0 <= v < count):
            raise InvalidGraph(f"edge ({u}, {v}) out of range for {count} vertices")
        if u == v:
            raise InvalidGraph(f"edge ({u}, {v}) is a self-loop")
        if u // n == v // n:
            raise InvalidGraph(f"edge ({u}, {v}) joins two part-{u // n} vertices")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return KPartiteGraph(k, n, tuple(rows))


def complement(g: KPartiteGraph) -> KPartiteGraph:
    """Complement within the complete multipartite host on the same parts."""
    blocks = part_masks(g.k, g.n)
    full = (1 << g.num_vertices) - 1
    adj = tuple((full ^ blocks[v // g.n] ^ g.adj[v]) for v in range(g.num_vertices))
    return KPartiteGraph(g.k, g.n, adj)


def add_edge(g: KPartiteGraph, u: int, v: int) -> KPartiteGraph:
    """Copy of g with the cross-part edge (u, v) added (idempotent)."""
    count = g.num_vertices
    if not (0 <= u < count and 0 <= v < count) or u == v:
        raise InvalidGraph(f"cannot add edge ({u}, {v})")
    if g.part_of(u) == g.part_of(v):
        raise InvalidGraph(f"edge ({u}, {v}) would join two part-{g.part_of(u)} vertices")
    if g.adjacent(u, v):
        return g
    rows = list(g.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return KPartiteGraph(g.k, g.n, tuple(rows))


def remove_edges(
    g: KPartiteGraph, edges: Iterable[tuple[int, int]]
) -> tuple[KPartiteGraph, int]:
    """Copy of g with the listed edges removed.

    Absent edges are ignored; the second return value is the number of
    edges actually removed.
    """
    rows = list(g.adj)
    removed = 0
    for u, v in edges:
        if 0 <= u < g.num_vertices and 0 <= v < g.num_vertices and rows[u] & (1 << v):
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            removed += 1
    return KPartiteGraph(g.k, g.n, tuple(rows)), removed


def stats(g: KPartiteGraph) -> GraphStats:
    """Edge count, minimum degree, and the nonadjacent cross-part degree-sum
    minimum (SIGMA_INFINITY when the graph is complete multipartite)."""
    degs = [row.bit_count() for row in g.adj]
    sigma: int | float = SIGMA_INFINITY
    count = g.num_vertices
    for u in range(count):
        # Nonadjacent cross-part partners above u: everything except u's own
        # part block, u's neighbors, and ids <= u.
        others = ((1 << count) - 1) ^ part_masks(g.k, g.n)[u // g.n] ^ g.adj[u]
        others &= ~((1 << (u + 1)) - 1)
        for v in bits(others):
            pair = degs[u] + degs[v]
            if pair < sigma:
                sigma = pair
    return GraphStats(
        edge_count=sum(degs) // 2,
        min_degree=min(degs) if degs else 0,
        sigma=sigma,
    )


# ---- general simple-graph helpers ----------------------------------------
#
# Several routines (degree-sum checkers, the oracle, path closure) operate on
# arbitrary simple graphs, not just k-partite ones. They take a plain tuple of
# neighbor bitmasks; KPartiteGraph.adj satisfies the same shape.


def adjacency_from_edges(num_vertices: int, edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Neighbor bitmasks for a general simple graph on 0..num_vertices-1."""
    rows = [0] * num_vertices
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
            raise InvalidGraph(f"edge ({u}, {v}) invalid for {num_vertices} vertices")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return tuple(rows)


def edge_count_of(adj: tuple[int, ...]) -> int:
    return sum(row.bit_count() for row in adj) // 2
