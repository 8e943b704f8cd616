"""Sharpness witnesses and random edge-fault trials.

tight_non_hamiltonian() builds the extremal graph sitting one edge below
the threshold: strip every host edge at vertex 0 except one, leaving a
degree-1 vertex, so no cycle exists despite the near-maximal edge count.

fault_tolerance_trial() deletes edges from the complete host — randomly or
exhaustively — and reports how many instances stay Hamiltonian. Within the
deletion budget (k-1)n - 2 the edge count stays at or above the threshold,
so the solver answers and the oracle cross-checks it; past the budget only
the oracle can decide, and the caller must opt in explicitly.

Randomness: trial i draws from random.Random(seed + i), Python's mt19937
generator, so any trial range is reproducible independently of worker
count or execution order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb

from .conditions import edge_threshold
from .constructive import SEARCH_FALLBACK, solve
from .errors import BudgetExceeded, TooLarge, TooSmall
from .graph import KPartiteGraph, from_edge_list, new_complete, remove_edges
from .oracle import ORACLE_VERTEX_CAP, is_hamiltonian
from .paths import is_hamilton_cycle

RNG_NAME = "mt19937"
_EXHAUSTIVE_CAP = 200_000


def tight_non_hamiltonian(k: int, n: int) -> KPartiteGraph:
    """The extremal instance one edge below the threshold.

    All host edges at vertex 0 are removed except the lowest, so vertex 0
    has degree 1 and the graph cannot be Hamiltonian, yet every other
    adjacency is complete. Rejects the 2-part, size-1 host, whose single
    edge leaves nothing to strip.
    """
    if (k, n) == (2, 1):
        raise TooSmall("the 2-part, size-1 host is a single edge; no tight instance")
    g = new_complete(k, n)
    doomed = [(0, w) for w in range(n + 1, k * n)]
    stripped, removed = remove_edges(g, doomed)
    assert removed == len(doomed)
    return stripped


def random_graph_at_edge_count(
    k: int, n: int, m: int, rng: random.Random
) -> KPartiteGraph:
    """Uniformly random m-edge subgraph of the complete host."""
    host = new_complete(k, n).edges()
    if not 0 <= m <= len(host):
        raise ValueError(f"edge count {m} outside 0..{len(host)}")
    return from_edge_list(k, n, rng.sample(host, m))


@dataclass(frozen=True)
class FaultReport:
    k: int
    n: int
    deletions: int
    budget: int
    mode: str  # "random" or "exhaustive"
    seed: int | None
    rng: str
    trials: int
    survived: int
    failed: int
    fallbacks: int
    disagreements: int
    failures: tuple[tuple[tuple[int, int], ...], ...]


def _decide_instance(
    g: KPartiteGraph, threshold: int, oracle_cap: int, cross_check: bool
) -> tuple[bool, bool, bool]:
    """Return (hamiltonian, used_fallback, disagreement) for one instance."""
    if g.edge_count >= threshold:
        result = solve(g)
        fallback = SEARCH_FALLBACK in result.trace
        alive = result.cycle is not None and is_hamilton_cycle(g.adj, result.cycle)
        if cross_check and g.num_vertices <= oracle_cap:
            truth = is_hamiltonian(g, max_vertices=oracle_cap).hamiltonian
            return alive, fallback, alive != truth
        return alive, fallback, False
    if g.num_vertices > oracle_cap:
        raise TooLarge(
            "below-threshold instances need the oracle, and"
            f" {g.num_vertices} vertices exceeds its cap of {oracle_cap}"
        )
    return is_hamiltonian(g, max_vertices=oracle_cap).hamiltonian, False, False


def _fault_chunk(
    args: tuple[int, int, int, int | None, int, int, bool, int, bool],
) -> tuple[int, int, int, int, list[tuple[tuple[int, int], ...]]]:
    k, n, deletions, seed, lo, hi, exhaustive, oracle_cap, cross_check = args
    host = new_complete(k, n).edges()
    threshold = edge_threshold(k, n)
    survived = failed = fallbacks = disagreements = 0
    failures: list[tuple[tuple[int, int], ...]] = []
    if exhaustive:
        picks = islice(combinations(host, deletions), lo, hi)
    else:
        assert seed is not None
        picks = (
            tuple(sorted(random.Random(seed + i).sample(host, deletions)))
            for i in range(lo, hi)
        )
    base = new_complete(k, n)
    for dropped in picks:
        g, _ = remove_edges(base, dropped)
        alive, fallback, mismatch = _decide_instance(
            g, threshold, oracle_cap, cross_check
        )
        if alive:
            survived += 1
        else:
            failed += 1
            failures.append(tuple(dropped))
        fallbacks += fallback
        disagreements += mismatch
    return survived, failed, fallbacks, disagreements, failures


def fault_tolerance_trial(
    k: int,
    n: int,
    deletions: int,
    trials: int = 100,
    seed: int | None = None,
    exhaustive: bool = False,
    allow_over_budget: bool = False,
    oracle_cap: int = ORACLE_VERTEX_CAP,
    jobs: int = 1,
    cross_check: bool = True,
) -> FaultReport:
    """Delete edges from the complete host and count Hamiltonian survivors.

    The deletion budget (k-1)n - 2 is the most the threshold can absorb;
    beyond it the verdict can genuinely be negative, so over-budget runs
    require allow_over_budget=True (and a host small enough for the
    oracle). Random mode runs `trials` draws seeded per trial; exhaustive
    mode visits every deletion set in ascending order and ignores `trials`
    and `seed`.
    """
    if deletions < 0:
        raise ValueError("deletions must be nonnegative")
    budget = (k - 1) * n - 2
    if deletions > budget and not allow_over_budget:
        raise BudgetExceeded(
            f"{deletions} deletions exceeds the budget of {budget}"
            f" for k={k}, n={n}"
        )
    host_count = new_complete(k, n).edge_count
    if deletions > host_count:
        raise ValueError(f"cannot delete {deletions} of {host_count} edges")
    if exhaustive:
        total = comb(host_count, deletions)
        if total > _EXHAUSTIVE_CAP:
            raise TooLarge(
                f"{total} deletion sets; exhaustive mode is capped"
                f" at {_EXHAUSTIVE_CAP}"
            )
        seed = None
    else:
        if seed is None:
            raise ValueError("random mode requires a seed")
        if trials < 1:
            raise ValueError("trials must be at least 1")
        total = trials
    if jobs < 1:
        raise ValueError("jobs must be at least 1")

    if jobs == 1 or total <= 1:
        chunks = [(k, n, deletions, seed, 0, total, exhaustive, oracle_cap, cross_check)]
        parts = [_fault_chunk(chunks[0])]
    else:
        step = -(-total // jobs)
        chunks = [
            (k, n, deletions, seed, lo, min(total, lo + step), exhaustive,
             oracle_cap, cross_check)
            for lo in range(0, total, step)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_fault_chunk, chunks))

    survived = failed = fallbacks = disagreements = 0
    failures: list[tuple[tuple[int, int], ...]] = []
    for c_surv, c_fail, c_fall, c_dis, c_failures in parts:
        survived += c_surv
        failed += c_fail
        fallbacks += c_fall
        disagreements += c_dis
        failures.extend(c_failures)
    return FaultReport(
        k=k,
        n=n,
        deletions=deletions,
        budget=budget,
        mode="exhaustive" if exhaustive else "random",
        seed=seed,
        rng=RNG_NAME,
        trials=total,
        survived=survived,
        failed=failed,
        fallbacks=fallbacks,
        disagreements=disagreements,
        failures=tuple(failures),
    )
