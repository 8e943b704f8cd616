"""Tests for the constructive solver.

The solver pieces each have a narrow contract (close a path, grow a
transversal, stitch a matching); these are exercised directly. solve()
itself is checked against the brute-force oracle on everything small
enough, plus determinism and trace-vocabulary invariants.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from conftest import partite_graphs, perm_hamiltonian
from kpham import (
    HypothesisNotMet,
    InvalidCycle,
    InvalidPath,
    SolveResult,
    StitchFailed,
    TooSmall,
    build_transversal_path,
    build_two_disjoint_transversal_paths,
    canonical_cycle,
    close_hamilton_path,
    edge_threshold,
    from_edge_list,
    is_hamilton_cycle,
    new_complete,
    ore_build_cycle,
    remove_edges,
    solve,
    solve_theorem11,
    stitch_matching,
    tight_non_hamiltonian,
    validate_hamilton_cycle,
)
from kpham.constructive import TRACE_TAGS
from kpham.graph import adjacency_from_edges
from kpham.oracle import is_hamiltonian

# nine edges, min degree 2, yet vertices 0 and 2 both see exactly {4, 5},
# so any cycle would close 0-4-2-5-0 early: genuinely non-hamiltonian
STUBBORN_32_EDGES = [
    (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
    (2, 4), (2, 5), (3, 4), (3, 5),
]


class TestSerialize:
    def test_cycle_with_trace(self):
        r = SolveResult((0, 2, 1, 3), ("BaseK2", "LemmaClosure"), None)
        assert r.serialize() == "cycle 0 2 1 3\ntrace BaseK2,LemmaClosure\n"

    def test_failure_with_empty_trace(self):
        r = SolveResult(None, (), "HypothesisNotMet")
        assert r.serialize() == "none HypothesisNotMet\ntrace\n"


class TestClosePath:
    def test_adjacent_ends(self):
        g = new_complete(2, 2)
        cyc = close_hamilton_path(g.adj, [0, 2, 1, 3])
        assert cyc == (0, 2, 1, 3)

    def test_crossing_pair_rescue(self):
        # path 0-1-2-3-4-5 with chords making each end degree 3: ends stay
        # nonadjacent, so only the crossing pair at 0~2, 5~1 can close it
        rows = adjacency_from_edges(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2), (0, 3), (1, 5), (2, 5)],
        )
        cyc = close_hamilton_path(rows, [0, 1, 2, 3, 4, 5])
        validate_hamilton_cycle(rows, cyc)

    def test_low_degree_sum_refused(self):
        rows = adjacency_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(HypothesisNotMet, match="degree sum"):
            close_hamilton_path(rows, [0, 1, 2, 3])

    def test_not_a_hamilton_path(self):
        g = new_complete(2, 2)
        with pytest.raises(InvalidPath):
            close_hamilton_path(g.adj, [0, 2, 1])

    def test_seeded_batch(self):
        # random Ore-ish hosts: take a random hamilton path of a dense
        # graph and ask for the closure
        rng = random.Random(99)
        for _ in range(100):
            nv = rng.randrange(4, 11)
            perm = list(range(nv))
            rng.shuffle(perm)
            edges = {tuple(sorted(p)) for p in zip(perm, perm[1:])}
            want = nv * (nv - 1) * 2 // 5
            while len(edges) < want:
                u, v = rng.sample(range(nv), 2)
                edges.add((min(u, v), max(u, v)))
            rows = adjacency_from_edges(nv, edges)
            degs = [r.bit_count() for r in rows]
            if degs[perm[0]] + degs[perm[-1]] < nv:
                continue
            cyc = close_hamilton_path(rows, perm)
            validate_hamilton_cycle(rows, cyc)


class TestOreRotation:
    def test_complete(self):
        g = new_complete(3, 1)
        assert ore_build_cycle(g.adj) == (0, 1, 2)

    def test_witness_failure(self):
        rows = adjacency_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(HypothesisNotMet, match=r"\(0, 2\)"):
            ore_build_cycle(rows)

    def test_dense_random_graphs(self):
        rng = random.Random(7)
        built = 0
        while built < 60:
            nv = rng.randrange(4, 13)
            pairs = [(u, v) for u in range(nv) for v in range(u + 1, nv)]
            keep = rng.sample(pairs, int(len(pairs) * 0.8))
            rows = adjacency_from_edges(nv, keep)
            degs = [r.bit_count() for r in rows]
            if any(
                degs[u] + degs[v] < nv
                for u in range(nv)
                for v in range(u + 1, nv)
                if not rows[u] >> v & 1
            ):
                continue
            cyc = ore_build_cycle(rows)
            validate_hamilton_cycle(rows, cyc)
            built += 1


class TestTransversalPath:
    def test_shape_on_complete(self):
        g = new_complete(4, 2)
        path = build_transversal_path(g, anchor=2, forbidden=0)
        assert len(path) == 4
        assert path[1] == 2
        assert 0 not in path
        assert sorted(v // 2 for v in path) == [0, 1, 2, 3]
        for a, b in zip(path, path[1:]):
            assert g.adjacent(a, b)

    def test_leads_into_forbidden_part_when_possible(self):
        g = new_complete(3, 2)
        path = build_transversal_path(g, anchor=2, forbidden=0)
        # anchor 2 sees part 0, so the path starts there with vertex 1
        assert path[0] == 1

    def test_finishes_in_forbidden_part_otherwise(self):
        # anchor 2 loses all of part 0 but still sees parts 2 and 3, so the
        # walk must end inside part 0 at the non-forbidden vertex
        g, _ = remove_edges(new_complete(4, 2), [(0, 2), (1, 2)])
        path = build_transversal_path(g, anchor=2, forbidden=0)
        assert path[-1] == 1
        assert path[1] == 2

    def test_same_part_rejected(self):
        g = new_complete(3, 2)
        with pytest.raises(HypothesisNotMet, match="share a part"):
            build_transversal_path(g, anchor=2, forbidden=3)

    def test_single_part_neighborhood_rejected(self):
        g, _ = remove_edges(new_complete(3, 2), [(2, 4), (2, 5)])
        with pytest.raises(HypothesisNotMet, match="fewer than 2 parts"):
            build_transversal_path(g, anchor=2, forbidden=4)


class TestTwoPaths:
    def _concentrated(self):
        # vertex 0's neighborhood squeezed into part 1
        g, _ = remove_edges(new_complete(3, 3), [(0, 6), (0, 7), (0, 8)])
        return g

    def test_shapes(self):
        g = self._concentrated()
        one, two = build_two_disjoint_transversal_paths(g, anchor=0)
        assert one[0] == 0 and two[0] == 0
        assert len(one) == 3 and len(two) == 4
        assert two[-1] // 3 == 0 and two[-1] != 0
        assert set(one) & set(two) == {0}
        for seq in (one, two):
            for a, b in zip(seq, seq[1:]):
                assert g.adjacent(a, b)
        # two vertices of every part used across both paths
        combined = sorted(set(one) | set(two))
        assert len(combined) == 6

    def test_forbidden_end_respected(self):
        g = self._concentrated()
        one, _ = build_two_disjoint_transversal_paths(g, anchor=0, forbidden=6)
        assert one[-1] // 3 == 2
        assert one[-1] != 6

    def test_spread_anchor_rejected(self):
        g = new_complete(3, 2)
        with pytest.raises(HypothesisNotMet, match="several parts"):
            build_two_disjoint_transversal_paths(g, anchor=0)


class TestStitch:
    def test_basic_join(self):
        g = new_complete(3, 2)
        cyc = stitch_matching(g, path=[0, 2, 4], cycle=[1, 3, 5], avoid=0)
        validate_hamilton_cycle(g.adj, cyc)

    def test_rejects_overlap(self):
        g = new_complete(3, 2)
        with pytest.raises(InvalidCycle, match="overlap"):
            stitch_matching(g, [0, 2, 4], [4, 1, 3], avoid=0)

    def test_rejects_partial_cover(self):
        g = new_complete(3, 2)
        with pytest.raises(InvalidCycle, match="cover"):
            stitch_matching(g, [0, 2], [1, 3, 5], avoid=0)

    def test_rejects_fake_cycle_edge(self):
        g, _ = remove_edges(new_complete(3, 2), [(1, 3)])
        with pytest.raises(InvalidCycle, match="missing cycle edge"):
            stitch_matching(g, [0, 2, 4], [1, 3, 5], avoid=0)

    def test_stitch_failed_when_ends_blind(self):
        # the odd cycle (1, 3, 5) offers one matching edge, (1, 3); end 0
        # never reaches 1 (same part) and loses (0, 3), so both
        # orientations die
        g, _ = remove_edges(new_complete(3, 2), [(0, 3)])
        with pytest.raises(StitchFailed, match="path ends 0 and 4"):
            stitch_matching(g, [0, 2, 4], [1, 3, 5], avoid=0)


class TestSolve:
    def test_too_small(self):
        r = solve(new_complete(2, 1))
        assert r.cycle is None and r.failure == "TooSmall"

    def test_below_threshold_refused_without_search(self):
        g = tight_non_hamiltonian(3, 2)
        r = solve(g)
        assert r.cycle is None
        assert r.failure == "HypothesisNotMet"
        assert r.trace == ()

    @pytest.mark.parametrize(
        ("k", "n"), [(2, 2), (2, 5), (3, 1), (3, 3), (4, 2), (5, 1), (4, 3), (6, 2)]
    )
    def test_complete_hosts(self, k, n):
        g = new_complete(k, n)
        r = solve(g)
        assert r.failure is None
        validate_hamilton_cycle(g.adj, r.cycle)
        assert r.cycle == canonical_cycle(r.cycle)

    def test_deterministic(self):
        g, _ = remove_edges(new_complete(4, 3), [(0, 3), (1, 4), (2, 11), (5, 9)])
        first = solve(g)
        assert all(solve(g).serialize() == first.serialize() for _ in range(5))

    def test_trace_vocabulary(self):
        g, _ = remove_edges(new_complete(4, 3), [(0, 3), (0, 4), (0, 5), (1, 6)])
        r = solve(g)
        assert r.failure is None
        assert r.trace, "constructive run must record at least one branch"
        assert set(r.trace) <= TRACE_TAGS

    @settings(max_examples=120, deadline=None)
    @given(partite_graphs(max_k=4, max_n=3))
    def test_agrees_with_small_oracle(self, g):
        if (g.k, g.n) == (2, 1):
            return
        r = solve(g)
        if g.edge_count < edge_threshold(g.k, g.n):
            assert r.failure == "HypothesisNotMet"
            return
        assert r.cycle is not None, "threshold instance must be solved"
        validate_hamilton_cycle(g.adj, r.cycle)
        if g.num_vertices <= 8:
            assert perm_hamiltonian(g.adj)

    def test_star_damage_batch(self):
        # knock a near-budget star out of one vertex, plus scattered edges
        rng = random.Random(4242)
        for _ in range(80):
            k = rng.randrange(3, 5)
            n = rng.randrange(2, 4)
            g = new_complete(k, n)
            budget = (k - 1) * n - 2
            victim = rng.randrange(k * n)
            others = [v for v in range(k * n) if v // n != victim // n]
            rng.shuffle(others)
            drops = [(victim, w) for w in others[: budget - 1]]
            g, _ = remove_edges(g, drops)
            r = solve(g)
            assert r.failure is None
            validate_hamilton_cycle(g.adj, r.cycle)


class TestSolveTheorem11:
    def test_at_threshold_delegates(self):
        g, _ = remove_edges(new_complete(3, 2), [(0, 2), (1, 4)])
        assert solve_theorem11(g).serialize() == solve(g).serialize()

    def test_one_short_with_good_degrees(self):
        g = from_edge_list(3, 2, STUBBORN_32_EDGES)
        # swap one edge to make a hamiltonian 9-edge sibling
        g2, _ = remove_edges(new_complete(3, 2), [(0, 2), (0, 3), (1, 4)])
        r = solve_theorem11(g2)
        assert r.failure is None
        validate_hamilton_cycle(g2.adj, r.cycle)
        assert r.trace[0] == "T11AddEdge"

    def test_min_degree_one_refused(self):
        g = tight_non_hamiltonian(3, 2)
        r = solve_theorem11(g)
        assert r.failure == "HypothesisNotMet" and r.trace == ()

    def test_two_short_refused(self):
        g, _ = remove_edges(
            new_complete(3, 2), [(0, 2), (0, 3), (1, 2), (1, 3)]
        )
        assert solve_theorem11(g).failure == "HypothesisNotMet"

    def test_stubborn_instance_decided_negative(self):
        g = from_edge_list(3, 2, STUBBORN_32_EDGES)
        assert not is_hamiltonian(g).hamiltonian
        r = solve_theorem11(g)
        assert r.cycle is None
        assert r.failure == "NotHamiltonian"
        assert r.trace[0] == "T11AddEdge"
        assert r.trace[-1] == "SearchFallback"

    def test_too_small(self):
        assert solve_theorem11(new_complete(2, 1)).failure == "TooSmall"

    def test_all_one_short_min_degree_two_agree_with_oracle(self):
        # every 9-edge (3, 2) instance with min degree 2: the solver's
        # verdict must match brute force exactly, both ways
        from itertools import combinations

        host = new_complete(3, 2)
        hedges = host.edges()
        checked = negatives = 0
        for drop in combinations(hedges, 3):
            g, _ = remove_edges(host, drop)
            if min(g.degree(v) for v in range(6)) < 2:
                continue
            truth = is_hamiltonian(g).hamiltonian
            r = solve_theorem11(g)
            assert (r.cycle is not None) == truth
            if r.cycle is not None:
                validate_hamilton_cycle(g.adj, r.cycle)
            else:
                negatives += 1
            checked += 1
        assert checked == 196
        assert negatives == 12
