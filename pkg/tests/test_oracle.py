from __future__ import annotations

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partite_graphs, perm_hamiltonian
from kpham import (
    TooLarge,
    enumerate_threshold_sweep,
    is_hamiltonian,
    new_complete,
    remove_edges,
    validate_hamilton_cycle,
)
from kpham.graph import adjacency_from_edges
from kpham.oracle import _next_colex, _unrank_colex

PETERSEN = adjacency_from_edges(
    10,
    [
        (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    ],
)


class TestDecision:
    def test_c6_and_broken_c6(self):
        c6 = adjacency_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        ans = is_hamiltonian(c6)
        assert ans.hamiltonian
        validate_hamilton_cycle(c6, ans.cycle)
        broken = adjacency_from_edges(6, [(i, i + 1) for i in range(5)])
        ans = is_hamiltonian(broken)
        assert not ans.hamiltonian and ans.cycle is None

    def test_petersen_not_hamiltonian(self):
        assert not is_hamiltonian(PETERSEN).hamiltonian

    def test_accepts_graph_objects(self):
        g = new_complete(3, 2)
        ans = is_hamiltonian(g)
        assert ans.hamiltonian
        validate_hamilton_cycle(g.adj, ans.cycle)

    def test_methods_agree_and_report_their_name(self):
        g, _ = remove_edges(new_complete(4, 2), [(0, 2), (1, 4), (3, 6)])
        bt = is_hamiltonian(g, method="backtracking")
        dp = is_hamiltonian(g, method="dp")
        assert bt.method == "backtracking" and dp.method == "dp"
        assert bt.hamiltonian == dp.hamiltonian
        validate_hamilton_cycle(g.adj, bt.cycle)
        validate_hamilton_cycle(g.adj, dp.cycle)

    def test_auto_picks_dp_for_larger_instances(self):
        g = new_complete(7, 2)  # 14 vertices
        ans = is_hamiltonian(g)
        assert ans.method == "dp"
        assert ans.hamiltonian

    def test_vertex_cap(self):
        with pytest.raises(TooLarge):
            is_hamiltonian(new_complete(6, 3))
        with pytest.raises(TooLarge):
            is_hamiltonian(new_complete(5, 2), max_vertices=8)

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            is_hamiltonian(new_complete(2, 2), method="montecarlo")

    def test_nodes_expanded_deterministic(self):
        g, _ = remove_edges(new_complete(3, 3), [(0, 3), (0, 4), (1, 6)])
        runs = {is_hamiltonian(g).nodes_expanded for _ in range(4)}
        assert len(runs) == 1
        assert runs.pop() > 0

    @settings(max_examples=120, deadline=None)
    @given(partite_graphs(max_k=3, max_n=3))
    def test_methods_match_permutation_check(self, g):
        if g.num_vertices > 8:
            return
        truth = perm_hamiltonian(g.adj)
        bt = is_hamiltonian(g, method="backtracking")
        dp = is_hamiltonian(g, method="dp")
        assert bt.hamiltonian == truth
        assert dp.hamiltonian == truth

    def test_min_degree_short_circuit(self):
        g, _ = remove_edges(new_complete(3, 2), [(0, 2), (0, 3), (0, 4)])
        ans = is_hamiltonian(g)
        assert not ans.hamiltonian
        assert ans.nodes_expanded == 0

    def test_disconnected_short_circuit(self):
        # two triangles sharing no vertex
        rows = adjacency_from_edges(
            6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        )
        ans = is_hamiltonian(rows)
        assert not ans.hamiltonian
        assert ans.nodes_expanded == 0


class TestColexOrder:
    @pytest.mark.parametrize(("total", "size"), [(6, 3), (7, 2), (8, 4), (5, 5)])
    def test_unrank_against_sorted_combinations(self, total, size):
        expected = sorted(
            combinations(range(total), size), key=lambda c: tuple(reversed(c))
        )
        for rank, combo in enumerate(expected):
            assert tuple(_unrank_colex(rank, size)) == combo

    def test_successor_chains_from_unrank(self):
        size, total = 3, 7
        cur = _unrank_colex(0, size)
        seen = [tuple(cur)]
        for _ in range(comb(total, size) - 1):
            _next_colex(cur)
            seen.append(tuple(cur))
        assert seen == sorted(
            combinations(range(total), size), key=lambda c: tuple(reversed(c))
        )
        assert len(set(seen)) == comb(total, size)


class TestSweep:
    def test_smallest_case(self):
        s = enumerate_threshold_sweep(2, 2)
        assert (s.k, s.n, s.min_edges) == (2, 2, 4)
        assert s.total == 1  # only the complete bipartite host
        assert s.hamiltonian == 1 and s.non_hamiltonian == 0
        assert s.solver_agreements == 1
        assert s.counterexamples == ()

    def test_3_2_at_threshold(self):
        s = enumerate_threshold_sweep(3, 2)
        assert s.total == 79
        assert s.hamiltonian == 79
        assert s.non_hamiltonian == 0
        assert s.solver_agreements == 79
        assert s.solver_fallbacks == 0
        assert s.counterexamples == ()
        tags = dict(s.branch_tags)
        assert tags["BaseN2"] == 79

    def test_3_2_below_threshold(self):
        s = enumerate_threshold_sweep(3, 2, min_edges=9)
        assert s.total == 299
        assert s.hamiltonian == 263
        assert s.non_hamiltonian == 36

    def test_2_3_at_threshold(self):
        s = enumerate_threshold_sweep(2, 3)
        assert s.total == 10
        assert s.hamiltonian == 10
        assert s.solver_agreements == 10

    def test_jobs_do_not_change_the_answer(self):
        serial = enumerate_threshold_sweep(3, 2, min_edges=9, jobs=1)
        parallel = enumerate_threshold_sweep(3, 2, min_edges=9, jobs=3)
        assert serial == parallel

    def test_host_too_wide(self):
        with pytest.raises(TooLarge, match="host"):
            enumerate_threshold_sweep(5, 2)

    def test_min_edges_above_host_is_empty(self):
        s = enumerate_threshold_sweep(2, 2, min_edges=5)
        assert s.total == 0
        assert s.branch_tags == ()

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, comb(9, 4) - 1))
    def test_unrank_matches_iteration_order(self, rank):
        combo = _unrank_colex(rank, 4)
        walk = _unrank_colex(0, 4)
        for _ in range(rank):
            _next_colex(walk)
        assert walk == combo
