import math
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import connected_graphs
from oracles import all_pairs, max_pairs_two_colors, min_colors
from rainbowkit.exact_solver import (
    SolverLimitError,
    UnsatisfiablePairError,
    canonical_colorings,
    decide_rc,
    decide_subset_rc,
    max_edges_limit,
    maxpairs2_exact,
    rc_directed_exact,
    rc_exact,
    src_exact,
    subset_rc_exact,
)
from rainbowkit.graph_core import (
    Graph,
    GraphError,
    PairSet,
    complete_graph,
    cycle_graph,
    diameter,
    path_graph,
    star_graph,
)
from rainbowkit.rainbow_check import ColorCapError, count_rainbow_pairs, verify_pairs


def stirling2(m, k):
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** m for j in range(k + 1)) // math.factorial(k)


def chain_with_chord(n):
    arcs = tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),)
    return Graph(n, arcs, directed=True)


class TestCanonicalEnumeration:
    @pytest.mark.parametrize("m, k", [(1, 1), (3, 2), (4, 3), (5, 3), (6, 4)])
    def test_counts_match_partitions(self, m, k):
        got = list(canonical_colorings(m, k))
        assert len(got) == len(set(got)) == sum(stirling2(m, j) for j in range(1, k + 1))
        exact = list(canonical_colorings(m, k, exact=True))
        assert len(exact) == stirling2(m, k)
        assert all(len(set(c)) == k for c in exact)

    def test_restricted_growth(self):
        for c in canonical_colorings(5, 3):
            assert c[0] == 0
            assert all(c[i] <= max(c[:i]) + 1 for i in range(1, 5))


class TestRc:
    @pytest.mark.parametrize(
        "g, expected",
        [(complete_graph(5), 1), (cycle_graph(6), 3), (path_graph(4), 3), (Graph(1, ()), 1), (path_graph(2), 1)],
    )
    def test_examples(self, g, expected):
        res = rc_exact(g)
        assert res.value == expected
        assert verify_pairs(g, res.witness, PairSet.all_pairs(g.n)).ok

    @pytest.mark.parametrize("n", range(4, 9))
    def test_cycles(self, n):
        assert rc_exact(cycle_graph(n)).value == math.ceil(n / 2)

    def test_rejects_disconnected_and_directed(self):
        with pytest.raises(GraphError):
            rc_exact(Graph(3, ((0, 1),)))
        with pytest.raises(GraphError):
            rc_exact(chain_with_chord(4))


class TestSrc:
    @pytest.mark.parametrize("g, expected", [(star_graph(4), 4), (complete_graph(4), 1), (cycle_graph(6), 3)])
    def test_examples(self, g, expected):
        res = src_exact(g)
        assert res.value == expected
        assert verify_pairs(g, res.witness, PairSet.all_pairs(g.n), "geodesic").ok


class TestDirected:
    @pytest.mark.parametrize("n", range(4, 8))
    def test_chain_with_chord(self, n):
        res = rc_directed_exact(chain_with_chord(n))
        assert res.value == n - 2
        assert verify_pairs(res.witness.graph, res.witness, PairSet.all_pairs(n), "directed").ok

    def test_single_arc(self):
        assert rc_directed_exact(Graph(2, ((0, 1),), directed=True)).value == 1

    def test_directed_four_cycle(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)), directed=True)
        # value pinned by trying every colouring in range(k)^4
        assert min_colors(g, all_pairs(4), "directed") == 2
        assert rc_directed_exact(g).value == 2


class TestSubset:
    def test_star_examples(self):
        g = star_graph(3)
        assert subset_rc_exact(g, PairSet(4, ((1, 2),))).value == 2
        assert subset_rc_exact(g, PairSet(4, ())).value == 1
        leaves = PairSet(4, tuple(combinations(range(1, 4), 2)))
        assert subset_rc_exact(g, leaves, "geodesic").value == 3

    def test_decision_examples(self):
        star = Graph(4, ((3, 0), (3, 1), (3, 2)))
        p = PairSet(4, ((0, 1), (0, 2), (1, 2)))
        assert decide_subset_rc(star, p, 3, "geodesic") is not None
        assert decide_subset_rc(star, p, 2, "geodesic") is None
        assert decide_subset_rc(path_graph(4), PairSet(4, ()), 1) is not None

    def test_disconnected_pair(self):
        with pytest.raises(UnsatisfiablePairError):
            decide_subset_rc(Graph(4, ((0, 1), (2, 3))), PairSet(4, ((0, 3),)), 3)

    def test_colour_cap(self):
        with pytest.raises(ColorCapError):
            decide_subset_rc(path_graph(3), PairSet(3, ((0, 2),)), 25)

    @settings(max_examples=40)
    @given(connected_graphs(min_n=2, max_n=6))
    def test_all_pairs_matches_rc_and_src(self, g):
        p = PairSet.all_pairs(g.n)
        assert subset_rc_exact(g, p, "plain").value == rc_exact(g).value
        assert subset_rc_exact(g, p, "geodesic").value == src_exact(g).value


class TestGuard:
    def test_unpruned_enumeration_refuses_large_graphs(self):
        g = cycle_graph(25)
        with pytest.raises(SolverLimitError):
            decide_rc(g, 13, prune=False)
        with pytest.raises(SolverLimitError):
            decide_rc(cycle_graph(6), 3, max_edges=5)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("RAINBOWKIT_MAX_EDGES", "7")
        assert max_edges_limit() == 7
        with pytest.raises(SolverLimitError):
            rc_exact(cycle_graph(8), prune=False)

    def test_maxpairs2_guard(self):
        with pytest.raises(SolverLimitError):
            maxpairs2_exact(cycle_graph(25))


class TestAgainstBruteForce:
    @settings(max_examples=30)
    @given(connected_graphs(min_n=2, max_n=5))
    def test_rc_and_src(self, g):
        assume(g.m <= 7)
        pairs = all_pairs(g.n)
        assert rc_exact(g).value == min_colors(g, pairs, "plain")
        assert src_exact(g).value == min_colors(g, pairs, "geodesic")

    @settings(max_examples=30)
    @given(connected_graphs(min_n=2, max_n=6), st.data())
    def test_pruned_matches_unpruned(self, g, data):
        assume(g.m <= 9)
        pairs = data.draw(st.lists(st.sampled_from(all_pairs(g.n)), unique=True, max_size=6))
        p = PairSet(g.n, tuple(pairs))
        for mode in ("plain", "geodesic"):
            fast = subset_rc_exact(g, p, mode)
            slow = subset_rc_exact(g, p, mode, prune=False)
            assert fast.value == slow.value
            assert verify_pairs(g, fast.witness, p, mode).ok

    @settings(max_examples=40)
    @given(connected_graphs(min_n=2, max_n=6))
    def test_bounds(self, g):
        rc, src = rc_exact(g).value, src_exact(g).value
        assert diameter(g) <= rc <= src <= max(g.m, 1)
        assert rc <= max(g.n - 1, 1)
        assert (rc == 1) == (g.m == g.n * (g.n - 1) // 2)


class TestMaxPairs2:
    @pytest.mark.parametrize("g, expected", [(complete_graph(3), 3), (path_graph(3), 3), (cycle_graph(5), 9)])
    def test_examples(self, g, expected):
        res = maxpairs2_exact(g)
        assert res.value == expected
        assert count_rainbow_pairs(g, res.witness) == expected

    @settings(max_examples=40)
    @given(connected_graphs(min_n=1, max_n=6))
    def test_against_brute_force(self, g):
        assume(g.m <= 9)
        res = maxpairs2_exact(g)
        assert res.value >= g.m
        assert res.value == max_pairs_two_colors(g)
        assert (res.value == g.n * (g.n - 1) // 2) == (decide_rc(g, 2) is not None)

    def test_small_chunks_agree(self):
        g = cycle_graph(7)
        assert maxpairs2_exact(g, chunk=3).value == maxpairs2_exact(g).value
