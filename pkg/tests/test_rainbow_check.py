import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import colored_digraphs, colored_graphs
from oracles import rainbow_connected
from rainbowkit.graph_core import EdgeColoring, Graph, GraphError, PairSet, complete_graph, cycle_graph, path_graph, star_graph
from rainbowkit.rainbow_check import (
    MAX_COLORS,
    ColorCapError,
    count_rainbow_pairs,
    geodesic_rainbow_exists,
    rainbow_path_exists,
    verify_pairs,
)


def c4(colors):
    g = cycle_graph(4)  # edges (0,1) (0,3) (1,2) (2,3)
    return g, EdgeColoring.from_mapping(g, dict(zip([(0, 1), (1, 2), (2, 3), (0, 3)], colors)), 2)


class TestExamples:
    def test_path_needs_distinct_colours(self):
        g = path_graph(3)
        assert not rainbow_path_exists(g, EdgeColoring(g, (0, 0), 1), 0, 2)
        assert rainbow_path_exists(g, EdgeColoring(g, (0, 1), 2), 0, 2)

    def test_c4_both_routes_repeat(self):
        g, c = c4([0, 0, 1, 1])
        assert not rainbow_path_exists(g, c, 0, 2)

    def test_c4_geodesic(self):
        g, c = c4([0, 1, 0, 1])
        assert geodesic_rainbow_exists(g, c, 0, 2)
        g, c = c4([0, 0, 1, 0])
        assert geodesic_rainbow_exists(g, c, 0, 2)

    def test_star_leaves_with_equal_spokes(self):
        g = star_graph(3)
        c = EdgeColoring(g, (0, 0, 1), 2)
        assert not geodesic_rainbow_exists(g, c, 1, 2)
        assert geodesic_rainbow_exists(g, c, 1, 3)

    def test_k3_one_colour(self):
        g = complete_graph(3)
        rep = verify_pairs(g, EdgeColoring(g, (0, 0, 0), 1), PairSet.all_pairs(3))
        assert rep.ok and rep.count_satisfied == 3

    def test_c5_all_distinct_geodesic(self):
        g = cycle_graph(5)
        rep = verify_pairs(g, EdgeColoring(g, tuple(range(5)), 5), PairSet.all_pairs(5), "geodesic")
        assert rep.count_satisfied == 10

    def test_geodesic_stricter_than_plain(self):
        g = cycle_graph(5)  # edges (0,1) (0,4) (1,2) (2,3) (3,4)
        c = EdgeColoring.from_mapping(g, {(0, 1): 0, (1, 2): 0, (2, 3): 1, (3, 4): 2, (0, 4): 3}, 4)
        # the only geodesic 0-1-2 repeats colour 0; the long way 0-4-3-2 is rainbow
        assert not geodesic_rainbow_exists(g, c, 0, 2)
        assert rainbow_path_exists(g, c, 0, 2)

    def test_report_partitions_request(self):
        g, c = c4([0, 0, 1, 1])
        p = PairSet(4, ((0, 2), (1, 3), (0, 1)))
        rep = verify_pairs(g, c, p)
        assert rep.satisfied.as_set() | rep.unsatisfied.as_set() == p.as_set()
        assert not rep.satisfied.as_set() & rep.unsatisfied.as_set()
        assert rep.unsatisfied.pairs == ((0, 2),)


class TestDirected:
    def test_either_direction_satisfies(self):
        g = Graph(3, ((0, 1), (1, 2)), directed=True)
        c = EdgeColoring(g, (0, 1), 2)
        assert rainbow_path_exists(g, c, 2, 0)
        assert verify_pairs(g, c, PairSet(3, ((2, 0),)), "directed").ok

    def test_arcs_are_one_way(self):
        # 0 -> 1 <- 2 has no directed path between 0 and 2
        g = Graph(3, ((0, 1), (2, 1)), directed=True)
        assert not rainbow_path_exists(g, EdgeColoring(g, (0, 1), 2), 0, 2)


class TestErrors:
    def test_mode_must_match_graph(self):
        g = path_graph(3)
        c = EdgeColoring(g, (0, 1), 2)
        with pytest.raises(GraphError):
            verify_pairs(g, c, PairSet.all_pairs(3), "directed")
        with pytest.raises(ValueError):
            verify_pairs(g, c, PairSet.all_pairs(3), "walk")

    def test_colour_cap(self):
        g = path_graph(3)
        with pytest.raises(ColorCapError):
            rainbow_path_exists(g, EdgeColoring(g, (0, 1), MAX_COLORS + 1), 0, 2)

    def test_foreign_colouring(self):
        with pytest.raises(GraphError):
            rainbow_path_exists(path_graph(3), EdgeColoring(cycle_graph(3), (0, 1, 2), 3), 0, 2)


class TestAgainstPathEnumeration:
    @given(colored_graphs(max_n=7, max_k=4), st.sampled_from(["plain", "geodesic"]))
    def test_undirected(self, gc, mode):
        g, c = gc
        rep = verify_pairs(g, c, PairSet.all_pairs(g.n), mode)
        colors = c.as_dict()
        expected = {p for p in PairSet.all_pairs(g.n) if rainbow_connected(g, colors, *p, mode)}
        assert rep.satisfied.as_set() == expected

    @given(colored_digraphs(max_n=5, max_k=3))
    def test_directed(self, gc):
        g, c = gc
        rep = verify_pairs(g, c, PairSet.all_pairs(g.n), "directed")
        colors = c.as_dict()
        expected = {p for p in PairSet.all_pairs(g.n) if rainbow_connected(g, colors, *p, "directed")}
        assert rep.satisfied.as_set() == expected


class TestProperties:
    @given(colored_graphs(max_k=4), st.randoms(use_true_random=False))
    def test_colour_renaming_invariance(self, gc, rnd):
        g, c = gc
        perm = list(range(c.k))
        rnd.shuffle(perm)
        p = PairSet.all_pairs(g.n)
        for mode in ("plain", "geodesic"):
            assert verify_pairs(g, c, p, mode) == verify_pairs(g, c.permuted(perm), p, mode)

    @given(colored_graphs(max_k=4))
    def test_geodesic_implies_plain_and_edges_always_count(self, gc):
        g, c = gc
        p = PairSet.all_pairs(g.n)
        geo = verify_pairs(g, c, p, "geodesic").satisfied.as_set()
        plain = verify_pairs(g, c, p, "plain").satisfied.as_set()
        assert geo <= plain
        assert set(g.edges) <= geo
        assert count_rainbow_pairs(g, c) >= g.m
