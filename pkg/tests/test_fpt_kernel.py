import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import connected_graphs
from oracles import count_pairs
from rainbowkit.exact_solver import maxpairs2_exact
from rainbowkit.fpt_kernel import (
    bfs_layer_coloring,
    clique_coloring,
    clique_coloring_case,
    component_coloring,
    decide_maxpairs2,
    kernelize,
    maximal_clique_from,
)
from rainbowkit.graph_core import Graph, GraphError, complete_graph, cycle_graph, path_graph, star_graph


def clique_plus(size, attachments):
    """K_size on 0..size-1, then extra vertices with the given neighbourhoods (in order)."""
    edges = [(i, j) for i in range(size) for j in range(i + 1, size)]
    n = size
    for nbrs in attachments:
        edges += [(v, n) for v in nbrs]
        n += 1
    return Graph(n, tuple(edges))


def certified(g, coloring):
    return count_pairs(g, coloring.as_dict())


class TestBfsLayerColoring:
    def test_path_from_an_end(self):
        g = path_graph(4)
        assert certified(g, bfs_layer_coloring(g, 0)) >= g.m + 2

    def test_c5(self):
        g = cycle_graph(5)
        assert certified(g, bfs_layer_coloring(g, 0)) >= g.m + 2

    def test_complete_graph_is_vacuous(self):
        g = complete_graph(4)
        assert certified(g, bfs_layer_coloring(g, 1)) == g.m

    @given(connected_graphs(min_n=2, max_n=8), st.data())
    def test_gains_every_far_vertex(self, g, data):
        v = data.draw(st.integers(0, g.n - 1))
        far = g.n - 1 - g.degree(v)
        assert certified(g, bfs_layer_coloring(g, v)) >= g.m + far


class TestComponentColoring:
    def test_independent_neighbourhood(self):
        g = star_graph(4)
        assert certified(g, component_coloring(g, 0)) >= g.m + 3

    def test_centre_of_p3(self):
        g = path_graph(3)
        assert certified(g, component_coloring(g, 1)) >= g.m + 1

    def test_complete_graph_is_vacuous(self):
        g = complete_graph(5)
        assert certified(g, component_coloring(g, 0)) == g.m


class TestCliqueColoring:
    def test_second_layer_case(self):
        g = clique_plus(4, [[3], [4]])  # path 3-4-5 hanging off the clique
        col, case = clique_coloring_case(g, range(4), 2)
        assert case == "L2"
        assert certified(g, col) >= g.m + 2

    def test_many_anti_edges_case(self):
        g = clique_plus(4, [[0, 1]])
        col, case = clique_coloring_case(g, range(4), 2)
        assert case == "anti-edges"
        assert certified(g, col) >= g.m + 2

    def test_greedy_case(self):
        g = clique_plus(5, [[0, 1, 2, 3], [1, 2, 3, 4]])
        col, case = clique_coloring_case(g, range(5), 3)
        assert case == "greedy"
        assert certified(g, col) >= g.m + 3

    def test_recolor_case(self):
        # the clique {0,1,2} is not maximal here; with a maximal clique this branch never fires
        g = clique_plus(3, [[0, 1], [0, 1, 2], [0, 1, 2]])
        col, case = clique_coloring_case(g, range(3), 3)
        assert case == "recolor"
        assert certified(g, col) >= g.m + 3

    def test_preconditions(self):
        g = clique_plus(4, [[0, 1]])
        with pytest.raises(GraphError):
            clique_coloring(g, [0, 2, 4], 2)
        with pytest.raises(GraphError):
            clique_coloring(g, [0, 1], 3)
        with pytest.raises(GraphError):
            clique_coloring(complete_graph(4), range(4), 1)

    def test_maximal_extension(self):
        g = clique_plus(3, [[0, 1], [0, 1, 2], [0, 1, 2]])
        assert maximal_clique_from(g, {0}) == {0, 1, 2, 4}


class TestKernelize:
    def test_complete_graph_is_no(self):
        res = kernelize(complete_graph(4), 1)
        assert res.outcome == "no"

    def test_path_is_yes_by_layers(self):
        g = path_graph(5)
        res = kernelize(g, 2)
        assert res.outcome == "yes" and res.trace.stage == "bfs-layers"
        assert res.certified_count >= g.m + 2

    def test_c5_is_a_kernel(self):
        res = kernelize(cycle_graph(5), 3)
        assert res.outcome == "kernel"
        t = res.trace
        assert t.chosen_v == 0 and t.non_neighbors == {2, 3}
        assert t.isolated_count == 0 and len(t.components) == 1
        assert res.kernel.n <= 12

    @staticmethod
    def _complete_minus(n, missing):
        return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in missing))

    def test_clique_stage(self):
        # N(0) = 1..6; 5 and 6 are isolated in the complement of G[N(0)]
        g = self._complete_minus(7, {(1, 2), (3, 4)})
        res = kernelize(g, 2)
        assert (res.outcome, res.trace.stage) == ("yes", "clique")
        assert res.trace.isolated_count == 2
        assert res.certified_count >= g.m + 2

    def test_component_stage(self):
        g = self._complete_minus(6, {(1, 2), (3, 4)})
        res = kernelize(g, 2)
        assert (res.outcome, res.trace.stage) == ("yes", "components")
        assert res.certified_count >= g.m + 2

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            kernelize(path_graph(3), 0)
        with pytest.raises(GraphError):
            kernelize(Graph(3, ((0, 1),)), 1)

    def test_json_is_one_indexed(self):
        out = kernelize(cycle_graph(5), 3).to_json()
        assert out["trace"]["chosen_v"] == 1
        assert out["trace"]["non_neighbors"] == [3, 4]

    @settings(max_examples=150)
    @given(connected_graphs(min_n=1, max_n=8), st.integers(1, 3))
    def test_cascade_contract(self, g, k):
        assume(g.m <= 18)
        res = kernelize(g, k)
        if res.outcome == "kernel":
            assert res.kernel.n <= 4 * k
        if res.outcome == "yes":
            assert certified(g, res.witness) >= g.m + k
        exact = maxpairs2_exact(g).value
        if res.outcome == "no":
            assert exact < g.m + k
        assert decide_maxpairs2(g, k).answer == (exact >= g.m + k)


class TestDecideMaxPairs2:
    def test_examples(self):
        c5 = cycle_graph(5)
        d = decide_maxpairs2(c5, 3)
        assert d.answer == (maxpairs2_exact(c5).value >= 8)
        assert decide_maxpairs2(path_graph(3), 1).answer
        assert not decide_maxpairs2(complete_graph(5), 1).answer
