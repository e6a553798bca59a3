import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcorr.graph import (
    UndirectedGraph,
    erdos_renyi,
    is_perfect_ordering,
    max_cardinality_search,
    orient_chordal,
    triangulate,
)


def _random_graph(p, d, seed):
    return erdos_renyi(p, d, seed)


def _is_chordal_bruteforce(g):
    # Independent oracle: a graph is chordal iff it has no induced cycle
    # of length >= 4.  Feasible for small p by enumerating vertex subsets.
    verts = range(1, g.p + 1)
    for size in range(4, g.p + 1):
        for subset in itertools.combinations(verts, size):
            inside = set(subset)
            deg = {v: sum(1 for w in g.neighbors(v) if w in inside) for v in subset}
            edge_count = sum(deg.values()) // 2
            if edge_count != size or any(d != 2 for d in deg.values()):
                continue
            # 2-regular induced subgraph with |V| = |E|: a cycle iff connected.
            seen = {subset[0]}
            frontier = [subset[0]]
            while frontier:
                v = frontier.pop()
                for w in g.neighbors(v):
                    if w in inside and w not in seen:
                        seen.add(w)
                        frontier.append(w)
            if len(seen) == size:
                return False
    return True


class TestUndirectedGraph:
    def test_basic_construction(self):
        g = UndirectedGraph(3, [(1, 2), (3, 2)])
        assert g.p == 3
        assert g.edges == {(1, 2), (2, 3)}
        assert g.edge_count == 2
        assert g.has_edge(2, 1)
        assert not g.has_edge(1, 3)
        assert g.neighbors(2) == frozenset({1, 3})

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            UndirectedGraph(3, [(2, 2)])

    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(ValueError):
            UndirectedGraph(3, [(1, 4)])
        with pytest.raises(ValueError):
            UndirectedGraph(3, [(0, 1)])

    def test_rejects_nonpositive_p(self):
        with pytest.raises(ValueError):
            UndirectedGraph(0, [])

    def test_equality_ignores_edge_orientation(self):
        a = UndirectedGraph(3, [(1, 2)])
        b = UndirectedGraph(3, [(2, 1)])
        assert a == b
        assert hash(a) == hash(b)

    def test_adjacency_matrix(self):
        g = UndirectedGraph.chain(3)
        adj = g.adjacency_matrix()
        expected = np.array(
            [[False, True, False], [True, False, True], [False, True, False]]
        )
        np.testing.assert_array_equal(adj, expected)

    def test_chain_and_complete_factories(self):
        assert UndirectedGraph.chain(4).edges == {(1, 2), (2, 3), (3, 4)}
        assert UndirectedGraph.complete(4).edge_count == 6
        assert UndirectedGraph.chain(1).edges == set()

    def test_nonadjacent_pairs(self):
        g = UndirectedGraph.chain(3)
        assert g.nonadjacent_pairs() == [(1, 3)]

    def test_sorted_edges_lexicographic(self):
        g = UndirectedGraph(4, [(3, 4), (1, 4), (1, 2)])
        assert g.sorted_edges() == [(1, 2), (1, 4), (3, 4)]


class TestErdosRenyi:
    def test_zero_probability_gives_empty_graph(self):
        g = erdos_renyi(5, 0.0, seed=1)
        assert g.p == 5
        assert g.edges == set()

    def test_unit_probability_gives_complete_graph(self):
        g = erdos_renyi(4, 1.0, seed=1)
        assert g.edge_count == 6

    def test_reproducible(self):
        a = erdos_renyi(20, 0.3, seed=42)
        b = erdos_renyi(20, 0.3, seed=42)
        assert a == b

    def test_seed_changes_graph(self):
        a = erdos_renyi(20, 0.3, seed=1)
        b = erdos_renyi(20, 0.3, seed=2)
        assert a != b

    def test_invalid_probability(self):
        with pytest.raises(ValueError):
            erdos_renyi(5, -0.1, seed=0)
        with pytest.raises(ValueError):
            erdos_renyi(5, 1.5, seed=0)

    def test_edge_count_in_binomial_bulk(self):
        # Binomial(1225, 0.05) has mean 61.25, sd 7.63; [25, 105] holds
        # all but ~1e-7 of the mass, so 20 seeds stay inside comfortably.
        for seed in range(20):
            g = erdos_renyi(50, 0.05, seed=seed)
            assert 25 <= g.edge_count <= 105


class TestMaxCardinalitySearch:
    def test_chain_is_chordal(self):
        order, perfect = max_cardinality_search(UndirectedGraph.chain(3))
        assert perfect
        assert sorted(order) == [1, 2, 3]

    def test_four_cycle_is_not_chordal(self):
        g = UndirectedGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        _, perfect = max_cardinality_search(g)
        assert not perfect

    def test_complete_graph_is_chordal(self):
        for p in (1, 2, 5):
            _, perfect = max_cardinality_search(UndirectedGraph.complete(p))
            assert perfect

    def test_smallest_label_tie_break(self):
        # Edgeless graph: every step ties, so the visit order is 1..p.
        g = UndirectedGraph(5, [])
        order, perfect = max_cardinality_search(g)
        assert order == (1, 2, 3, 4, 5)
        assert perfect

    def test_agrees_with_bruteforce_chordality(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            p = int(rng.integers(2, 9))
            d = float(rng.random())
            g = _random_graph(p, d, int(rng.integers(0, 2**31)))
            _, perfect = max_cardinality_search(g)
            assert perfect == _is_chordal_bruteforce(g)


class TestIsPerfectOrdering:
    def test_chain_natural_order(self):
        assert is_perfect_ordering(UndirectedGraph.chain(3), (1, 2, 3))

    def test_four_cycle_has_no_perfect_ordering(self):
        g = UndirectedGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        for perm in itertools.permutations((1, 2, 3, 4)):
            assert not is_perfect_ordering(g, perm)

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            is_perfect_ordering(UndirectedGraph.chain(3), (1, 1, 2))


class TestTriangulate:
    def test_chordal_input_unchanged(self):
        g = UndirectedGraph.chain(3)
        gp, order = triangulate(g)
        assert gp == g
        assert is_perfect_ordering(gp, order)

    def test_four_cycle_gets_one_diagonal(self):
        g = UndirectedGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        gp, order = triangulate(g)
        fill = gp.edges - g.edges
        # One chord is necessary (C4 is not chordal) and sufficient.
        assert len(fill) == 1
        assert fill <= {(1, 3), (2, 4)}
        assert is_perfect_ordering(gp, order)

    def test_complete_graph_unchanged(self):
        g = UndirectedGraph.complete(5)
        gp, _ = triangulate(g)
        assert gp == g

    @settings(max_examples=40, deadline=None)
    @given(
        p=st.integers(min_value=1, max_value=12),
        d=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_output_is_chordal_supergraph(self, p, d, seed):
        g = _random_graph(p, d, seed)
        gp, order = triangulate(g)
        assert g.edges <= gp.edges
        assert is_perfect_ordering(gp, order)
        _, perfect = max_cardinality_search(gp)
        assert perfect


class TestOrientChordal:
    def test_chain(self):
        g = UndirectedGraph.chain(3)
        o = orient_chordal(g, (1, 2, 3))
        assert o.parents[1] == frozenset()
        assert o.parents[2] == frozenset({1})
        assert o.parents[3] == frozenset({2})
        assert o.children[1] == frozenset({2})
        assert o.children[2] == frozenset({3})
        assert o.children[3] == frozenset()

    def test_single_vertex(self):
        g = UndirectedGraph(1, [])
        o = orient_chordal(g, (1,))
        assert o.parents[1] == frozenset()
        assert o.children[1] == frozenset()

    def test_star(self):
        g = UndirectedGraph(4, [(1, 2), (1, 3), (1, 4)])
        o = orient_chordal(g, (1, 2, 3, 4))
        assert o.children[1] == frozenset({2, 3, 4})
        for leaf in (2, 3, 4):
            assert o.parents[leaf] == frozenset({1})

    def test_rejects_imperfect_order(self):
        g = UndirectedGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        with pytest.raises(ValueError):
            orient_chordal(g, (1, 2, 3, 4))

    def test_edge_count_identity_and_no_v_structures(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            p = int(rng.integers(1, 15))
            g = _random_graph(p, float(rng.random()), int(rng.integers(0, 2**31)))
            gp, order = triangulate(g)
            o = orient_chordal(gp, order)
            assert sum(len(o.parents[v]) for v in range(1, p + 1)) == gp.edge_count
            assert sum(len(o.children[v]) for v in range(1, p + 1)) == gp.edge_count
            pos = {v: k for k, v in enumerate(order)}
            for v in range(1, p + 1):
                for a in o.parents[v]:
                    assert pos[a] < pos[v]
                    for b in o.parents[v]:
                        if a < b:
                            assert gp.has_edge(a, b)
