from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, trees
from coreindex import formulas
from coreindex.counting import (
    connected_spanning_count,
    connected_vertex_sets,
    core_index,
    core_index_bruteforce,
    count_containing,
    f_all_vertices,
    f_vector,
    subgraph_core,
    tree_core_index,
)
from coreindex.families import build, complete, cycle, enumerate_all_graphs, path, spec, star
from coreindex.graph import SizeGuardError, disjoint_union, from_edge_list, is_connected


def brute_connected_sets(G):
    out = set()
    for r in range(1, G.n + 1):
        for S in combinations(range(G.n), r):
            mask = sum(1 << v for v in S)
            sub = from_edge_list(G.n, [e for e in G.edges if e[0] in S and e[1] in S])
            seen, stack = {S[0]}, [S[0]]
            while stack:
                x = stack.pop()
                for y in sub.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == r:
                out.add(mask)
    return out


class TestBruteForce:
    def test_examples(self):
        assert core_index_bruteforce(cycle(3)) == 10
        assert core_index_bruteforce(from_edge_list(1, [])) == 1
        assert core_index_bruteforce(complete(4)) == 64

    def test_containing(self):
        assert core_index_bruteforce(path(4), containing=[0, 3]) == 1
        assert core_index_bruteforce(cycle(5), containing=[2]) == 16

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            core_index_bruteforce(path(11))
        assert core_index_bruteforce(path(11), unsafe=True) == 66


class TestSpanning:
    def test_examples(self):
        assert connected_spanning_count(cycle(3)) == 4
        assert connected_spanning_count(path(3)) == 1
        assert connected_spanning_count(from_edge_list(2, [])) == 0

    @pytest.mark.parametrize("n", range(1, 7))
    def test_complete_graph_counts_connected_graphs(self, n):
        assert connected_spanning_count(complete(n)) == formulas.h(n)

    @given(graphs(max_n=6))
    def test_against_edge_subsets(self, G):
        want = 0
        for r in range(G.m + 1):
            for A in combinations(G.edges, r):
                want += is_connected(from_edge_list(G.n, A))
        assert connected_spanning_count(G) == want


class TestCoreIndex:
    def test_examples(self):
        assert core_index(path(4)) == 10
        assert core_index(star(4)) == 11
        assert core_index(disjoint_union(path(3), path(2))) == 9

    def test_empty_graph(self):
        assert core_index(from_edge_list(0, [])) == 0

    @pytest.mark.parametrize("n", range(1, 6))
    def test_every_small_graph(self, n):
        for G in enumerate_all_graphs(n):
            assert core_index(G) == core_index_bruteforce(G)

    @given(graphs(min_n=6, max_n=7))
    def test_random_graphs(self, G):
        assert core_index(G) == core_index_bruteforce(G)

    @given(graphs(max_n=6), graphs(max_n=5))
    def test_additive_over_components(self, G, H):
        assert core_index(disjoint_union(G, H)) == core_index(G) + core_index(H)

    @given(graphs(max_n=6))
    def test_vertex_sets(self, G):
        assert set(connected_vertex_sets(G)) == brute_connected_sets(G)


class TestTrees:
    def test_examples(self):
        assert tree_core_index(path(5)) == 15
        # star formula 2^(n-1) + n - 1 at n = 5
        assert tree_core_index(star(5)) == 20
        assert tree_core_index(build(spec("tnk", 7, 3))) == 36

    def test_f_values(self):
        assert f_all_vertices(path(4)) == [4, 6, 6, 4]
        f = f_all_vertices(star(5))
        assert f[0] == 16 and f[1:] == [9, 9, 9, 9]

    @given(trees(max_n=9))
    def test_against_general_engine(self, T):
        assert tree_core_index(T) == core_index(T)
        assert f_all_vertices(T) == [count_containing(T, [v]) for v in range(T.n)]

    @given(trees(max_n=8))
    def test_against_brute_force(self, T):
        assert tree_core_index(T) == core_index_bruteforce(T)

    def test_rejects_non_tree(self):
        with pytest.raises(ValueError):
            tree_core_index(cycle(4))


class TestPointwise:
    def test_examples(self):
        assert count_containing(cycle(5), [0]) == 16
        assert count_containing(from_edge_list(1, []), [0]) == 1
        assert count_containing(path(4), [0, 3]) == 1

    def test_rejects_empty_set_and_bad_vertex(self):
        G = build(spec("pineapple", 6, 4))
        with pytest.raises(ValueError):
            count_containing(G, [])
        with pytest.raises(ValueError):
            count_containing(G, [6])

    def test_core(self):
        assert subgraph_core(path(4)) == frozenset({1, 2})
        assert subgraph_core(star(5)) == frozenset({0})
        assert subgraph_core(cycle(6)) == frozenset(range(6))

    @given(graphs(max_n=6), st.data())
    def test_against_brute_force(self, G, data):
        S = data.draw(st.sets(st.integers(0, G.n - 1), min_size=1, max_size=3))
        assert count_containing(G, S) == core_index_bruteforce(G, containing=S)

    @given(graphs(max_n=6))
    def test_f_vector(self, G):
        assert f_vector(G) == [core_index_bruteforce(G, containing=[v]) for v in range(G.n)]

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            f_vector(cycle(11))
        assert f_vector(path(11)) == [(i + 1) * (11 - i) for i in range(11)]


@given(graphs(max_n=6))
def test_vectorized_brute_force_matches_scalar_loop(G):
    import coreindex.counting as C
    saved = C.VECTOR_EDGES
    try:
        C.VECTOR_EDGES = 0
        fast = C.core_index_bruteforce(G)
        C.VECTOR_EDGES = 10 ** 6
        slow = C.core_index_bruteforce(G)
    finally:
        C.VECTOR_EDGES = saved
    assert fast == slow
