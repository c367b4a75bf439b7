import pytest
from hypothesis import given
from hypothesis import strategies as st

from coreindex import formulas
from coreindex.counting import core_index
from coreindex.families import (
    FamilyError,
    Kind,
    assemble_unicyclic,
    build,
    cycle,
    enumerate_labeled_graphs,
    enumerate_labeled_trees,
    enumerate_unicyclic,
    expected_F,
    graph_class,
    parse_spec,
    path,
    prufer_decode,
    spec,
    star,
)
from coreindex.graph import (
    SizeGuardError,
    bridges,
    components,
    cut_vertices,
    girth,
    is_connected,
    is_isomorphic,
    is_tree,
    pendant_vertices,
)


def degrees(G):
    return sorted((len(G.adj[v]) for v in range(G.n)), reverse=True)


class TestBuild:
    def test_lollipop(self):
        L = build(spec("lollipop", 5, 3))
        assert (L.n, L.m, girth(L), len(pendant_vertices(L))) == (5, 5, 3, 1)
        assert pendant_vertices(L) == frozenset({4})
        assert L.has_edge(0, 3)

    def test_pineapple(self):
        P = build(spec("pineapple", 6, 4))
        assert degrees(P) == [4, 2, 2, 2, 1, 1]
        assert pendant_vertices(P) == frozenset({4, 5})

    def test_shared_dumbbell(self):
        D = build(spec("dumbbell", 3, 3, 5))
        assert degrees(D) == [4, 2, 2, 2, 2]
        assert cut_vertices(D) == [0]

    def test_dumbbell_with_path(self):
        D = build(spec("dumbbell", 3, 3, 6))
        assert D.m == 7 and len(bridges(D)) == 1
        D = build(spec("dumbbell", 3, 4, 9))
        assert D.m == 10 and len(bridges(D)) == 3 and girth(D) == 3

    def test_broom_labels(self):
        B = build(spec("broom", 2, 3, 3))
        assert B.n == 8 and is_tree(B)
        assert len(B.adj[0]) == 3 and len(B.adj[2]) == 4

    def test_tnk(self):
        T = build(spec("tnk", 8, 3))
        assert T.n == 8 and len(T.adj[0]) == 3 and is_tree(T)

    def test_pnk(self):
        G = build(spec("pnk", 6, 2))
        assert len(pendant_vertices(G)) == 2 and G.m == 6 + 2

    def test_unions(self):
        U = build(spec("union-paths", 7, 3))
        assert sorted(map(len, components(U))) == [2, 2, 3]
        U = build(spec("union-complete", 6, 3))
        assert sorted(map(len, components(U))) == [1, 1, 4]
        U = build(spec("union-star", 6, 2))
        assert sorted(map(len, components(U))) == [1, 5]

    @pytest.mark.parametrize("text", [
        "path:n=4", "star:n=5", "cycle:n=6", "complete:n=4", "pineapple:n=7,g=4", "lollipop:n=9,g=4",
        "broom:k=1,l=2,d=3", "tnk:n=7,k=3", "spider:l=3,q=2", "pnk:n=6,k=2", "dumbbell:m1=3,m2=4,n=9",
        "union-paths:n=7,k=3", "union-complete:n=6,k=2", "union-star:n=6,k=3", "assembly:g=4,shape=star,sizes=2/0/1/0",
    ])
    def test_text_round_trip_and_closed_form(self, text):
        s = parse_spec(text)
        assert parse_spec(str(s)) == s
        want = expected_F(s)
        if want is not None:
            assert want == core_index(build(s))

    @pytest.mark.parametrize("text", [
        "lollipop:n=3,g=3", "cycle:n=2", "blob:n=3", "path:n=x", "path:m=3", "pnk:n=5,k=3", "broom:k=1,l=1,d=1",
        "dumbbell:m1=3,m2=3,n=4", "assembly:g=3,shape=tree,sizes=1/1/1", "assembly:g=3,shape=path,sizes=1/1",
        "union-paths:n=3,k=4", "path:n",
    ])
    def test_invalid_specs(self, text):
        with pytest.raises(FamilyError):
            parse_spec(text)

    def test_getitem(self):
        assert spec("lollipop", 9, 4)["g"] == 4


class TestAssembly:
    def test_trivial_trees_give_cycle(self):
        K1 = build(spec("path", 1))
        assert is_isomorphic(assemble_unicyclic(5, [(K1, 0)] * 5), cycle(5))

    def test_star_gives_pineapple(self):
        K1 = build(spec("path", 1))
        G = assemble_unicyclic(4, [(star(4), 0), (K1, 0), (K1, 0), (K1, 0)])
        assert is_isomorphic(G, build(spec("pineapple", 7, 4)))

    def test_path_gives_lollipop(self):
        K1 = build(spec("path", 1))
        G = assemble_unicyclic(3, [(path(4), 0), (K1, 0), (K1, 0)])
        assert is_isomorphic(G, build(spec("lollipop", 6, 3)))

    def test_rejects_wrong_count(self):
        with pytest.raises(FamilyError):
            assemble_unicyclic(4, [(path(2), 0)] * 3)

    def test_rejects_non_tree(self):
        K1 = build(spec("path", 1))
        with pytest.raises(FamilyError):
            assemble_unicyclic(3, [(cycle(3), 0), (K1, 0), (K1, 0)])


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)])
    def test_cayley(self, n, count):
        trees = list(enumerate_labeled_trees(n))
        assert len(trees) == count == len(set(trees))
        assert all(is_tree(T) for T in trees)

    def test_four_vertex_trees(self):
        assert len(list(enumerate_labeled_trees(4))) == 16

    @pytest.mark.parametrize("n,count", [(3, 1), (4, 15), (5, 222), (6, 3660)])
    def test_unicyclic_counts(self, n, count):
        graphs = list(enumerate_unicyclic(n))
        assert len(graphs) == count == len(set(graphs))
        assert all(G.m == n and is_connected(G) for G in graphs)

    def test_connected_count_is_h(self):
        for n in range(1, 6):
            assert sum(1 for _ in enumerate_labeled_graphs(n, "connected")) == formulas.h(n)

    def test_predicates(self):
        assert all(min(len(G.adj[v]) for v in range(5)) >= 2 for G in enumerate_labeled_graphs(5, "pendant-free"))
        assert any(is_isomorphic(G, cycle(5)) for G in enumerate_labeled_graphs(5, "pendant-free"))
        assert sum(1 for _ in enumerate_labeled_graphs(4, lambda G: G.m == 0)) == 1

    def test_guards(self):
        with pytest.raises(SizeGuardError):
            next(enumerate_labeled_trees(10))
        with pytest.raises(SizeGuardError):
            next(enumerate_labeled_graphs(8, "connected"))

    @given(st.integers(3, 9).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))))
    def test_prufer_decode_degrees(self, nc):
        n, code = nc
        T = prufer_decode(code, n)
        assert is_tree(T)
        assert all(len(T.adj[v]) == 1 + code.count(v) for v in range(n))


class TestClasses:
    @pytest.mark.parametrize("text,source", [
        ("all", "all"), ("connected", "all"), ("trees", "trees"), ("trees:leaves=3", "trees"),
        ("unicyclic", "unicyclic"), ("unicyclic:g=4", "unicyclic"), ("components:k=2", "all"),
        ("forests:k=2", "all"), ("pendants:k=1", "all"), ("pendant-free", "all"), ("two-connected", "all"),
    ])
    def test_parse(self, text, source):
        assert graph_class(text).source == source

    @pytest.mark.parametrize("text", ["nope", "trees:k=2", "components", "unicyclic:g=x", "pendants:1"])
    def test_bad(self, text):
        with pytest.raises(FamilyError):
            graph_class(text)

    def test_membership(self):
        assert graph_class("unicyclic:g=3").contains(build(spec("lollipop", 6, 3)))
        assert not graph_class("unicyclic:g=4").contains(build(spec("lollipop", 6, 3)))
        assert graph_class("pendants:k=1").contains(build(spec("lollipop", 6, 3)))
        assert graph_class("two-connected").contains(cycle(5))
        assert graph_class("trees:leaves=2").contains(path(5))
