"""Named graph families, labeled enumerators and graph classes.

Labeling conventions (relied on by tests and by pointwise f-values):

path n          0-1-...-(n-1)
star n          centre 0, leaves 1..n-1
cycle n         0-1-...-(n-1)-0
complete n      0..n-1
pineapple n,g   cycle 0..g-1; leaves g..n-1 all adjacent to 0
lollipop n,g    cycle 0..g-1; tail g-(g+1)-...-(n-1) with g adjacent to 0;
                the pendant vertex is n-1
assembly        cycle 0..g-1, then the attached trees in cycle order
broom k,l,d     spine 0..d-1; k leaves at 0, then l leaves at d-1
tnk n,k         centre 0; legs in order, the first r legs one longer
spider l,q      tnk with n = lq + 1, k = l
pnk n,k         K_{n-k} on 0..n-k-1; leaves n-k..n-1 at 0
dumbbell m1,m2,n  first cycle 0..m1-1 through vertex 0; if n = m1+m2-1 the
                second cycle also passes through 0, otherwise a path leaves 0
                and ends on the second cycle, which occupies the top ids
union-*         components laid out left to right in the order named
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

from . import formulas
from .graph import (
    Graph,
    GraphError,
    SizeGuardError,
    check_size,
    components,
    from_edge_list,
    girth,
    is_connected,
    is_forest,
    is_tree,
    is_two_connected,
    pendant_vertices,
)


class Kind(enum.Enum):
    PATH = "path"
    STAR = "star"
    CYCLE = "cycle"
    COMPLETE = "complete"
    PINEAPPLE = "pineapple"
    LOLLIPOP = "lollipop"
    UNICYCLIC_ASSEMBLY = "assembly"
    DOUBLE_BROOM = "broom"
    BALANCED_SPIDER = "tnk"
    SPIDER = "spider"
    PNK = "pnk"
    DUMBBELL = "dumbbell"
    UNION_R_PQ = "union-paths"
    UNION_K_COMPLETE = "union-complete"
    UNION_K_STAR = "union-star"


PARAMS: dict[Kind, tuple[str, ...]] = {
    Kind.PATH: ("n",),
    Kind.STAR: ("n",),
    Kind.CYCLE: ("n",),
    Kind.COMPLETE: ("n",),
    Kind.PINEAPPLE: ("n", "g"),
    Kind.LOLLIPOP: ("n", "g"),
    Kind.UNICYCLIC_ASSEMBLY: ("g", "shape", "sizes"),
    Kind.DOUBLE_BROOM: ("k", "l", "d"),
    Kind.BALANCED_SPIDER: ("n", "k"),
    Kind.SPIDER: ("l", "q"),
    Kind.PNK: ("n", "k"),
    Kind.DUMBBELL: ("m1", "m2", "n"),
    Kind.UNION_R_PQ: ("n", "k"),
    Kind.UNION_K_COMPLETE: ("n", "k"),
    Kind.UNION_K_STAR: ("n", "k"),
}

SHAPES = ("path", "star")


class FamilyError(GraphError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """One member of a named family.

    ``params`` is the integer list for the kind, in the order of
    ``PARAMS[kind]``.  For ``assembly`` it is ``(g, shape, n_1, ..., n_g)``
    where shape 0 hangs paths and 1 hangs stars, and ``n_i`` counts the
    non-cycle vertices of the tree at cycle vertex ``i``.
    """

    kind: Kind
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        _validate(self)

    def __getitem__(self, name: str) -> int:
        return self.params[PARAMS[self.kind].index(name)]

    def __str__(self) -> str:
        if self.kind is Kind.UNICYCLIC_ASSEMBLY:
            g, shape, *sizes = self.params
            return f"assembly:g={g},shape={SHAPES[shape]},sizes={'/'.join(map(str, sizes))}"
        body = ",".join(f"{k}={v}" for k, v in zip(PARAMS[self.kind], self.params))
        return f"{self.kind.value}:{body}"


def spec(kind: Kind | str, *params: int) -> FamilySpec:
    return FamilySpec(Kind(kind), tuple(params))


def _validate(s: FamilySpec) -> None:
    k, p = s.kind, s.params
    fail = lambda why: FamilyError(f"invalid {k.value} parameters {p}: {why}")  # noqa: E731
    if k is Kind.UNICYCLIC_ASSEMBLY:
        if len(p) < 2 or p[0] < 3 or len(p) != 2 + p[0]:
            raise fail("need g >= 3, a shape and exactly g sizes")
        if p[1] not in (0, 1) or min(p[2:]) < 0:
            raise fail("shape must be path/star and sizes nonnegative")
        return
    if len(p) != len(PARAMS[k]):
        raise fail(f"expected {len(PARAMS[k])} values {PARAMS[k]}")
    if k in (Kind.PATH, Kind.STAR, Kind.COMPLETE):
        if p[0] < 1:
            raise fail("need n >= 1")
    elif k is Kind.CYCLE:
        if p[0] < 3:
            raise fail("need n >= 3")
    elif k in (Kind.PINEAPPLE, Kind.LOLLIPOP):
        n, g = p
        if not 3 <= g < n:
            raise fail("need 3 <= g < n")
    elif k is Kind.DOUBLE_BROOM:
        a, b, d = p
        if a < 1 or b < 1 or d < 2:
            raise fail("need k, l >= 1 and d >= 2")
    elif k is Kind.BALANCED_SPIDER:
        n, kk = p
        if not 1 <= kk <= n - 1:
            raise fail("need 1 <= k <= n-1")
    elif k is Kind.SPIDER:
        if p[0] < 1 or p[1] < 1:
            raise fail("need l, q >= 1")
    elif k is Kind.PNK:
        n, kk = p
        if not 0 <= kk <= n - 3:
            raise fail("need 0 <= k <= n-3")
    elif k is Kind.DUMBBELL:
        m1, m2, n = p
        if m1 < 3 or m2 < 3 or n < m1 + m2 - 1:
            raise fail("need m1, m2 >= 3 and n >= m1+m2-1")
    elif k in (Kind.UNION_R_PQ, Kind.UNION_K_COMPLETE, Kind.UNION_K_STAR):
        n, kk = p
        if not 1 <= kk <= n:
            raise fail("need 1 <= k <= n")


# -- text syntax ------------------------------------------------------------------

def parse_spec(text: str) -> FamilySpec:
    """Parse ``kind:key=value,...``, e.g. ``lollipop:n=9,g=4``."""
    name, _, body = text.strip().partition(":")
    try:
        kind = Kind(name.strip().lower())
    except ValueError:
        known = ", ".join(k.value for k in Kind)
        raise FamilyError(f"unknown family {name!r}; known: {known}") from None
    fields: dict[str, str] = {}
    for part in filter(None, (x.strip() for x in body.split(","))):
        key, eq, val = part.partition("=")
        if not eq:
            raise FamilyError(f"expected key=value, got {part!r}")
        fields[key.strip()] = val.strip()
    expected = PARAMS[kind]
    if set(fields) != set(expected):
        raise FamilyError(f"{kind.value} takes {', '.join(expected)}; got {', '.join(sorted(fields)) or 'nothing'}")
    try:
        if kind is Kind.UNICYCLIC_ASSEMBLY:
            shape = fields["shape"]
            if shape not in SHAPES:
                raise FamilyError(f"shape must be one of {SHAPES}, got {shape!r}")
            sizes = [int(x) for x in fields["sizes"].split("/")]
            return FamilySpec(kind, (int(fields["g"]), SHAPES.index(shape), *sizes))
        return FamilySpec(kind, tuple(int(fields[k]) for k in expected))
    except ValueError as exc:
        if isinstance(exc, FamilyError):
            raise
        raise FamilyError(f"non-integer parameter in {text!r}") from None


# -- construction -------------------------------------------------------------------

def _cycle_edges(vs: list[int]) -> list[tuple[int, int]]:
    return list(zip(vs, vs[1:] + vs[:1]))


def _path_edges(vs: list[int]) -> list[tuple[int, int]]:
    return list(zip(vs, vs[1:]))


def path(n: int) -> Graph:
    return build(spec(Kind.PATH, n))


def star(n: int) -> Graph:
    return build(spec(Kind.STAR, n))


def cycle(n: int) -> Graph:
    return build(spec(Kind.CYCLE, n))


def complete(n: int) -> Graph:
    return build(spec(Kind.COMPLETE, n))


def _spider_edges(legs: list[int]) -> tuple[int, list[tuple[int, int]]]:
    edges = []
    nxt = 1
    for length in legs:
        chain = [0] + list(range(nxt, nxt + length))
        edges += _path_edges(chain)
        nxt += length
    return nxt, edges


def build(s: FamilySpec) -> Graph:
    k, p = s.kind, s.params
    if k is Kind.PATH:
        return from_edge_list(p[0], _path_edges(list(range(p[0]))))
    if k is Kind.STAR:
        return from_edge_list(p[0], [(0, i) for i in range(1, p[0])])
    if k is Kind.CYCLE:
        return from_edge_list(p[0], _cycle_edges(list(range(p[0]))))
    if k is Kind.COMPLETE:
        return from_edge_list(p[0], combinations(range(p[0]), 2))
    if k is Kind.PINEAPPLE:
        n, g = p
        return from_edge_list(n, _cycle_edges(list(range(g))) + [(0, i) for i in range(g, n)])
    if k is Kind.LOLLIPOP:
        n, g = p
        return from_edge_list(n, _cycle_edges(list(range(g))) + _path_edges([0] + list(range(g, n))))
    if k is Kind.UNICYCLIC_ASSEMBLY:
        g, shape, *sizes = p
        trees = [(star(m + 1) if shape else path(m + 1), 0) for m in sizes]
        return assemble_unicyclic(g, trees)
    if k is Kind.DOUBLE_BROOM:
        a, b, d = p
        edges = _path_edges(list(range(d)))
        edges += [(0, d + i) for i in range(a)]
        edges += [(d - 1, d + a + i) for i in range(b)]
        return from_edge_list(a + b + d, edges)
    if k is Kind.BALANCED_SPIDER:
        n, kk = p
        q, r = formulas.spider_legs(n, kk)
        total, edges = _spider_edges([q + 1] * r + [q] * (kk - r))
        return from_edge_list(total, edges)
    if k is Kind.SPIDER:
        l, q = p
        total, edges = _spider_edges([q] * l)
        return from_edge_list(total, edges)
    if k is Kind.PNK:
        n, kk = p
        core = n - kk
        return from_edge_list(n, list(combinations(range(core), 2)) + [(0, i) for i in range(core, n)])
    if k is Kind.DUMBBELL:
        m1, m2, n = p
        edges = _cycle_edges(list(range(m1)))
        if n == m1 + m2 - 1:
            edges += _cycle_edges([0] + list(range(m1, n)))
        else:
            inner = n - m1 - m2
            second = list(range(m1 + inner, n))
            edges += _path_edges([0] + list(range(m1, m1 + inner)) + [second[0]])
            edges += _cycle_edges(second)
        return from_edge_list(n, edges)
    if k is Kind.UNION_R_PQ:
        n, kk = p
        q, r = divmod(n, kk)
        return _union([path(q + 1)] * r + [path(q)] * (kk - r))
    if k is Kind.UNION_K_COMPLETE:
        n, kk = p
        return _union([complete(1)] * (kk - 1) + [complete(n - kk + 1)])
    if k is Kind.UNION_K_STAR:
        n, kk = p
        return _union([complete(1)] * (kk - 1) + [star(n - kk + 1)])
    raise FamilyError(f"no builder for {k}")


def _union(parts: list[Graph]) -> Graph:
    edges = []
    off = 0
    for P in parts:
        edges += [(u + off, v + off) for u, v in P.edges]
        off += P.n
    return from_edge_list(off, edges)


def assemble_unicyclic(g: int, trees: list[tuple[Graph, int]]) -> Graph:
    """Cycle ``0..g-1`` with rooted tree ``i`` glued at cycle vertex ``i``.

    Each entry is ``(tree, root)``; a tree with ``n_i + 1`` vertices adds
    ``n_i`` vertices, so the result has ``g + sum(n_i)`` vertices.
    """
    if g < 3:
        raise FamilyError(f"cycle length must be at least 3, got {g}")
    if len(trees) != g:
        raise FamilyError(f"need exactly {g} rooted trees, got {len(trees)}")
    edges = _cycle_edges(list(range(g)))
    nxt = g
    for i, (T, root) in enumerate(trees):
        if not is_tree(T):
            raise FamilyError(f"tree {i} is not a tree")
        if not 0 <= root < T.n:
            raise FamilyError(f"tree {i} has no vertex {root}")
        ids = {}
        for v in range(T.n):
            if v == root:
                ids[v] = i
            else:
                ids[v] = nxt
                nxt += 1
        edges += [(ids[a], ids[b]) for a, b in T.edges]
    return from_edge_list(nxt, edges)


def expected_F(s: FamilySpec) -> int | None:
    """Closed-form core index of the family member, or ``None`` when no formula covers it."""
    k, p = s.kind, s.params
    if k is Kind.PATH:
        return formulas.F_path(p[0])
    if k is Kind.STAR:
        return formulas.F_star(p[0])
    if k is Kind.CYCLE:
        return formulas.F_cycle(p[0])
    if k is Kind.COMPLETE:
        return formulas.F_complete(p[0])
    if k is Kind.PINEAPPLE:
        return formulas.F_pineapple(*p)
    if k is Kind.LOLLIPOP:
        return formulas.F_lollipop(*p)
    if k is Kind.UNICYCLIC_ASSEMBLY:
        g, shape, *sizes = p
        nonzero = [m for m in sizes if m]
        if not nonzero:
            return formulas.F_cycle(g)
        if len(nonzero) == 1:
            n = g + nonzero[0]
            return formulas.F_pineapple(n, g) if shape else formulas.F_lollipop(n, g)
        return None
    if k is Kind.DOUBLE_BROOM:
        a, b, d = p
        n = a + b + d
        if {a, b} == {(a + b) // 2, (a + b + 1) // 2} and d >= 2:
            return formulas.F_balanced_broom(n, a + b)
        return formulas.F_double_broom(a, b, d)
    if k is Kind.BALANCED_SPIDER:
        n, kk = p
        if 2 <= kk <= n - 3:
            return formulas.F_T_nk(n, kk)
        return formulas.F_path(n) if kk == 1 else (formulas.F_star(n) if kk == n - 1 else None)
    if k is Kind.SPIDER:
        return formulas.F_spider(*p)
    if k is Kind.PNK:
        return formulas.F_P_n_k(*p)
    if k is Kind.DUMBBELL:
        m1, m2, n = p
        if n == m1 + m2 - 1:
            return formulas.F_shared_dumbbell(m1, m2)
        if m1 == m2 == 3:
            return formulas.F_C33(n)
        return None
    if k is Kind.UNION_R_PQ:
        return formulas.union_extremes(*p)[1]
    if k is Kind.UNION_K_COMPLETE:
        return formulas.union_extremes(*p)[0]
    if k is Kind.UNION_K_STAR:
        return formulas.union_extremes(*p)[2]
    return None


# -- labeled enumeration ----------------------------------------------------------------

TREE_MAX_N = 9
GRAPH_MAX_N = 7


def prufer_decode(seq: tuple[int, ...] | list[int], n: int) -> Graph:
    """Tree on ``n >= 2`` vertices from its Prüfer sequence (smallest leaf first)."""
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    edges = []
    for x in seq:
        leaf = deg.index(1)
        edges.append((leaf, x))
        deg[leaf] -= 1
        deg[x] -= 1
    u, w = (i for i in range(n) if deg[i] == 1)
    edges.append((u, w))
    return from_edge_list(n, edges)


def enumerate_labeled_trees(n: int, *, unsafe: bool = False) -> Iterator[Graph]:
    """All ``n**(n-2)`` labeled trees, in lexicographic Prüfer order."""
    if n < 1:
        raise FamilyError(f"need n >= 1, got {n}")
    check_size("enumerate_labeled_trees", n, TREE_MAX_N, unsafe)
    if n == 1:
        yield from_edge_list(1, [])
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def _cycle_edges_of_tree_plus(T: Graph, u: int, w: int) -> list[tuple[int, int]]:
    """Edges of the unique u-w path in a tree."""
    parent = {u: -1}
    order = [u]
    for x in order:
        for y in T.adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    out = []
    x = w
    while parent[x] != -1:
        p = parent[x]
        out.append((min(p, x), max(p, x)))
        x = p
    return out


def enumerate_unicyclic(n: int, *, unsafe: bool = False) -> Iterator[Graph]:
    """Every labeled unicyclic graph on ``n`` vertices exactly once.

    A graph is emitted from tree ``T`` plus edge ``e`` only when ``e`` is the
    largest edge of the resulting cycle, which makes each graph arise from
    exactly one (tree, edge) pair without remembering what was seen.
    """
    if n < 3:
        return
    for T in enumerate_labeled_trees(n, unsafe=unsafe):
        for e in combinations(range(n), 2):
            if T.has_edge(*e):
                continue
            if max(_cycle_edges_of_tree_plus(T, *e)) < e:
                yield from_edge_list(n, T.edges + (e,))


def enumerate_all_graphs(n: int, *, unsafe: bool = False) -> Iterator[Graph]:
    """All ``2**C(n,2)`` labeled graphs in edge-bitmask order (graph6 pair order)."""
    from .graph import all_pairs

    check_size("enumerate_labeled_graphs", n, GRAPH_MAX_N, unsafe)
    pairs = list(all_pairs(n))
    for mask in range(1 << len(pairs)):
        yield from_edge_list(n, [pairs[b] for b in range(len(pairs)) if (mask >> b) & 1])


# -- graph classes ----------------------------------------------------------------------

@dataclass(frozen=True)
class GraphClass:
    """A labeled graph class: a membership predicate plus a preferred generator.

    ``source`` is ``"trees"``, ``"unicyclic"`` or ``"all"``; the first two
    let enumeration run at larger ``n`` than the full edge-subset sweep.
    """

    name: str
    description: str
    source: str
    contains: Callable[[Graph], bool]
    params: tuple[tuple[str, int], ...] = ()

    def param(self, key: str) -> int | None:
        return dict(self.params).get(key)


def _pendants(G: Graph) -> int:
    return len(pendant_vertices(G))


def graph_class(text: str) -> GraphClass:
    """Parse a class name such as ``trees``, ``trees:leaves=3``, ``unicyclic:g=4``,
    ``components:k=2``, ``forests:k=2``, ``pendants:k=1``, ``pendant-free``,
    ``connected``, ``two-connected`` or ``all``."""
    name, _, body = text.strip().partition(":")
    kv = {}
    for part in filter(None, (x.strip() for x in body.split(","))):
        key, eq, val = part.partition("=")
        if not eq:
            raise FamilyError(f"expected key=value in class {text!r}")
        try:
            kv[key.strip()] = int(val)
        except ValueError:
            raise FamilyError(f"non-integer value in class {text!r}") from None

    def only(*keys: str) -> None:
        extra = set(kv) - set(keys)
        if extra:
            raise FamilyError(f"class {name!r} does not take {', '.join(sorted(extra))}")

    params = tuple(sorted(kv.items()))
    if name in ("components", "forests", "pendants") and "k" not in kv:
        raise FamilyError(f"class {name!r} needs k=..., e.g. {name}:k=2")
    if name == "all":
        only()
        return GraphClass("all", "all labeled graphs", "all", lambda G: True)
    if name == "connected":
        only()
        return GraphClass("connected", "connected graphs", "all", is_connected)
    if name == "components":
        only("k")
        k = kv["k"]
        return GraphClass(text, f"graphs with {k} components", "all",
                          lambda G: len(components(G)) == k, params)
    if name == "forests":
        only("k")
        k = kv["k"]
        return GraphClass(text, f"forests with {k} components", "all",
                          lambda G: is_forest(G) and len(components(G)) == k, params)
    if name == "trees":
        only("leaves")
        leaves = kv.get("leaves")
        if leaves is None:
            return GraphClass("trees", "trees", "trees", is_tree)
        return GraphClass(text, f"trees with {leaves} leaves", "trees",
                          lambda G: is_tree(G) and _pendants(G) == leaves, params)
    if name == "unicyclic":
        only("g")
        g = kv.get("g")
        if g is None:
            return GraphClass("unicyclic", "unicyclic graphs", "unicyclic",
                              lambda G: G.m == G.n and is_connected(G))
        return GraphClass(text, f"unicyclic graphs of girth {g}", "unicyclic",
                          lambda G: G.m == G.n and is_connected(G) and girth(G) == g, params)
    if name == "pendants":
        only("k")
        k = kv["k"]
        return GraphClass(text, f"connected graphs with {k} pendant vertices", "all",
                          lambda G: is_connected(G) and _pendants(G) == k, params)
    if name == "pendant-free":
        only()
        return GraphClass("pendant-free", "connected graphs without pendant vertices", "all",
                          lambda G: is_connected(G) and _pendants(G) == 0, (("k", 0),))
    if name == "two-connected":
        only()
        return GraphClass("two-connected", "2-connected graphs", "all",
                          lambda G: G.n >= 3 and is_two_connected(G))
    raise FamilyError(f"unknown graph class {name!r}")


def enumerate_labeled_graphs(n: int, predicate: str | GraphClass | Callable[[Graph], bool] = "all",
                             *, unsafe: bool = False) -> Iterator[Graph]:
    """Stream every labeled graph on ``n`` vertices satisfying ``predicate``.

    Tree and unicyclic classes are generated from Prüfer sequences (n <= 9);
    anything else sweeps all edge subsets (n <= 7).
    """
    if isinstance(predicate, str):
        predicate = graph_class(predicate)
    if isinstance(predicate, GraphClass):
        cls = predicate
        if cls.source == "trees":
            source = enumerate_labeled_trees(n, unsafe=unsafe)
        elif cls.source == "unicyclic":
            check_size("enumerate_labeled_graphs", n, TREE_MAX_N, unsafe)
            source = enumerate_unicyclic(n, unsafe=unsafe)
        else:
            source = enumerate_all_graphs(n, unsafe=unsafe)
        keep = cls.contains
    else:
        source = enumerate_all_graphs(n, unsafe=unsafe)
        keep = predicate
    for G in source:
        if keep(G):
            yield G


__all__ = [
    "FamilySpec", "Kind", "PARAMS", "FamilyError", "GraphClass", "assemble_unicyclic", "build",
    "complete", "cycle", "enumerate_all_graphs", "enumerate_labeled_graphs",
    "enumerate_labeled_trees", "enumerate_unicyclic", "expected_F", "graph_class",
    "parse_spec", "path", "prufer_decode", "spec", "star", "SizeGuardError",
]
