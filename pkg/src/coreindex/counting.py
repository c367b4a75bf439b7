"""Exact counts of connected subgraphs.

A connected subgraph is a nonempty vertex set together with a subset of the
edges inside it such that the pair is connected; a lone vertex counts.  These
are *not* induced subgraphs: a triangle has 10 connected subgraphs (3
vertices, 3 single edges, 3 two-edge paths, the triangle itself).

Three independent routes compute the core index F(G):

* :func:`core_index_bruteforce` enumerates vertex sets and edge subsets.
* :func:`core_index` sums connected-spanning-subgraph counts of induced
  subgraphs, computed by weighted deletion-contraction, with a bridge split.
* :func:`tree_core_index` is the rooted product DP for forests.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .graph import (
    Graph,
    GraphError,
    bridges,
    check_size,
    components,
    induced_subgraph,
    is_connected,
    is_forest,
    is_tree,
    remove_edge,
)

BRUTE_MAX_N = 10
POINTWISE_MAX_N = 10


# -- brute force oracle -------------------------------------------------------

def _edge_subset_spans(vmask: int, edges: list[tuple[int, int]], chosen: int, n: int) -> bool:
    adj = [0] * n
    k = 0
    while chosen:
        if chosen & 1:
            u, v = edges[k]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        chosen >>= 1
        k += 1
    start = vmask & -vmask
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & ~seen
        seen |= new
        frontier |= new
    return seen == vmask


def core_index_bruteforce(G: Graph, containing: Iterable[int] = (), *, unsafe: bool = False) -> int:
    """Count connected subgraphs by enumerating every vertex set and edge subset.

    With ``containing``, only subgraphs whose vertex set includes all those
    vertices are counted.
    """
    check_size("core_index_bruteforce", G.n, BRUTE_MAX_N, unsafe)
    need = 0
    for v in containing:
        need |= 1 << v
    total = 0
    for vmask in range(1, 1 << G.n):
        if vmask & need != need:
            continue
        es = [(u, v) for u, v in G.edges if (vmask >> u) & 1 and (vmask >> v) & 1]
        if len(es) >= VECTOR_EDGES:
            total += _count_spanning_subsets(vmask, es)
            continue
        for chosen in range(1 << len(es)):
            if _edge_subset_spans(vmask, es, chosen, G.n):
                total += 1
    return total


VECTOR_EDGES = 10
VECTOR_BLOCK = 1 << 20


def _count_spanning_subsets(vmask: int, es: list[tuple[int, int]]) -> int:
    """The same enumeration as ``_edge_subset_spans``, run on blocks of edge subsets at once."""
    verts = [v for v in range(vmask.bit_length()) if (vmask >> v) & 1]
    start = np.uint32(1 << verts[0])
    target = np.uint32(vmask)
    hits = 0
    for lo in range(0, 1 << len(es), VECTOR_BLOCK):
        chosen = np.arange(lo, min(lo + VECTOR_BLOCK, 1 << len(es)), dtype=np.uint32)
        adj = {v: np.zeros_like(chosen) for v in verts}
        for k, (u, v) in enumerate(es):
            on = ((chosen >> np.uint32(k)) & np.uint32(1)).astype(bool)
            adj[u][on] |= np.uint32(1 << v)
            adj[v][on] |= np.uint32(1 << u)
        seen = np.full_like(chosen, start)
        while True:
            grown = seen.copy()
            for v in verts:
                has = (seen >> np.uint32(v)) & np.uint32(1)
                grown |= adj[v] * has
            if np.array_equal(grown, seen):
                break
            seen = grown
        hits += int(np.count_nonzero(seen == target))
    return hits


# -- connected spanning subgraphs ------------------------------------------------

# A bundle between two super-vertices is summarized by (absent, present):
# the number of ways to pick its edges so that it does / does not link them.
# A simple edge is (1, 1); k parallel edges are (1, 2**k - 1).

def _parallel(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0], a[0] * b[1] + a[1] * b[0] + a[1] * b[1]


def _series(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    # the middle vertex must stay attached to at least one side
    return a[0] * b[1] + a[1] * b[0], a[1] * b[1]


def _attach(adj: dict[int, dict[int, tuple[int, int]]], x: int, y: int, w: tuple[int, int]) -> None:
    old = adj[x].get(y)
    if old is not None:
        w = _parallel(old, w)
    adj[x][y] = w
    adj[y][x] = w


def _spans(adj: dict[int, dict[int, tuple[int, int]]]) -> bool:
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(adj)


def _csc(adj: dict[int, dict[int, tuple[int, int]]]) -> int:
    scale = 1
    while True:
        if len(adj) == 1:
            return scale
        reduced = False
        for v in list(adj):
            nb = adj[v]
            if len(nb) == 0:
                return 0
            if len(nb) == 1:
                (a, w), = nb.items()
                scale *= w[1]
                del adj[a][v]
                del adj[v]
                reduced = True
                break
            if len(nb) == 2:
                (a, wa), (b, wb) = nb.items()
                del adj[a][v]
                del adj[b][v]
                del adj[v]
                _attach(adj, a, b, _series(wa, wb))
                reduced = True
                break
        if reduced:
            continue
        break
    if not _spans(adj):
        return 0
    # branch on a bundle at a vertex of maximum degree
    a = max(adj, key=lambda x: (len(adj[x]), -x))
    b = min(adj[a])
    absent, present = adj[a][b]

    deleted = {x: dict(nb) for x, nb in adj.items()}
    del deleted[a][b]
    del deleted[b][a]

    contracted = {x: dict(nb) for x, nb in adj.items() if x != b}
    del contracted[a][b]
    for c, w in adj[b].items():
        if c == a:
            continue
        del contracted[c][b]
        _attach(contracted, a, c, w)

    return scale * (absent * _csc(deleted) + present * _csc(contracted))


def connected_spanning_count(G: Graph) -> int:
    """Number of edge subsets ``E'`` with ``(V, E')`` connected."""
    if G.n == 0:
        return 0
    adj: dict[int, dict[int, tuple[int, int]]] = {v: {} for v in range(G.n)}
    for u, v in G.edges:
        adj[u][v] = (1, 1)
        adj[v][u] = (1, 1)
    return _csc(adj)


# -- connected vertex sets ------------------------------------------------------

def connected_vertex_sets(G: Graph, anchor: int | None = None) -> Iterator[int]:
    """Bitmasks of the vertex sets inducing connected subgraphs.

    Without ``anchor`` every such set is produced once; with ``anchor`` only
    the sets containing it.  Uses exclusive-neighbourhood extension so no set
    is visited twice.
    """
    nb = G.bitmasks()
    full = (1 << G.n) - 1

    def extend(sub: int, ext: int, closed: int, allowed: int) -> Iterator[int]:
        yield sub
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            fresh = nb[w] & ~closed & allowed
            yield from extend(sub | low, ext | fresh, closed | nb[w] | low, allowed)

    starts = range(G.n) if anchor is None else (anchor,)
    for v in starts:
        allowed = (full & ~((1 << (v + 1)) - 1)) if anchor is None else (full & ~(1 << v))
        yield from extend(1 << v, nb[v] & allowed, nb[v] | (1 << v), allowed)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _sum_over_sets(G: Graph, sets: Iterable[int]) -> int:
    return sum(connected_spanning_count(induced_subgraph(G, _bits(s))) for s in sets)


# -- trees ------------------------------------------------------------------------

def _rooted(G: Graph, root: int) -> tuple[list[int], list[int]]:
    """BFS order and parent array of the component containing ``root``."""
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in G.adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    par = [-1] * G.n
    for v, p in parent.items():
        par[v] = p
    return order, par


def tree_core_index(T: Graph) -> int:
    """Subtree count of a forest: each subtree is counted at its top vertex."""
    if not is_forest(T):
        raise GraphError("tree_core_index needs a forest; the input has a cycle")
    top = [1] * T.n
    done = [False] * T.n
    for r in range(T.n):
        if done[r]:
            continue
        order, par = _rooted(T, r)
        for v in reversed(order):
            done[v] = True
            if par[v] >= 0:
                top[par[v]] *= 1 + top[v]
    return sum(top)


def f_all_vertices(T: Graph) -> list[int]:
    """``f_T(v)`` for every vertex of a tree, by rerooting.

    The contribution from above a child is assembled from prefix and suffix
    products over its siblings, so no division is needed.
    """
    if not is_tree(T):
        raise GraphError("f_all_vertices needs a tree")
    order, par = _rooted(T, 0)
    children: list[list[int]] = [[] for _ in range(T.n)]
    for v in order[1:]:
        children[par[v]].append(v)
    down = [1] * T.n
    for v in reversed(order):
        for c in children[v]:
            down[v] *= 1 + down[c]
    up = [0] * T.n  # subtrees containing par[v] but avoiding v's branch
    for v in order:
        kids = children[v]
        k = len(kids)
        prefix = [1] * (k + 1)
        for i, c in enumerate(kids):
            prefix[i + 1] = prefix[i] * (1 + down[c])
        suffix = [1] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] * (1 + down[kids[i]])
        above = 1 + up[v] if par[v] >= 0 else 1
        for i, c in enumerate(kids):
            up[c] = prefix[i] * suffix[i + 1] * above
    return [down[v] * (1 + up[v]) if par[v] >= 0 else down[v] for v in range(T.n)]


# -- general graphs -------------------------------------------------------------

def vertex_count(G: Graph, v: int) -> int:
    """``f_G(v)``: connected subgraphs containing ``v`` (no size guard)."""
    if is_tree(G):
        return f_all_vertices(G)[v]
    return _sum_over_sets(G, connected_vertex_sets(G, anchor=v))


def core_index(G: Graph) -> int:
    """Core index F(G), the number of connected subgraphs."""
    if G.n == 0:
        return 0
    if is_forest(G):
        return tree_core_index(G)
    comps = components(G)
    if len(comps) > 1:
        return sum(core_index(induced_subgraph(G, c)) for c in comps)
    br = bridges(G)
    if br:
        u, v = br[0]
        H = remove_edge(G, u, v)
        side_u = sorted(next(c for c in components(H) if u in c))
        side_v = sorted(next(c for c in components(H) if v in c))
        G1 = induced_subgraph(G, side_u)
        G2 = induced_subgraph(G, side_v)
        return (core_index(G1) + core_index(G2)
                + vertex_count(G1, side_u.index(u)) * vertex_count(G2, side_v.index(v)))
    return _sum_over_sets(G, connected_vertex_sets(G))


def count_containing(G: Graph, S: Iterable[int], *, unsafe: bool = False) -> int:
    """``f_G(v_1, ..., v_k)``: connected subgraphs whose vertex set contains all of ``S``."""
    vs = sorted(set(S))
    if not vs:
        raise GraphError("count_containing needs a nonempty vertex set")
    for v in vs:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} is not in 0..{G.n - 1}")
    check_size("count_containing", G.n, POINTWISE_MAX_N, unsafe)
    need = sum(1 << v for v in vs)
    sets = (s for s in connected_vertex_sets(G, anchor=vs[0]) if s & need == need)
    return _sum_over_sets(G, sets)


def f_vector(G: Graph, *, unsafe: bool = False) -> list[int]:
    """``f_G(v)`` for all vertices; trees use rerooting, others the pointwise sum."""
    if is_tree(G):
        return f_all_vertices(G)
    check_size("f_vector", G.n, POINTWISE_MAX_N, unsafe)
    return [vertex_count(G, v) for v in range(G.n)]


def subgraph_core(G: Graph, *, unsafe: bool = False) -> frozenset[int]:
    """Vertices maximizing ``f_G``; ties are all reported."""
    if not is_connected(G):
        raise GraphError("subgraph_core needs a connected graph")
    f = f_vector(G, unsafe=unsafe)
    best = max(f)
    return frozenset(v for v, x in enumerate(f) if x == best)
