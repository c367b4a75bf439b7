"""Labeled simple undirected graphs on vertices ``0..n-1``.

Graph values are immutable; every operation here returns a new graph.
"""

from __future__ import annotations

from collections import deque
from contextlib import contextmanager
from contextvars import ContextVar
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]

CANONICAL_MAX_N = 12


class GraphError(ValueError):
    """Bad construction input, or an operation applied outside its domain."""


class SizeGuardError(GraphError):
    """A brute-force computation was asked for beyond its size guard."""

    def __init__(self, what: str, n: int, limit: int):
        super().__init__(f"{what}: n={n} exceeds the size guard n<={limit} (pass unsafe=True to override)")
        self.what = what
        self.n = n
        self.limit = limit


_GUARDS_LIFTED: ContextVar[bool] = ContextVar("guards_lifted", default=False)


@contextmanager
def size_guards_lifted():
    """Treat every size guard inside the block as if ``unsafe=True`` had been passed."""
    token = _GUARDS_LIFTED.set(True)
    try:
        yield
    finally:
        _GUARDS_LIFTED.reset(token)


def check_size(what: str, n: int, limit: int, unsafe: bool = False) -> None:
    if n > limit and not (unsafe or _GUARDS_LIFTED.get()):
        raise SizeGuardError(what, n, limit)


class Graph:
    """Simple graph with dense integer vertices.

    Build instances with :func:`from_edge_list`; the constructor trusts its
    input.  Equality and hashing are on the labeled structure (n, edge set).
    """

    __slots__ = ("n", "adj", "edges")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...]):
        self.n = n
        self.adj = adj
        self.edges: tuple[Edge, ...] = tuple(
            (u, v) for u in range(n) for v in sorted(adj[u]) if u < v
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def bitmasks(self) -> list[int]:
        """Neighbourhoods as integer bitmasks."""
        return [sum(1 << w for w in a) for a in self.adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair!r} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop {pair!r} is not allowed")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in nbrs))


def empty_graph(n: int) -> Graph:
    return from_edge_list(n, [])


def degree(G: Graph, v: int) -> int:
    return G.degree(v)


def _require_vertex(G: Graph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} is not in 0..{G.n - 1}")


def add_edge(G: Graph, u: int, v: int) -> Graph:
    _require_vertex(G, u, v)
    return from_edge_list(G.n, G.edges + ((u, v),))


def remove_edge(G: Graph, u: int, v: int) -> Graph:
    _require_vertex(G, u, v)
    if not G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    e = (min(u, v), max(u, v))
    return from_edge_list(G.n, [f for f in G.edges if f != e])


def add_pendant(G: Graph, v: int) -> tuple[Graph, int]:
    """Attach a new leaf at ``v``; the leaf gets id ``G.n``."""
    _require_vertex(G, v)
    return from_edge_list(G.n + 1, G.edges + ((v, G.n),)), G.n


def add_path(G: Graph, v: int, length: int) -> tuple[Graph, list[int]]:
    """Hang a path with ``length`` new edges at ``v``; returns the new ids in order from ``v``."""
    _require_vertex(G, v)
    new = list(range(G.n, G.n + length))
    chain = [v] + new
    return from_edge_list(G.n + length, G.edges + tuple(zip(chain, chain[1:]))), new


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Vertices of ``H`` are shifted up by ``G.n``."""
    return from_edge_list(G.n + H.n, G.edges + tuple((u + G.n, v + G.n) for u, v in H.edges))


def relabel(G: Graph, perm: list[int]) -> Graph:
    """Vertex ``v`` becomes ``perm[v]``."""
    return from_edge_list(G.n, [(perm[u], perm[v]) for u, v in G.edges])


def identify_vertices(G: Graph, u: int, v: int) -> Graph:
    """Merge ``u`` and ``v`` into one vertex.

    The merged vertex keeps id ``min(u, v)``; ids above ``max(u, v)`` shift
    down by one.  Parallel edges collapse and a former ``u``-``v`` edge is
    dropped, so the result stays simple.
    """
    _require_vertex(G, u, v)
    if u == v:
        raise GraphError("cannot identify a vertex with itself")
    keep, gone = min(u, v), max(u, v)

    def f(w: int) -> int:
        if w == gone:
            return keep
        return w - 1 if w > gone else w

    edges = {(min(f(a), f(b)), max(f(a), f(b))) for a, b in G.edges}
    return from_edge_list(G.n - 1, [e for e in edges if e[0] != e[1]])


def glue(G: Graph, u: int, H: Graph, h: int) -> Graph:
    """Identify vertex ``u`` of ``G`` with vertex ``h`` of ``H``.

    ``G`` keeps its labels; the vertices of ``H`` other than ``h`` follow in
    their original order.
    """
    _require_vertex(G, u)
    _require_vertex(H, h)
    U = disjoint_union(G, H)
    return identify_vertices(U, u, G.n + h)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabeled in increasing order."""
    vs = sorted(set(vertices))
    _require_vertex(G, *vs)
    pos = {v: i for i, v in enumerate(vs)}
    return from_edge_list(len(vs), [(pos[a], pos[b]) for a, b in G.edges if a in pos and b in pos])


# -- connectivity -----------------------------------------------------------

def _reach(G: Graph, start: int, banned: frozenset[int] = frozenset()) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in G.adj[x]:
            if y not in seen and y not in banned:
                seen.add(y)
                todo.append(y)
    return seen


def components(G: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by least vertex."""
    left = set(range(G.n))
    out = []
    for v in range(G.n):
        if v in left:
            comp = _reach(G, v)
            left -= comp
            out.append(frozenset(comp))
    return out


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(_reach(G, 0)) == G.n


def is_forest(G: Graph) -> bool:
    return G.m == G.n - len(components(G))


def is_tree(G: Graph) -> bool:
    return G.n > 0 and G.m == G.n - 1 and is_connected(G)


def is_unicyclic(G: Graph) -> bool:
    return G.n >= 3 and G.m == G.n and is_connected(G)


def _lowpoints(G: Graph) -> tuple[list[Edge], set[int]]:
    """Bridges and cut vertices in one iterative DFS (Tarjan)."""
    disc = [-1] * G.n
    low = [0] * G.n
    bridges: list[Edge] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(G.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(G.adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.append((min(parent, v), max(parent, v)))
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return sorted(bridges), cuts


def bridges(G: Graph) -> list[Edge]:
    return _lowpoints(G)[0]


def cut_vertices(G: Graph) -> list[int]:
    return sorted(_lowpoints(G)[1])


def is_two_connected(G: Graph) -> bool:
    if G.n < 3:
        raise GraphError(f"2-connectivity needs n >= 3, got n={G.n}")
    return is_connected(G) and not _lowpoints(G)[1]


# -- cycles -----------------------------------------------------------------

def girth(G: Graph) -> int | None:
    """Shortest cycle length, or ``None`` for a forest."""
    best = None
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in G.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    c = dist[x] + dist[y] + 1
                    if best is None or c < best:
                        best = c
    return best


def circumference(G: Graph) -> int | None:
    """Longest cycle length by exhaustive path search (small graphs only)."""
    best = 0
    for s in range(G.n):
        # cycles whose least vertex is s
        stack = [(s, 1 << s, 1)]
        while stack:
            x, seen, length = stack.pop()
            for y in G.adj[x]:
                if y == s and length >= 3:
                    best = max(best, length)
                elif y > s and not (seen >> y) & 1:
                    stack.append((y, seen | (1 << y), length + 1))
    return best or None


def pendant_vertices(G: Graph) -> frozenset[int]:
    return frozenset(v for v in range(G.n) if len(G.adj[v]) == 1)


# -- distances ----------------------------------------------------------------

def distances_from(G: Graph, s: int) -> list[int]:
    dist = [-1] * G.n
    dist[s] = 0
    q = deque([s])
    while q:
        x = q.popleft()
        for y in G.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def wiener_index(G: Graph) -> int:
    """Sum of shortest-path distances over unordered vertex pairs."""
    if G.n == 0:
        raise GraphError("Wiener index of the empty graph is undefined")
    total = 0
    for s in range(G.n):
        d = distances_from(G, s)
        if min(d) < 0:
            raise GraphError("Wiener index needs a connected graph")
        total += sum(d)
    return total // 2


# -- isomorphism --------------------------------------------------------------

def canonical_form(G: Graph, *, unsafe: bool = False) -> bytes:
    """Canonical graph6 bytes: the relabeling whose upper-triangle bitstring,
    read in column order, is lexicographically least over all permutations.

    Partial labelings are extended one position at a time, keeping only those
    whose newest column is minimal.  Labelings that leave identical
    adjacency signatures on the unplaced vertices are merged, which keeps the
    frontier small for sparse and highly symmetric graphs.
    """
    from .formats import encode_graph6

    check_size("canonical_form", G.n, CANONICAL_MAX_N, unsafe)
    n = G.n
    if n == 0:
        return encode_graph6(G).encode()
    masks = G.bitmasks()
    full = (1 << n) - 1
    # state: (order, remaining bitmask, signature per vertex)
    frontier: dict[tuple, tuple[int, ...]] = {(full, (0,) * n): ()}
    for _pos in range(n):
        best_col = None
        nxt: dict[tuple, tuple[int, ...]] = {}
        for (remaining, sig), order in frontier.items():
            r = remaining
            while r:
                low = r & -r
                w = low.bit_length() - 1
                r ^= low
                col = sig[w]
                if best_col is not None and col > best_col:
                    continue
                if best_col is None or col < best_col:
                    best_col = col
                    nxt = {}
                rem2 = remaining ^ low
                nbrs = masks[w]
                sig2 = tuple(
                    (s << 1) | ((nbrs >> x) & 1) if (rem2 >> x) & 1 else 0
                    for x, s in enumerate(sig)
                )
                key = (rem2, sig2)
                if key not in nxt:
                    nxt[key] = order + (w,)
        frontier = nxt
    order = next(iter(frontier.values()))
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old] = new
    return encode_graph6(relabel(G, perm)).encode()


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.m == H.m and sorted(G.degrees()) == sorted(H.degrees()) \
        and canonical_form(G) == canonical_form(H)


def automorphism_count(G: Graph) -> int:
    """Size of the automorphism group (via networkx VF2 matching)."""
    from networkx.algorithms.isomorphism import GraphMatcher

    H = to_networkx(G)
    return sum(1 for _ in GraphMatcher(H, H).isomorphisms_iter()) if G.n else 1


def labeled_copies(G: Graph) -> int:
    """Number of distinct labelings of ``G`` on its vertex set: n!/|Aut(G)|."""
    from math import factorial

    return factorial(G.n) // automorphism_count(G)


def to_networkx(G: Graph):
    import networkx as nx

    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def all_pairs(n: int) -> Iterator[Edge]:
    """Vertex pairs in graph6 (column-major upper triangle) order."""
    for j in range(1, n):
        for i in range(j):
            yield (i, j)


def complement_pairs(G: Graph) -> list[Edge]:
    return [(u, v) for u, v in combinations(range(G.n), 2) if not G.has_edge(u, v)]
