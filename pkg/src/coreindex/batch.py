"""Vectorized exhaustive engines over labeled classes.

Three sweeps back the extremal scans:

* :func:`graph_table` evaluates every labeled graph on ``n <= 7`` vertices at
  once (``2**C(n,2)`` edge masks).  F comes from the identity
  ``F(G) = n + #{nonempty connected edge sets A inside E(G)}``, i.e. a
  subset-sum transform of the connected-edge-set indicator.
* :func:`tree_sweep` decodes every Prüfer sequence (``n <= 9``) and runs the
  subtree DP, rerooting, concavity and core checks row-wise.
* :func:`unicyclic_sweep` builds every labeled unicyclic graph from a cycle
  vertex set, a rooted forest code and a cyclic order (``n <= 9``).

Extremes are summarized in :class:`Tally` records, which merge
associatively so index ranges can be split across worker processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graph import Graph, all_pairs, check_size, from_edge_list

TABLE_MAX_N = 7
TREE_MAX_N = 9
UNICYCLIC_MAX_N = 9
SAMPLE_CAP = 64
CHUNK = 1 << 18


def default_workers() -> int:
    """Worker count from ``COREINDEX_WORKERS``, else 1."""
    raw = os.environ.get("COREINDEX_WORKERS", "").strip()
    if not raw:
        return 1
    try:
        w = int(raw)
    except ValueError:
        raise ValueError(f"COREINDEX_WORKERS must be a positive integer, got {raw!r}") from None
    if w < 1:
        raise ValueError(f"COREINDEX_WORKERS must be a positive integer, got {raw!r}")
    return w


# -- tallies --------------------------------------------------------------------------

Edges = tuple[tuple[int, int], ...]


@dataclass
class Tally:
    """Size, extremes, multiplicities and the first few extremizers of a class."""

    size: int = 0
    lo: int | None = None
    hi: int | None = None
    n_lo: int = 0
    n_hi: int = 0
    lo_samples: list[Edges] = field(default_factory=list)
    hi_samples: list[Edges] = field(default_factory=list)

    def merge(self, other: "Tally") -> "Tally":
        """Fold ``other`` (a later index range) into ``self``; order-sensitive only in the samples."""
        self.size += other.size
        if other.lo is not None:
            if self.lo is None or other.lo < self.lo:
                self.lo, self.n_lo, self.lo_samples = other.lo, other.n_lo, list(other.lo_samples)
            elif other.lo == self.lo:
                self.n_lo += other.n_lo
                self.lo_samples = (self.lo_samples + other.lo_samples)[:SAMPLE_CAP]
        if other.hi is not None:
            if self.hi is None or other.hi > self.hi:
                self.hi, self.n_hi, self.hi_samples = other.hi, other.n_hi, list(other.hi_samples)
            elif other.hi == self.hi:
                self.n_hi += other.n_hi
                self.hi_samples = (self.hi_samples + other.hi_samples)[:SAMPLE_CAP]
        return self


def _tally(values: np.ndarray, edges_of) -> Tally:
    """Tally over a 1-D value array; ``edges_of(i)`` rebuilds row ``i``."""
    t = Tally(size=int(values.size))
    if values.size == 0:
        return t
    lo, hi = values.min(), values.max()
    lo_idx = np.flatnonzero(values == lo)
    hi_idx = np.flatnonzero(values == hi)
    t.lo, t.hi = int(lo), int(hi)
    t.n_lo, t.n_hi = int(lo_idx.size), int(hi_idx.size)
    t.lo_samples = [edges_of(int(i)) for i in lo_idx[:SAMPLE_CAP]]
    t.hi_samples = [edges_of(int(i)) for i in hi_idx[:SAMPLE_CAP]]
    return t


def merge_keyed(parts: list[dict]) -> dict:
    out: dict = {}
    for part in parts:
        for key, t in part.items():
            if key in out:
                out[key].merge(t)
            else:
                out[key] = Tally().merge(t)
    return out


def _run_chunks(fn, jobs: list, workers: int) -> list:
    """Evaluate ``fn`` over ``jobs`` and return results in job order."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*jobs)))


# -- all labeled graphs -------------------------------------------------------------------

@dataclass
class GraphTable:
    """Per-mask invariants of every labeled graph on ``n`` vertices.

    Mask bit ``b`` is the ``b``-th pair in graph6 column order.
    """

    n: int
    pairs: list[tuple[int, int]]
    F: np.ndarray
    m: np.ndarray
    components: np.ndarray
    pendants: np.ndarray
    mindeg: np.ndarray
    cut_vertex: np.ndarray

    @property
    def size(self) -> int:
        return self.F.size

    @property
    def connected(self) -> np.ndarray:
        return self.components == 1

    @property
    def acyclic(self) -> np.ndarray:
        return self.m == self.n - self.components

    @property
    def two_connected(self) -> np.ndarray:
        if self.n < 3:
            return np.zeros(self.size, dtype=bool)
        return self.connected & ~self.cut_vertex

    def graph(self, mask: int) -> Graph:
        return from_edge_list(self.n, [p for b, p in enumerate(self.pairs) if (mask >> b) & 1])

    def edges(self, mask: int) -> Edges:
        return tuple(sorted(p for b, p in enumerate(self.pairs) if (mask >> b) & 1))

    def mask_of(self, G: Graph) -> int:
        index = {p: b for b, p in enumerate(self.pairs)}
        return sum(1 << index[e] for e in G.edges)

    def tally(self, select: np.ndarray) -> Tally:
        idx = np.flatnonzero(select)
        return _tally(self.F[idx], lambda i: self.edges(int(idx[i])))


def _component_labels(n: int, pairs: list[tuple[int, int]]) -> np.ndarray:
    """``lab[mask, v]`` = least vertex in v's component, built one edge bit at a time."""
    E = len(pairs)
    lab = np.empty((1 << E, n), dtype=np.int8)
    lab[:] = np.arange(n, dtype=np.int8)
    for b, (u, w) in enumerate(pairs):
        view = lab.reshape(-1, 2, 1 << b, n)
        base = view[:, 0]
        a = base[..., u:u + 1]
        c = base[..., w:w + 1]
        lo = np.minimum(a, c)
        hi = np.maximum(a, c)
        view[:, 1] = np.where(base == hi, lo, base)
    return lab


def _subset_sum(x: np.ndarray, E: int) -> np.ndarray:
    y = x.copy()
    for b in range(E):
        view = y.reshape(-1, 2, 1 << b)
        view[:, 1] += view[:, 0]
    return y


@lru_cache(maxsize=None)
def _connected_flags(n: int) -> np.ndarray:
    if n <= 1:
        return np.ones(1, dtype=bool)
    pairs = list(all_pairs(n))
    lab = _component_labels(n, pairs)
    return (lab == np.arange(n, dtype=np.int8)).sum(axis=1) == 1


def graph_table(n: int, *, unsafe: bool = False) -> GraphTable:
    """Every labeled graph on ``n`` vertices with its F and structural invariants."""
    if n < 1:
        raise ValueError(f"graph_table needs n >= 1, got {n}")
    check_size("graph_table", n, TABLE_MAX_N, unsafe)
    return _graph_table(n)


@lru_cache(maxsize=None)
def _graph_table(n: int) -> GraphTable:
    pairs = list(all_pairs(n))
    E = len(pairs)
    masks = np.arange(1 << E, dtype=np.int64)
    lab = _component_labels(n, pairs)
    comps = (lab == np.arange(n, dtype=np.int8)).sum(axis=1).astype(np.int8)
    deg = np.zeros((1 << E, n), dtype=np.int8)
    for b, (u, w) in enumerate(pairs):
        bit = ((masks >> b) & 1).astype(np.int8)
        deg[:, u] += bit
        deg[:, w] += bit
    m = deg.sum(axis=1, dtype=np.int16) // 2
    touched = (deg > 0).sum(axis=1)
    # the edge set is connected when the untouched vertices are the only extra pieces
    conn_edges = (masks > 0) & (comps.astype(np.int64) - (n - touched) == 1)
    F = n + _subset_sum(conn_edges.astype(np.int64), E)

    cut = np.zeros(1 << E, dtype=bool)
    if n >= 3:
        sub_conn = _connected_flags(n - 1)
        for v in range(n):
            keep = [u for u in range(n) if u != v]
            new_index = {p: b for b, p in enumerate(all_pairs(n - 1))}
            proj = np.zeros(1 << E, dtype=np.int64)
            for b, (x, y) in enumerate(pairs):
                if v in (x, y):
                    continue
                nb = new_index[(keep.index(x), keep.index(y))]
                proj |= ((masks >> b) & 1) << nb
            cut |= ~sub_conn[proj]
    return GraphTable(
        n=n,
        pairs=pairs,
        F=F,
        m=m,
        components=comps,
        pendants=(deg == 1).sum(axis=1).astype(np.int8),
        mindeg=deg.min(axis=1),
        cut_vertex=cut,
    )


def spanning_copies_mask(table: GraphTable, patterns: list[Graph]) -> np.ndarray:
    """Flags the masks containing some labeled copy of a pattern on all ``n`` vertices."""
    n = table.n
    index = {p: b for b, p in enumerate(table.pairs)}
    hit = np.zeros(table.size, dtype=bool)
    for H in patterns:
        if H.n != n:
            raise ValueError("spanning patterns must have exactly n vertices")
        seen = set()
        for perm in permutations(range(n)):
            mask = 0
            for u, v in H.edges:
                a, b = perm[u], perm[v]
                mask |= 1 << index[(min(a, b), max(a, b))]
            seen.add(mask)
        hit[np.fromiter(seen, dtype=np.int64)] = True
    E = len(table.pairs)
    for b in range(E):
        view = hit.reshape(-1, 2, 1 << b)
        view[:, 1] |= view[:, 0]
    return hit


# -- labeled trees ----------------------------------------------------------------------

@dataclass
class TreeSweep:
    """Aggregates over all ``n**(n-2)`` labeled trees.

    ``by_leaves[k]`` tallies F over trees with ``k`` leaves.  The three
    counters count violations of the tree-shape claims and must be zero.
    """

    n: int
    all: Tally
    by_leaves: dict[int, Tally]
    concavity_violations: int
    core_size_violations: int
    core_adjacency_violations: int
    wiener: Tally | None = None


def _decode_prufer(codes: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Parent array (rooted at n-1) and leaf-removal order for each code row."""
    N = codes.shape[0]
    rows = np.arange(N)
    deg = np.ones((N, n), dtype=np.int16)
    for j in range(n - 2):
        np.add.at(deg, (rows, codes[:, j]), 1)
    parent = np.full((N, n), -1, dtype=np.int16)
    order = np.empty((N, n - 1), dtype=np.int16)
    for j in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)
        p = codes[:, j]
        parent[rows, leaf] = p
        order[:, j] = leaf
        deg[rows, leaf] = 0
        deg[rows, p] -= 1
    # the last pair always contains n-1, which is never the smallest leaf
    deg[:, n - 1] = 0
    last = np.argmax(deg == 1, axis=1)
    parent[rows, last] = n - 1
    order[:, n - 2] = last
    return parent, order


def _prufer_codes(start: int, stop: int, n: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    codes = np.empty((idx.size, max(n - 2, 0)), dtype=np.int16)
    for j in range(n - 3, -1, -1):
        codes[:, j] = idx % n
        idx //= n
    return codes


def tree_rows(n: int, start: int, stop: int) -> dict[str, np.ndarray]:
    """Row-wise arrays for the trees with Prüfer indices ``start..stop-1`` (n >= 3).

    ``parent`` is rooted at n-1, ``order`` lists vertices leaves-first,
    ``down`` counts subtrees topped at each vertex and ``f`` is f_T(v).
    """
    codes = _prufer_codes(start, stop, n)
    parent, order = _decode_prufer(codes, n)
    N = codes.shape[0]
    rows = np.arange(N)
    down = np.ones((N, n), dtype=np.int64)
    size = np.ones((N, n), dtype=np.int64)
    for j in range(n - 1):
        c = order[:, j]
        p = parent[rows, c]
        down[rows, p] *= 1 + down[rows, c]
        size[rows, p] += size[rows, c]
    # reroot top-down; exact division removes the child's own branch from its parent
    f = down.copy()
    for j in range(n - 2, -1, -1):
        c = order[:, j]
        p = parent[rows, c]
        dc = down[rows, c]
        above = f[rows, p] // (1 + dc)
        f[rows, c] = dc * (1 + above)
    return {"parent": parent, "order": order, "down": down, "size": size, "f": f}


def _tree_chunk(n: int, start: int, stop: int) -> tuple:
    a = tree_rows(n, start, stop)
    parent, order, size, f = a["parent"], a["order"], a["size"], a["f"]
    N = parent.shape[0]
    rows = np.arange(N)
    F = a["down"].sum(axis=1)
    wiener = np.zeros(N, dtype=np.int64)
    top1 = np.zeros((N, n), dtype=np.int64)
    top2 = np.zeros((N, n), dtype=np.int64)
    deg = np.zeros((N, n), dtype=np.int16)

    def offer(at: np.ndarray, val: np.ndarray) -> None:
        t1 = top1[rows, at]
        bigger = val > t1
        top2[rows, at] = np.where(bigger, t1, np.maximum(top2[rows, at], val))
        top1[rows, at] = np.where(bigger, val, t1)

    for j in range(n - 1):
        c = order[:, j]
        p = parent[rows, c]
        s = size[rows, c]
        wiener += s * (n - s)
        offer(c, f[rows, p])
        offer(p, f[rows, c])
        deg[rows, c] += 1
        deg[rows, p] += 1
    inner = deg >= 2
    concave_bad = int(((2 * f - top1 - top2 <= 0) & inner).sum())

    best = f.max(axis=1, keepdims=True)
    at_best = f == best
    core_n = at_best.sum(axis=1)
    size_bad = int(((core_n < 1) | (core_n > 2)).sum())
    two = np.flatnonzero(core_n == 2)
    adj_bad = 0
    if two.size:
        a = np.argmax(at_best[two], axis=1)
        b = n - 1 - np.argmax(at_best[two][:, ::-1], axis=1)
        pa = parent[two, a]
        pb = parent[two, b]
        adj_bad = int((~((pa == b) | (pb == a))).sum())

    leaves = (deg == 1).sum(axis=1)

    def edges_of(sub: np.ndarray):
        def rebuild(i: int) -> Edges:
            r = int(sub[i])
            return tuple(sorted((min(v, int(parent[r, v])), max(v, int(parent[r, v])))
                                for v in range(n) if parent[r, v] >= 0))
        return rebuild

    everything = np.arange(N)
    keyed = {"all": _tally(F, edges_of(everything)), "wiener": _tally(wiener, edges_of(everything))}
    for k in np.unique(leaves):
        sel = np.flatnonzero(leaves == k)
        keyed[("leaves", int(k))] = _tally(F[sel], edges_of(sel))
    return keyed, concave_bad, size_bad, adj_bad


def _tree_values_chunk(n: int, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    a = tree_rows(n, start, stop)
    rows = np.arange(a["order"].shape[0])
    wiener = np.zeros(rows.size, dtype=np.int64)
    for j in range(n - 1):
        s = a["size"][rows, a["order"][:, j]]
        wiener += s * (n - s)
    return a["down"].sum(axis=1), wiener


def tree_values(n: int, *, unsafe: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """(F, W) for every labeled tree in Prüfer order."""
    check_size("tree_values", n, TREE_MAX_N, unsafe)
    if n <= 2:
        return np.array([1 if n == 1 else 3]), np.array([0 if n == 1 else 1])
    total = n ** (n - 2)
    parts = [_tree_values_chunk(n, s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _small_tree_sweep(n: int) -> TreeSweep:
    if n == 1:
        t = Tally(size=1, lo=1, hi=1, n_lo=1, n_hi=1, lo_samples=[()], hi_samples=[()])
        w = Tally(size=1, lo=0, hi=0, n_lo=1, n_hi=1, lo_samples=[()], hi_samples=[()])
        return TreeSweep(1, t, {0: t}, 0, 0, 0, w)
    e = ((0, 1),)
    t = Tally(size=1, lo=3, hi=3, n_lo=1, n_hi=1, lo_samples=[e], hi_samples=[e])
    w = Tally(size=1, lo=1, hi=1, n_lo=1, n_hi=1, lo_samples=[e], hi_samples=[e])
    return TreeSweep(2, t, {2: t}, 0, 0, 0, w)


_tree_cache: dict[int, TreeSweep] = {}


def tree_sweep(n: int, *, workers: int | None = None, unsafe: bool = False) -> TreeSweep:
    """Exhaustive pass over every labeled tree on ``n`` vertices."""
    if n < 1:
        raise ValueError(f"tree_sweep needs n >= 1, got {n}")
    check_size("tree_sweep", n, TREE_MAX_N, unsafe)
    if n in _tree_cache:
        return _tree_cache[n]
    if n <= 2:
        return _small_tree_sweep(n)
    workers = default_workers() if workers is None else workers
    total = n ** (n - 2)
    jobs = [(n, s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    results = _run_chunks(_tree_chunk, jobs, workers)
    keyed = merge_keyed([r[0] for r in results])
    sweep = TreeSweep(
        n=n,
        all=keyed.pop("all"),
        wiener=keyed.pop("wiener"),
        by_leaves={k[1]: t for k, t in sorted(keyed.items())},
        concavity_violations=sum(r[1] for r in results),
        core_size_violations=sum(r[2] for r in results),
        core_adjacency_violations=sum(r[3] for r in results),
    )
    _tree_cache[n] = sweep
    return sweep


# -- labeled unicyclic graphs --------------------------------------------------------------

@dataclass
class UnicyclicSweep:
    n: int
    all: Tally
    by_girth: dict[int, Tally]


def cyclic_orders(g: int) -> list[tuple[int, ...]]:
    """Each undirected cyclic arrangement of ``0..g-1`` once: starts at 0, second < last."""
    return [(0,) + rest for rest in permutations(range(1, g)) if rest[0] < rest[-1]]


def _forest_codes(n: int, roots: tuple[int, ...], start: int, stop: int) -> np.ndarray:
    """Codes of rooted forests: ``m-1`` free entries in ``0..n-1`` and a final root."""
    m = n - len(roots)
    idx = np.arange(start, stop, dtype=np.int64)
    codes = np.empty((idx.size, m), dtype=np.int16)
    codes[:, m - 1] = np.asarray(roots, dtype=np.int16)[idx % len(roots)]
    idx //= len(roots)
    for j in range(m - 2, -1, -1):
        codes[:, j] = idx % n
        idx //= n
    return codes


def _decode_forest(codes: np.ndarray, n: int, roots: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    N, m = codes.shape
    rows = np.arange(N)
    cnt = np.zeros((N, n), dtype=np.int16)
    for j in range(m):
        np.add.at(cnt, (rows, codes[:, j]), 1)
    blocked = np.zeros((N, n), dtype=bool)
    blocked[:, list(roots)] = True
    parent = np.full((N, n), -1, dtype=np.int16)
    order = np.empty((N, m), dtype=np.int16)
    for j in range(m):
        leaf = np.argmax(~blocked & (cnt == 0), axis=1)
        p = codes[:, j]
        parent[rows, leaf] = p
        order[:, j] = leaf
        blocked[rows, leaf] = True
        cnt[rows, p] -= 1
    return parent, order


def _unicyclic_chunk(n: int, g: int, roots: tuple[int, ...], start: int, stop: int) -> dict:
    m = n - g
    if m == 0:
        parent = np.full((1, n), -1, dtype=np.int16)
        order = np.empty((1, 0), dtype=np.int16)
    else:
        parent, order = _decode_forest(_forest_codes(n, roots, start, stop), n, roots)
    N = parent.shape[0]
    rows = np.arange(N)
    down = np.ones((N, n), dtype=np.int64)
    for j in range(m):
        c = order[:, j]
        p = parent[rows, c]
        down[rows, p] *= 1 + down[rows, c]
    trees_part = down.sum(axis=1)
    at_roots = down[:, list(roots)]
    orders = np.asarray(cyclic_orders(g), dtype=np.int64)
    O = orders.shape[0]
    # F = subtrees of the hanging trees + proper arcs of the cycle + the whole cycle
    seq = at_roots[:, orders]                       # N x O x g
    total = np.repeat(trees_part[:, None], O, axis=1)
    whole = np.prod(seq, axis=2)
    total += whole
    for s in range(g):
        run = seq[:, :, s].copy()
        for j in range(1, g):
            run *= seq[:, :, (s + j) % g]
            total += run
    F = total.reshape(-1)

    def rebuild(i: int) -> Edges:
        r, o = divmod(i, O)
        cyc = [roots[x] for x in orders[o]]
        es = [(min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])]
        es += [(min(v, int(parent[r, v])), max(v, int(parent[r, v]))) for v in range(n) if parent[r, v] >= 0]
        return tuple(sorted(es))

    return {("girth", g): _tally(F, rebuild)}


_uni_cache: dict[int, UnicyclicSweep] = {}


def unicyclic_count(n: int) -> int:
    return sum(math.comb(n, g) * (g * n ** (n - g - 1) if g < n else 1) * math.factorial(g - 1) // 2
               for g in range(3, n + 1))


def unicyclic_sweep(n: int, *, workers: int | None = None, unsafe: bool = False) -> UnicyclicSweep:
    """Exhaustive pass over every labeled unicyclic graph on ``n`` vertices."""
    if n < 3:
        raise ValueError(f"unicyclic graphs need n >= 3, got {n}")
    check_size("unicyclic_sweep", n, UNICYCLIC_MAX_N, unsafe)
    if n in _uni_cache:
        return _uni_cache[n]
    workers = default_workers() if workers is None else workers
    jobs = []
    for g in range(3, n + 1):
        per_set = g * n ** (n - g - 1) if g < n else 1
        step = max(1, CHUNK // len(cyclic_orders(g)))
        for roots in combinations(range(n), g):
            for s in range(0, per_set, step):
                jobs.append((n, g, roots, s, min(s + step, per_set)))
    keyed = merge_keyed(_run_chunks(_unicyclic_chunk, jobs, workers))
    by_girth = {k[1]: t for k, t in sorted(keyed.items())}
    overall = Tally()
    for g in sorted(by_girth):
        overall.merge(by_girth[g])
    sweep = UnicyclicSweep(n=n, all=overall, by_girth=by_girth)
    _uni_cache[n] = sweep
    return sweep


def clear_caches() -> None:
    _tree_cache.clear()
    _uni_cache.clear()
    _graph_table.cache_clear()
