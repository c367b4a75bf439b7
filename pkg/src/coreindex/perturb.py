"""Graph perturbations with a known effect on the core index.

Each operation takes the graph before the move and returns a
:class:`PerturbationOutcome` holding both graphs, both counts, the direction
the count must move and, where the decomposition identities pin it down, the
exact change.  Preconditions are recomputed here with ``count_containing``
rather than trusted, and a violated one raises :class:`PreconditionError`.

Pendant structures (the paths of a grafting move, the leaves of a pendant
move) are recognized in the given graph: a pendant path at ``v`` is a chain
``v - x1 - ... - xk`` whose inner vertices have degree 2 and whose end is a
leaf.  When the requested structure is missing or could be read in more than
one way the move is refused.

New vertices take the next free ids.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import formulas
from .counting import core_index, core_index_bruteforce, count_containing
from .families import FamilySpec, Kind, build, prufer_decode, spec
from .graph import (
    Graph,
    GraphError,
    add_edge,
    add_path,
    add_pendant,
    bridges,
    complement_pairs,
    components,
    from_edge_list,
    glue,
    identify_vertices,
    induced_subgraph,
    is_connected,
    pendant_vertices,
    remove_edge,
)


class Lemma(enum.Enum):
    EFFECT_1 = "lemma-effect-1"
    EFFECT_2 = "lemma-effect-2"
    EFFECT_3 = "lemma-effect-3"
    EFFECT_4 = "lemma-effect-4"
    EFFECT_5 = "lemma-effect-5"
    TUNING_FORK_1 = "lemma-3uni1"
    TUNING_FORK_2 = "lemma-3uni2"


# +1: the move must increase F; -1: it must decrease F
DIRECTION = {
    Lemma.EFFECT_1: 1,
    Lemma.EFFECT_2: 1,
    Lemma.EFFECT_3: -1,
    Lemma.EFFECT_4: 1,
    Lemma.EFFECT_5: -1,
    Lemma.TUNING_FORK_1: 1,
    Lemma.TUNING_FORK_2: -1,
}


class PreconditionError(GraphError):
    pass


@dataclass(frozen=True)
class PerturbationOutcome:
    """``gap = f_after - f_before``.

    ``expected_gap`` is the exact change predicted by the decomposition
    identities (``None`` when only a bound is known); ``bound`` is the
    proven lower bound on ``|gap|``.
    """

    lemma: Lemma
    before: Graph
    after: Graph
    f_before: int
    f_after: int
    expected_gap: int | None = None
    bound: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def gap(self) -> int:
        return self.f_after - self.f_before

    @property
    def strict(self) -> bool:
        return self.gap * DIRECTION[self.lemma] > 0

    @property
    def exact(self) -> bool:
        return self.expected_gap is None or self.gap == self.expected_gap

    @property
    def within_bound(self) -> bool:
        return self.bound is None or abs(self.gap) >= self.bound

    @property
    def holds(self) -> bool:
        return self.strict and self.exact and self.within_bound


Oracle = Callable[[Graph], int]


def brute_oracle(G: Graph) -> int:
    return core_index_bruteforce(G)


def _outcome(lemma, before, after, oracle, expected=None, bound=None, **details) -> PerturbationOutcome:
    oracle = oracle or core_index
    return PerturbationOutcome(lemma, before, after, oracle(before), oracle(after),
                               expected, bound, details)


def _fail(lemma: Lemma, why: str) -> None:
    raise PreconditionError(f"{lemma.value}: {why}")


def _f(G: Graph, *vs: int) -> int:
    return count_containing(G, vs)


def _require_connected(lemma: Lemma, G: Graph, name: str = "G") -> None:
    if G.n == 0 or not is_connected(G):
        _fail(lemma, f"{name} must be connected and nonempty")


def _bridge_sides(lemma: Lemma, G: Graph, u: int, v: int) -> tuple[list[int], list[int]]:
    if not G.has_edge(u, v):
        _fail(lemma, f"({u}, {v}) is not an edge")
    if (min(u, v), max(u, v)) not in bridges(G):
        _fail(lemma, f"({u}, {v}) is not a bridge")
    H = remove_edge(G, u, v)
    comps = components(H)
    side_u = sorted(next(c for c in comps if u in c))
    side_v = sorted(next(c for c in comps if v in c))
    return side_u, side_v


def _after_identify(u: int, v: int, w: int) -> int:
    """Id of vertex ``w`` after ``identify_vertices(G, u, v)``."""
    keep, gone = min(u, v), max(u, v)
    if w == gone:
        return keep
    return w - 1 if w > gone else w


# -- bridge contractions -----------------------------------------------------------------

def contract_bridge_add_pendant(G: Graph, bridge: tuple[int, int], *,
                                oracle: Oracle | None = None) -> PerturbationOutcome:
    """Identify the ends of a bridge and hang a new leaf on the merged vertex."""
    lemma = Lemma.EFFECT_1
    _require_connected(lemma, G)
    u, v = bridge
    side_u, side_v = _bridge_sides(lemma, G, u, v)
    if G.degree(u) == 1 or G.degree(v) == 1:
        _fail(lemma, "neither end of the bridge may be a pendant vertex")
    G1 = induced_subgraph(G, side_u)
    G2 = induced_subgraph(G, side_v)
    f1 = _f(G1, side_u.index(u))
    f2 = _f(G2, side_v.index(v))
    merged = identify_vertices(G, u, v)
    after, leaf = add_pendant(merged, min(u, v))
    return _outcome(lemma, G, after, oracle, (f1 - 1) * (f2 - 1), None,
                    merged_vertex=min(u, v), new_leaf=leaf, f_G1_u=f1, f_G2_v=f2)


def contract_bridge_pendant_at(G: Graph, bridge: tuple[int, int], x: int, *,
                               oracle: Oracle | None = None) -> PerturbationOutcome:
    """Identify the ends of a bridge and hang a new leaf on ``x``, on ``u``'s side.

    Needs ``f_G1(u) <= f_G2(v)`` and ``f_G1(x, u) >= 2``, where ``G1`` and
    ``G2`` are the sides of the bridge holding ``u`` and ``v``.
    """
    lemma = Lemma.EFFECT_2
    _require_connected(lemma, G)
    u, v = bridge
    side_u, side_v = _bridge_sides(lemma, G, u, v)
    if x not in side_u:
        _fail(lemma, f"x={x} is not on u's side of the bridge")
    G1 = induced_subgraph(G, side_u)
    G2 = induced_subgraph(G, side_v)
    iu, ix, iv = side_u.index(u), side_u.index(x), side_v.index(v)
    f1u, f2v = _f(G1, iu), _f(G2, iv)
    if f1u > f2v:
        _fail(lemma, f"need f_G1(u) <= f_G2(v), got {f1u} > {f2v}")
    f1xu = _f(G1, ix, iu)
    if f1xu < 2:
        _fail(lemma, f"need f_G1(x, u) >= 2, got {f1xu}")
    f1x = _f(G1, ix)
    merged = identify_vertices(G, u, v)
    after, leaf = add_pendant(merged, _after_identify(u, v, x))
    F1, F2 = core_index(G1), core_index(G2)
    F_before = F1 + F2 + f1u * f2v
    F_after = F1 + F2 - 1 + (f1u - 1) * (f2v - 1) + 1 + f1x + f1xu * (f2v - 1)
    return _outcome(lemma, G, after, oracle, F_after - F_before, None,
                    new_leaf=leaf, f_G1_u=f1u, f_G2_v=f2v, f_G1_xu=f1xu)


# -- pendant structures -------------------------------------------------------------------

def pendant_paths(G: Graph, v: int) -> list[list[int]]:
    """Every pendant path at ``v``, listed from the vertex next to ``v`` outwards."""
    out = []
    for start in sorted(G.adj[v]):
        chain = [start]
        prev, cur = v, start
        while G.degree(cur) == 2:
            nxt = next(w for w in G.adj[cur] if w != prev)
            if nxt == v:
                break
            prev, cur = cur, nxt
            chain.append(cur)
        if G.degree(cur) == 1:
            out.append(chain)
    return out


def _find_paths(lemma: Lemma, G: Graph, v: int, lengths: list[int]) -> list[list[int]]:
    """Pick maximal pendant paths at ``v`` with the requested edge counts.

    Two maximal pendant paths of equal length at the same vertex are
    swapped by an automorphism of ``G``, so taking the lowest-numbered ones
    loses nothing; a missing length is the only failure.
    """
    found = pendant_paths(G, v)
    picked = []
    for length in sorted(set(lengths)):
        want = lengths.count(length)
        have = [p for p in found if len(p) == length]
        if len(have) < want:
            _fail(lemma, f"vertex {v} has {len(have)} pendant path(s) with {length} edges, need {want}")
        picked += have[:want]
    return sorted(picked, key=lambda p: (lengths.index(len(p)), p))


def graft_edge(G: Graph, v: int, k: int, l: int, *,
               oracle: Oracle | None = None) -> PerturbationOutcome:
    """Turn ``G_{k,l}`` into ``G_{k-1,l+1}`` by moving the last edge of the short path.

    ``G`` must carry pendant paths of ``k`` and ``l`` edges at ``v``; with
    ``v_1..v_k`` and ``u_1..u_l`` their vertices, edge ``{v_{k-1}, v_k}``
    is replaced by ``{u_l, v_k}``.
    """
    lemma = Lemma.EFFECT_3
    if not 1 <= k <= l:
        _fail(lemma, f"need 1 <= k <= l, got k={k}, l={l}")
    _require_connected(lemma, G)
    if k == l:
        P, Q = _find_paths(lemma, G, v, [k, k])
    else:
        found = _find_paths(lemma, G, v, [k, l])
        P = next(p for p in found if len(p) == k)
        Q = next(p for p in found if len(p) == l)
    rest = [w for w in range(G.n) if w not in set(P) | set(Q)]
    if len(rest) < 2:
        _fail(lemma, "the graph left after removing both paths needs at least 2 vertices")
    base = induced_subgraph(G, rest)
    fv = _f(base, rest.index(v))
    chain_p = [v] + P
    after = add_edge(remove_edge(G, chain_p[k - 1], chain_p[k]), Q[-1], chain_p[k])
    return _outcome(lemma, G, after, oracle, -(fv - 1) * (l - k + 1), None, f_G_v=fv)


def _leaves_at(G: Graph, v: int) -> list[int]:
    return sorted(w for w in G.adj[v] if G.degree(w) == 1)


def move_pendants(G: Graph, u: int, v: int, n1: int, n2: int, *,
                  oracle: Oracle | None = None) -> PerturbationOutcome:
    """Move the ``n2`` leaves at ``v`` over to ``u``, which already holds ``n1``.

    The base graph (``G`` without those leaves) must satisfy
    ``f(u) >= f(v)``.
    """
    lemma = Lemma.EFFECT_4
    if n1 < 1 or n2 < 1:
        _fail(lemma, f"need n1, n2 >= 1, got {n1}, {n2}")
    if u == v:
        _fail(lemma, "u and v must differ")
    _require_connected(lemma, G)
    at_u, at_v = _leaves_at(G, u), _leaves_at(G, v)
    if len(at_u) != n1 or len(at_v) != n2:
        _fail(lemma, f"u carries {len(at_u)} leaves and v carries {len(at_v)}; expected {n1} and {n2}")
    rest = [w for w in range(G.n) if w not in set(at_u) | set(at_v)]
    base = induced_subgraph(G, rest)
    if base.n < 2 or not is_connected(base):
        _fail(lemma, "the base graph must be connected with at least 2 vertices")
    bu, bv = rest.index(u), rest.index(v)
    fu, fv, fuv = _f(base, bu), _f(base, bv), _f(base, bu, bv)
    if fu < fv:
        _fail(lemma, f"need f(u) >= f(v) in the base graph, got {fu} < {fv}")
    after = G
    for w in at_v:
        after = add_edge(remove_edge(after, v, w), u, w)

    def star(m: int) -> int:
        return 2 ** m + m

    F_after = star(n1 + n2) - 1 + (fu - 1) * (2 ** (n1 + n2) - 1)
    F_before = (star(n1) + star(n2) - 2 + (fu - 1) * (2 ** n1 - 1)
                + (fv - 1) * (2 ** n2 - 1) + fuv * (2 ** n1 - 1) * (2 ** n2 - 1))
    return _outcome(lemma, G, after, oracle, F_after - F_before, None, f_u=fu, f_v=fv, f_uv=fuv)


def merge_paths(G: Graph, u: int, v: int, l: int, k: int, *,
                oracle: Oracle | None = None) -> PerturbationOutcome:
    """Turn ``G^p_uv(l, k)`` into ``G^p_uv(l+k-1, 1)``.

    ``l`` and ``k`` count vertices of the attached paths, the attachment
    vertex included, so ``u`` carries a pendant path with ``l-1`` edges and
    ``v`` one with ``k-1``.  The path at ``v`` is moved to the tip of the
    path at ``u``.  The base graph must satisfy ``f(u, v) >= 2`` and
    ``f(u) <= f(v)``.
    """
    lemma = Lemma.EFFECT_5
    if l < 2 or k < 2:
        _fail(lemma, f"need l, k >= 2, got l={l}, k={k}")
    if u == v:
        _fail(lemma, "u and v must differ")
    _require_connected(lemma, G)
    (P,) = _find_paths(lemma, G, u, [l - 1])
    (Q,) = _find_paths(lemma, G, v, [k - 1])
    if set(P) & set(Q) or v in P or u in Q:
        _fail(lemma, "the two pendant paths overlap")
    rest = [w for w in range(G.n) if w not in set(P) | set(Q)]
    base = induced_subgraph(G, rest)
    bu, bv = rest.index(u), rest.index(v)
    fuv = _f(base, bu, bv)
    if fuv < 2:
        _fail(lemma, f"need f(u, v) >= 2 in the base graph, got {fuv}")
    if base.n < 3:
        _fail(lemma, "the base graph needs at least 3 vertices")
    fu, fv = _f(base, bu), _f(base, bv)
    if fu > fv:
        _fail(lemma, f"need f(u) <= f(v) in the base graph, got {fu} > {fv}")
    after = add_edge(remove_edge(G, v, Q[0]), P[-1], Q[0])
    Fp = formulas.F_path
    F_before = (Fp(l) + Fp(k) - 2 + (fu - 1) * (l - 1) + (fv - 1) * (k - 1)
                + fuv * (l - 1) * (k - 1))
    F_after = Fp(l + k - 1) - 1 + (fu - 1) * (l + k - 2)
    return _outcome(lemma, G, after, oracle, F_after - F_before, (fuv - 1) * (l - 1) * (k - 1),
                    f_u=fu, f_v=fv, f_uv=fuv)


# -- lollipop attachments --------------------------------------------------------------

def _lollipop(lollipop: FamilySpec | tuple[int, int]) -> tuple[int, int]:
    if isinstance(lollipop, FamilySpec):
        if lollipop.kind is not Kind.LOLLIPOP:
            raise GraphError(f"expected a lollipop spec, got {lollipop}")
        return lollipop.params
    n, g = lollipop
    spec(Kind.LOLLIPOP, n, g)
    return n, g


def reattach_lollipop(G: Graph, u: int, lollipop: FamilySpec | tuple[int, int], target_vertex: int, *,
                      oracle: Oracle | None = None) -> PerturbationOutcome:
    """Glue a lollipop to ``u`` at its pendant vertex (before) or at ``target_vertex`` (after).

    ``target_vertex`` is a non-pendant vertex in the lollipop's own labeling;
    in either result the lollipop's other vertices follow those of ``G``.
    """
    lemma = Lemma.TUNING_FORK_1
    if G.n < 2:
        _fail(lemma, "G needs at least 2 vertices")
    _require_connected(lemma, G)
    if not 0 <= u < G.n:
        _fail(lemma, f"u={u} is not a vertex of G")
    n, g = _lollipop(lollipop)
    L = build(spec(Kind.LOLLIPOP, n, g))
    tip = n - 1
    if not 0 <= target_vertex < n or target_vertex == tip:
        _fail(lemma, f"target {target_vertex} must be a non-pendant vertex of the lollipop")
    before = glue(G, u, L, tip)
    after = glue(G, u, L, target_vertex)
    fu = _f(G, u)
    f_tip, f_target = _f(L, tip), _f(L, target_vertex)
    return _outcome(lemma, before, after, oracle, (fu - 1) * (f_target - f_tip), None,
                    f_G_u=fu, f_tip=f_tip, f_target=f_target)


def prefer_girth_three(G: Graph, u: int, m: int, *,
                       oracle: Oracle | None = None) -> PerturbationOutcome:
    """Swap a pendant-glued ``U^l_{m+1,m}`` at ``u`` for ``U^l_{m+1,3}`` (``m >= 4``)."""
    lemma = Lemma.TUNING_FORK_2
    if m < 4:
        _fail(lemma, f"need m >= 4, got {m}")
    _require_connected(lemma, G)
    if not 0 <= u < G.n:
        _fail(lemma, f"u={u} is not a vertex of G")
    long_ = build(spec(Kind.LOLLIPOP, m + 1, m))
    short = build(spec(Kind.LOLLIPOP, m + 1, 3))
    before = glue(G, u, long_, m)
    after = glue(G, u, short, m)
    fu = _f(G, u)
    tip_long, tip_short = _f(long_, m), _f(short, m)
    exact = (formulas.F_lollipop(m + 1, 3) - formulas.F_lollipop(m + 1, m)
             + (fu - 1) * (tip_short - tip_long))
    return _outcome(lemma, before, after, oracle, exact, (fu - 1) * (m - 4 + comb(m - 1, 2)),
                    f_G_u=fu)


def lollipop_pendant_is_weakest(n: int, g: int, *, unsafe: bool = False) -> list[tuple[int, int, int]]:
    """Pairs ``(v, f(pendant), f(v))`` where a non-pendant ``v`` fails ``f(pendant) < f(v)``."""
    L = build(spec(Kind.LOLLIPOP, n, g))
    tip = count_containing(L, [n - 1], unsafe=unsafe)
    bad = []
    for v in range(n - 1):
        fv = count_containing(L, [v], unsafe=unsafe)
        if not tip < fv:
            bad.append((v, tip, fv))
    return bad


# -- random instances ----------------------------------------------------------------------

def random_connected(rng: random.Random, n: int, extra: int = 0) -> Graph:
    """Uniform labeled tree plus up to ``extra`` random chords."""
    if n == 1:
        return from_edge_list(1, [])
    if n == 2:
        return from_edge_list(2, [(0, 1)])
    G = prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
    for _ in range(extra):
        free = complement_pairs(G)
        if not free:
            break
        G = add_edge(G, *rng.choice(free))
    return G


def _join(A: Graph, a: int, B: Graph, b: int) -> tuple[Graph, int, int]:
    """Disjoint union of A and B plus the edge from ``a`` to ``b``."""
    U = from_edge_list(A.n + B.n, A.edges + tuple((x + A.n, y + A.n) for x, y in B.edges)
                       + ((a, b + A.n),))
    return U, a, b + A.n


def _shuffle(rng: random.Random, G: Graph) -> tuple[Graph, list[int]]:
    perm = list(range(G.n))
    rng.shuffle(perm)
    return from_edge_list(G.n, [(perm[a], perm[b]) for a, b in G.edges]), perm


def instance(lemma: Lemma, rng: random.Random, max_n: int = 9,
             oracle: Oracle | None = None) -> PerturbationOutcome:
    """One random precondition-satisfying instance of ``lemma`` on at most ``max_n`` vertices."""
    for _ in range(1000):
        try:
            return _draw(lemma, rng, max_n, oracle)
        except PreconditionError:
            continue
    raise RuntimeError(f"could not draw an instance of {lemma.value}")


def _draw(lemma: Lemma, rng: random.Random, max_n: int, oracle) -> PerturbationOutcome:
    extra = lambda: rng.choice((0, 0, 1, 1, 2))  # noqa: E731
    if lemma is Lemma.EFFECT_1:
        n1 = rng.randint(2, max_n - 2)
        n2 = rng.randint(2, max_n - n1)
        A, B = random_connected(rng, n1, extra()), random_connected(rng, n2, extra())
        G, u, v = _join(A, rng.randrange(n1), B, rng.randrange(n2))
        G, perm = _shuffle(rng, G)
        return contract_bridge_add_pendant(G, (perm[u], perm[v]), oracle=oracle)
    if lemma is Lemma.EFFECT_2:
        n1 = rng.randint(2, max_n - 1)
        n2 = rng.randint(1, max_n - n1)
        A, B = random_connected(rng, n1, extra()), random_connected(rng, n2, extra())
        a, b = rng.randrange(n1), rng.randrange(n2)
        fa, fb = count_containing(A, [a]), count_containing(B, [b])
        if fa > fb:
            _fail(lemma, "retry")
        x = rng.randrange(n1)
        G, u, v = _join(A, a, B, b)
        G, perm = _shuffle(rng, G)
        return contract_bridge_pendant_at(G, (perm[u], perm[v]), perm[x], oracle=oracle)
    if lemma is Lemma.EFFECT_3:
        nb = rng.randint(2, max_n - 2)
        k = rng.randint(1, (max_n - nb) // 2)
        l = rng.randint(k, max_n - nb - k)
        base = random_connected(rng, nb, extra())
        v = rng.randrange(nb)
        G, _ = add_path(base, v, k)
        G, _ = add_path(G, v, l)
        G, perm = _shuffle(rng, G)
        return graft_edge(G, perm[v], k, l, oracle=oracle)
    if lemma is Lemma.EFFECT_4:
        nb = rng.randint(2, max_n - 2)
        n1 = rng.randint(1, max_n - nb - 1)
        n2 = rng.randint(1, max_n - nb - n1)
        base = random_connected(rng, nb, extra())
        u, v = rng.sample(range(nb), 2)
        if count_containing(base, [u]) < count_containing(base, [v]):
            u, v = v, u
        G = base
        for _ in range(n1):
            G, _ = add_pendant(G, u)
        for _ in range(n2):
            G, _ = add_pendant(G, v)
        G, perm = _shuffle(rng, G)
        return move_pendants(G, perm[u], perm[v], n1, n2, oracle=oracle)
    if lemma is Lemma.EFFECT_5:
        nb = rng.randint(3, max_n - 2)
        l = rng.randint(2, max_n - nb)
        k = rng.randint(2, max_n - nb - l + 2)
        base = random_connected(rng, nb, rng.choice((1, 1, 2)))
        u, v = rng.sample(range(nb), 2)
        if count_containing(base, [u]) > count_containing(base, [v]):
            u, v = v, u
        G, _ = add_path(base, u, l - 1)
        G, _ = add_path(G, v, k - 1)
        G, perm = _shuffle(rng, G)
        return merge_paths(G, perm[u], perm[v], l, k, oracle=oracle)
    if lemma is Lemma.TUNING_FORK_1:
        nl = rng.randint(4, max_n - 1)
        g = rng.randint(3, nl - 1)
        nb = rng.randint(2, max_n - nl + 1)
        base = random_connected(rng, nb, extra())
        return reattach_lollipop(base, rng.randrange(nb), (nl, g), rng.randrange(nl - 1), oracle=oracle)
    if lemma is Lemma.TUNING_FORK_2:
        m = rng.randint(4, max_n - 1)
        nb = rng.randint(1, max_n - m)
        base = random_connected(rng, nb, extra())
        return prefer_girth_three(base, rng.randrange(nb), m, oracle=oracle)
    raise ValueError(f"unknown lemma {lemma}")


def campaign(lemma: Lemma, cases: int = 200, seed: int = 0, max_n: int = 9,
             oracle: Oracle | None = brute_oracle) -> list[PerturbationOutcome]:
    """``cases`` random instances, case ``i`` drawn from its own seed ``f"{seed}:{lemma}:{i}"``."""
    return [instance(lemma, random.Random(f"{seed}:{lemma.value}:{i}"), max_n, oracle)
            for i in range(cases)]


__all__ = [
    "DIRECTION", "Lemma", "PerturbationOutcome", "PreconditionError", "brute_oracle", "campaign",
    "contract_bridge_add_pendant", "contract_bridge_pendant_at", "graft_edge", "instance",
    "lollipop_pendant_is_weakest", "merge_paths", "move_pendants", "pendant_paths",
    "prefer_girth_three", "random_connected", "reattach_lollipop", "pendant_vertices",
]
