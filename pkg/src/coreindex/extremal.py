"""Exhaustive scans over labeled graph classes and the registry of checked claims.

Extremizer sets are certified by counting.  If every expected graph lies in
the class, attains the extreme, and the labeled copies of the expected
graphs (``n!/|Aut|`` each, pairwise non-isomorphic) add up to the number of
labeled extremizers, then the extremizers are exactly those copies.  A
capped sample of extremizers is also canonicalized and must fall inside the
expected set.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from . import batch, formulas
from .batch import Tally
from .counting import (
    core_index,
    core_index_bruteforce,
    count_containing,
    f_all_vertices,
)
from .families import (
    FamilyError,
    FamilySpec,
    GraphClass,
    Kind,
    assemble_unicyclic,
    build,
    complete,
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
from .formats import decode_graph6, encode_graph6, format_edge_list
from .graph import (
    Graph,
    GraphError,
    SizeGuardError,
    canonical_form,
    from_edge_list,
    girth,
    is_isomorphic,
    labeled_copies,
    wiener_index,
)
from . import perturb

SCHEMA_VERSION = 1


class UnknownTheorem(KeyError):
    pass


class EmptyClass(GraphError):
    pass


# -- reports ---------------------------------------------------------------------------

def canon(G: Graph) -> str:
    return canonical_form(G).decode()


@dataclass
class Side:
    """One direction (min or max) of a scan."""

    value: int
    count: int
    observed: list[str]
    forms_complete: bool = False
    expected: list[str] = field(default_factory=list)
    expected_copies: int | None = None
    match: bool | None = None
    reason: str = ""


@dataclass
class ExtremalReport:
    class_name: str
    description: str
    n: int
    size: int
    min: Side | None = None
    max: Side | None = None

    @property
    def match(self) -> bool | None:
        flags = [s.match for s in (self.min, self.max) if s is not None and s.match is not None]
        return all(flags) if flags else None

    @property
    def minimizers(self) -> list[str]:
        return self.min.observed if self.min else []

    @property
    def maximizers(self) -> list[str]:
        return self.max.observed if self.max else []

    def to_dict(self) -> dict:
        d = asdict(self)
        d["match"] = self.match
        d["schema_version"] = SCHEMA_VERSION
        return d


def _as_graph(x: FamilySpec | Graph | str) -> Graph:
    if isinstance(x, Graph):
        return x
    if isinstance(x, str):
        x = parse_spec(x)
    return build(x)


def _distinct(graphs: Iterable[Graph]) -> list[Graph]:
    seen: dict[str, Graph] = {}
    for G in graphs:
        seen.setdefault(canon(G), G)
    return [seen[k] for k in sorted(seen)]


def _side(cls: GraphClass, n: int, value: int, count: int, samples: list, expected: Sequence,
          more: Callable = lambda: iter(())) -> Side:
    observed, complete = extremizer_forms(n, count, samples, more)
    side = Side(value=value, count=count, observed=observed, forms_complete=complete)
    if not expected:
        return side
    graphs = _distinct(_as_graph(x) for x in expected)
    side.expected = sorted(canon(G) for G in graphs)
    side.expected_copies = sum(labeled_copies(G) for G in graphs)
    problems = []
    for G in graphs:
        if G.n != n:
            problems.append(f"expected graph has {G.n} vertices, not {n}")
        elif not cls.contains(G):
            problems.append(f"expected graph {encode_graph6(G)} is not in the class")
        elif core_index(G) != value:
            problems.append(f"expected graph {encode_graph6(G)} has F={core_index(G)}, extreme is {value}")
    if side.expected_copies != count:
        problems.append(f"{count} labeled extremizers but the expected graphs have {side.expected_copies} labelings")
    stray = sorted(set(observed) - set(side.expected))
    if stray:
        problems.append(f"extremizer {stray[0]} is not isomorphic to an expected graph")
    side.match = not problems
    side.reason = "; ".join(problems)
    return side


# -- engines per class --------------------------------------------------------------------

def _table_select(table: batch.GraphTable, cls: GraphClass) -> "batch.np.ndarray":
    np = batch.np
    name = cls.name.partition(":")[0]
    p = dict(cls.params)
    if name == "all":
        return np.ones(table.size, dtype=bool)
    if name == "connected":
        return table.connected
    if name == "components":
        return table.components == p["k"]
    if name == "forests":
        return table.acyclic & (table.components == p["k"])
    if name in ("pendants", "pendant-free"):
        return table.connected & (table.pendants == p.get("k", 0))
    if name == "two-connected":
        return table.two_connected
    if name == "trees":
        sel = table.acyclic & table.connected
        if "leaves" in p:
            sel &= table.pendants == p["leaves"]
        return sel
    if name == "unicyclic" and "g" not in p:
        return table.connected & (table.m == table.n)
    raise GraphError(f"class {cls.name!r} has no table form")


def _stream_tally(graphs: Iterable[Graph], value: Callable[[Graph], int]) -> Tally:
    t = Tally()
    for G in graphs:
        x = value(G)
        t.size += 1
        if t.lo is None or x < t.lo:
            t.lo, t.n_lo, t.lo_samples = x, 0, []
        if x == t.lo:
            t.n_lo += 1
            if len(t.lo_samples) < batch.SAMPLE_CAP:
                t.lo_samples.append(G.edges)
        if t.hi is None or x > t.hi:
            t.hi, t.n_hi, t.hi_samples = x, 0, []
        if x == t.hi:
            t.n_hi += 1
            if len(t.hi_samples) < batch.SAMPLE_CAP:
                t.hi_samples.append(G.edges)
    return t


def _engine(cls: GraphClass, n: int, workers, unsafe: bool, engine: str):
    """Tally of the class plus ``more(value)``: an iterator over edge tuples of graphs with that F."""
    np = batch.np
    if engine == "stream":
        def more(value):
            return (G.edges for G in enumerate_labeled_graphs(n, cls, unsafe=unsafe) if core_index(G) == value)
        return _stream_tally(enumerate_labeled_graphs(n, cls, unsafe=unsafe), core_index), more
    if cls.source == "trees":
        sweep = batch.tree_sweep(n, workers=workers, unsafe=unsafe)
        k = cls.param("leaves")
        t = sweep.all if k is None else sweep.by_leaves.get(k, Tally())

        def more(value):
            F, _ = batch.tree_values(n, unsafe=True)
            for i in np.flatnonzero(F == value):
                T = _tree_by_index(n, int(i))
                if cls.contains(T):
                    yield T.edges
        return t, more
    if cls.source == "unicyclic":
        if n < 3:
            return Tally(), lambda value: iter(())
        sweep = batch.unicyclic_sweep(n, workers=workers, unsafe=unsafe)
        g = cls.param("g")
        if g is not None:
            t = sweep.by_girth.get(g, Tally())
            return t, lambda value: iter(())
        parts = [sweep.by_girth[x] for x in sorted(sweep.by_girth)]

        def more(value):
            for part in parts:
                if part.lo == value:
                    yield from part.lo_samples
                if part.hi == value:
                    yield from part.hi_samples
        return sweep.all, more
    table = batch.graph_table(n, unsafe=unsafe)
    select = _table_select(table, cls)

    def more(value):
        for i in np.flatnonzero(select & (table.F == value)):
            yield table.edges(int(i))
    return table.tally(select), more


def class_tally(cls: GraphClass | str, n: int, *, workers: int | None = None,
                unsafe: bool = False, engine: str = "auto") -> Tally:
    """F extremes over the labeled class; ``engine`` is ``auto`` or ``stream``."""
    if isinstance(cls, str):
        cls = graph_class(cls)
    return _engine(cls, n, workers, unsafe, engine)[0]


COMPLETION_CAP = 200_000


def extremizer_forms(n: int, count: int, samples: list, more: Callable) -> tuple[list[str], bool]:
    """Canonical forms of the extremizers and whether they provably cover all ``count`` labelings.

    Coverage is proved by counting: the labeled copies of the forms found
    must add up to ``count``.  Extra candidates come from ``more`` only
    while that sum falls short.
    """
    forms: dict[str, int] = {}

    def add(edges) -> None:
        G = from_edge_list(n, edges)
        key = canon(G)
        if key not in forms:
            forms[key] = labeled_copies(G)

    for e in samples:
        add(e)
    if sum(forms.values()) != count:
        for i, e in enumerate(more()):
            if i >= COMPLETION_CAP:
                break
            add(e)
            if sum(forms.values()) == count:
                break
    return sorted(forms), sum(forms.values()) == count


def scan(cls: GraphClass | str, n: int, mode: str = "both", *,
         expected: Sequence = (), expected_min: Sequence = (), expected_max: Sequence = (),
         workers: int | None = None, unsafe: bool = False, engine: str = "auto") -> ExtremalReport:
    """Extremes of F over a labeled class with optional certified extremizer sets.

    ``expected`` applies to whichever single mode was requested; for
    ``both`` use ``expected_min``/``expected_max``.
    """
    if mode not in ("min", "max", "both"):
        raise ValueError(f"mode must be min, max or both, got {mode!r}")
    if isinstance(cls, str):
        cls = graph_class(cls)
    t, more = _engine(cls, n, workers, unsafe, engine)
    if t.size == 0:
        raise EmptyClass(f"class {cls.name} is empty at n={n}")
    if mode == "min" and expected:
        expected_min = expected
    if mode == "max" and expected:
        expected_max = expected
    report = ExtremalReport(cls.name, cls.description, n, t.size)
    if mode in ("min", "both"):
        report.min = _side(cls, n, t.lo, t.n_lo, t.lo_samples, expected_min, lambda: more(t.lo))
    if mode in ("max", "both"):
        report.max = _side(cls, n, t.hi, t.n_hi, t.hi_samples, expected_max, lambda: more(t.hi))
    return report


# -- check results ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    theorem: str
    params: dict
    passed: bool
    detail: str = ""
    counterexample: str | None = None
    counterexample_edges: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        return d


def _result(theorem: str, params: dict, passed: bool, detail: str = "",
            witness: Graph | None = None) -> CheckResult:
    r = CheckResult(theorem, dict(params), bool(passed), detail)
    if not passed and witness is not None:
        r.counterexample = encode_graph6(witness)
        r.counterexample_edges = format_edge_list(witness)
    return r


def _first_sample(side: Side | None) -> Graph | None:
    """An extremizer outside the expected set if there is one, else any extremizer."""
    if side is None or not side.observed:
        return None
    stray = [code for code in side.observed if code not in side.expected]
    return decode_graph6((stray or side.observed)[0])


def _scan_result(theorem: str, params: dict, cls: str, n: int, mode: str, expected: Sequence,
                 value: int | None, **kw) -> CheckResult:
    try:
        report = scan(cls, n, mode, expected=expected, **kw)
    except EmptyClass as exc:
        return _result(theorem, params, False, str(exc))
    side = report.min if mode == "min" else report.max
    problems = []
    if side.match is False:
        problems.append(side.reason)
    if value is not None and side.value != value:
        problems.append(f"{mode} is {side.value}, closed form gives {value}")
    detail = f"{mode} F = {side.value} over {report.size} labeled graphs, {side.count} extremizers"
    if problems:
        detail += ": " + "; ".join(problems)
    return _result(theorem, params, not problems, detail, _first_sample(side))


@dataclass(frozen=True)
class Checker:
    id: str
    claim: str
    default_n: tuple[int, ...]
    run: Callable[..., list[CheckResult]]


REGISTRY: dict[str, Checker] = {}


def register(id: str, claim: str, default_n: Iterable[int] = ()):
    def wrap(fn):
        REGISTRY[id] = Checker(id, claim, tuple(default_n), fn)
        return fn
    return wrap


def theorem_ids() -> list[str]:
    return list(REGISTRY)


def verify_theorem(id: str, n_range: Iterable[int] | None = None, **opts) -> list[CheckResult]:
    """Run one registered checker; ``n_range`` overrides its default sizes."""
    if id not in REGISTRY:
        raise UnknownTheorem(id)
    c = REGISTRY[id]
    ns = tuple(c.default_n if n_range is None else n_range)
    return c.run(ns, **opts)


def verify_all(**opts) -> list[CheckResult]:
    out = []
    for id in REGISTRY:
        out.extend(verify_theorem(id, **opts))
    return out


# -- trees -------------------------------------------------------------------------------------

def _first_tree(n: int, bad: Callable[[Graph], bool]) -> Graph | None:
    for T in enumerate_labeled_trees(n, unsafe=True):
        if bad(T):
            return T
    return None


def _concave_fails(T: Graph) -> bool:
    f = f_all_vertices(T)
    return any(2 * f[v] - f[u] - f[w] <= 0
               for v in range(T.n) for u in T.adj[v] for w in T.adj[v] if u < w)


def _core_fails(T: Graph) -> bool:
    f = f_all_vertices(T)
    best = max(f)
    core = [v for v in range(T.n) if f[v] == best]
    return len(core) > 2 or (len(core) == 2 and not T.has_edge(*core))


def _random_trees(seed: int, n: int, count: int) -> Iterable[Graph]:
    rng = random.Random(f"{seed}:trees:{n}")
    for _ in range(count):
        yield prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


@register("lemma-concave", "f_T is strictly concave along every path u-v-w of a tree", range(3, 10))
def _check_concave(ns, samples: int = 200, sample_n: Iterable[int] = (10, 11, 12), seed: int = 0,
                   workers=None, **_):
    out = []
    for n in ns:
        sweep = batch.tree_sweep(n, workers=workers)
        bad = sweep.concavity_violations
        witness = _first_tree(n, _concave_fails) if bad else None
        out.append(_result("lemma-concave", {"n": n, "mode": "exhaustive"}, bad == 0,
                           f"{sweep.all.size} trees, {bad} violating triples", witness))
    for n in sample_n:
        witness = next((T for T in _random_trees(seed, n, samples) if _concave_fails(T)), None)
        out.append(_result("lemma-concave", {"n": n, "mode": "sampled", "samples": samples, "seed": seed},
                           witness is None, f"{samples} random trees", witness))
    return out


@register("thm-score", "the subtree core of a tree is one vertex or two adjacent vertices", range(1, 10))
def _check_score(ns, samples: int = 200, sample_n: Iterable[int] = (10, 11, 12), seed: int = 0,
                 workers=None, **_):
    out = []
    for n in ns:
        sweep = batch.tree_sweep(n, workers=workers)
        bad = sweep.core_size_violations + sweep.core_adjacency_violations
        witness = _first_tree(n, _core_fails) if bad else None
        out.append(_result("thm-score", {"n": n, "mode": "exhaustive"}, bad == 0,
                           f"{sweep.all.size} trees, {sweep.core_size_violations} oversized cores, "
                           f"{sweep.core_adjacency_violations} non-adjacent pairs", witness))
    for n in sample_n:
        witness = next((T for T in _random_trees(seed, n, samples) if _core_fails(T)), None)
        out.append(_result("thm-score", {"n": n, "mode": "sampled", "samples": samples, "seed": seed},
                           witness is None, f"{samples} random trees", witness))
    return out


@register("thm-tree-F", "over trees, F is minimized exactly by P_n and maximized exactly by K_{1,n-1}", range(2, 10))
def _check_tree_F(ns, workers=None, **_):
    out = []
    for n in ns:
        p = {"n": n, "class": "trees"}
        out.append(_scan_result("thm-tree-F", {**p, "mode": "min"}, "trees", n, "min", [path(n)],
                                formulas.F_path(n), workers=workers))
        out.append(_scan_result("thm-tree-F", {**p, "mode": "max"}, "trees", n, "max", [star(n)],
                                formulas.F_star(n), workers=workers))
    return out


# -- all graphs and unions ------------------------------------------------------------------

@register("thm-con-F", "over connected graphs, F is minimized exactly by P_n and maximized exactly by K_n", range(1, 7))
def _check_con_F(ns, **_):
    out = []
    for n in ns:
        out.append(_scan_result("thm-con-F", {"n": n, "mode": "min"}, "connected", n, "min", [path(n)],
                                formulas.F_path(n)))
        out.append(_scan_result("thm-con-F", {"n": n, "mode": "max"}, "connected", n, "max", [complete(n)],
                                formulas.F_complete(n)))
    return out


def _union(parts: list[Graph]) -> Graph:
    edges, off = [], 0
    for P in parts:
        edges += [(a + off, b + off) for a, b in P.edges]
        off += P.n
    return from_edge_list(off, edges)


def _pair_lemma(theorem: str, ns, make: Callable[[int], Graph], want_less: bool) -> list[CheckResult]:
    top = max(ns) if ns else 10
    out = []
    for m in range(2, top + 1):
        for l in range(2, m + 1):
            A = _union([make(l), make(m)])
            B = _union([make(l - 1), make(m + 1)])
            fa, fb = core_index(A), core_index(B)
            ok = fa < fb if want_less else fa > fb
            out.append(_result(theorem, {"l": l, "m": m}, ok, f"{fa} vs {fb}", A))
    return out


@register("lemma-con-l1", "F(K_l + K_m) < F(K_{l-1} + K_{m+1}) for 2 <= l <= m", [8])
def _check_l1(ns, **_):
    out = []
    top = max(ns) if ns else 8
    for m in range(2, top + 1):
        for l in range(2, m + 1):
            a = formulas.F_complete(l) + formulas.F_complete(m)
            b = formulas.F_complete(l - 1) + formulas.F_complete(m + 1)
            problems = [] if a < b else [f"{a} >= {b}"]
            if m + 1 <= 8:
                A = _union([complete(l), complete(m)])
                B = _union([complete(l - 1), complete(m + 1)])
                if (core_index(A), core_index(B)) != (a, b):
                    problems.append("closed form disagrees with the counting engine")
            out.append(_result("lemma-con-l1", {"l": l, "m": m}, not problems,
                               f"{a} vs {b}" + ("; " + "; ".join(problems) if problems else ""),
                               _union([complete(l), complete(m)]) if m + l <= 12 else None))
    return out


@register("lemma-con-l2", "F(P_l + P_m) < F(P_{l-1} + P_{m+1}) for 2 <= l <= m", [10])
def _check_l2(ns, **_):
    return _pair_lemma("lemma-con-l2", ns, path, want_less=True)


@register("lemma-con-l3", "F(K_{1,l-1} + K_{1,m+1}) > F(K_{1,l} + K_{1,m}) for 2 <= l <= m", [10])
def _check_l3(ns, **_):
    out = []
    top = max(ns) if ns else 10
    for m in range(2, top + 1):
        for l in range(2, m + 1):
            A = _union([star(l), star(m + 2)])       # K_{1,l-1} and K_{1,m+1}
            B = _union([star(l + 1), star(m + 1)])   # K_{1,l} and K_{1,m}
            fa, fb = core_index(A), core_index(B)
            out.append(_result("lemma-con-l3", {"l": l, "m": m}, fa > fb, f"{fa} vs {fb}", B))
    return out


def _component_check(theorem: str, ns, ks, cls_name: str, mode: str, family: Kind, pick: int):
    out = []
    for n in ns:
        for k in ks:
            if not 1 <= k <= n:
                continue
            want = formulas.union_extremes(n, k)[pick]
            out.append(_scan_result(theorem, {"n": n, "k": k, "mode": mode}, f"{cls_name}:k={k}", n, mode,
                                    [build(spec(family, n, k))], want))
    return out


@register("thm-con-T1", "over graphs with k components, F is maximized exactly by (k-1)K_1 + K_{n-k+1}", range(2, 7))
def _check_T1(ns, k: int | None = None, **_):
    return _component_check("thm-con-T1", ns, [k] if k else [2, 3], "components", "max", Kind.UNION_K_COMPLETE, 0)


@register("thm-con-T2", "over graphs with k components, F is minimized exactly by rP_{q+1} + (k-r)P_q", range(2, 7))
def _check_T2(ns, k: int | None = None, **_):
    return _component_check("thm-con-T2", ns, [k] if k else [2, 3], "components", "min", Kind.UNION_R_PQ, 1)


@register("thm-con-T3", "over forests with k components, F is maximized exactly by (k-1)K_1 + K_{1,n-k}", range(2, 7))
def _check_T3(ns, k: int | None = None, **_):
    return _component_check("thm-con-T3", ns, [k] if k else [2, 3], "forests", "max", Kind.UNION_K_STAR, 2)


# -- perturbations ---------------------------------------------------------------------------

def _campaign_check(lemma: perturb.Lemma, ns, cases: int = 200, seed: int = 0, **_):
    max_n = max(ns) if ns else 9
    outcomes = perturb.campaign(lemma, cases, seed, max_n)
    bad = [o for o in outcomes if not o.holds]
    detail = f"{len(outcomes)} random instances on at most {max_n} vertices"
    if bad:
        o = bad[0]
        detail += (f"; first failure: F {o.f_before} -> {o.f_after}, predicted change {o.expected_gap}, "
                   f"bound {o.bound}")
    return [_result(lemma.value, {"cases": cases, "seed": seed, "max_n": max_n}, not bad, detail,
                    bad[0].before if bad else None)]


for _lemma, _claim in [
    (perturb.Lemma.EFFECT_1, "contracting a bridge between non-pendant vertices and adding a leaf there raises F by (f1-1)(f2-1)"),
    (perturb.Lemma.EFFECT_2, "contracting a bridge and adding a leaf at x with f(x,u) >= 2 raises F"),
    (perturb.Lemma.EFFECT_3, "grafting an edge from the shorter pendant path lowers F by (f(v)-1)(l-k+1)"),
    (perturb.Lemma.EFFECT_4, "moving all pendants to the vertex with larger f raises F"),
    (perturb.Lemma.EFFECT_5, "merging two pendant paths at the vertex with smaller f lowers F"),
    (perturb.Lemma.TUNING_FORK_1, "gluing a lollipop at a non-pendant vertex beats gluing at its pendant"),
    (perturb.Lemma.TUNING_FORK_2, "a pendant-glued U_{m+1,3} lollipop gives smaller F than U_{m+1,m}"),
]:
    register(_lemma.value, _claim, [9])(
        lambda ns, _l=_lemma, **kw: _campaign_check(_l, ns, **kw))


@register("lemma-24", "the pendant vertex of a lollipop has strictly the smallest f", range(4, 10))
def _check_24(ns, **_):
    out = []
    for n in ns:
        for g in range(3, n):
            bad = perturb.lollipop_pendant_is_weakest(n, g, unsafe=True)
            out.append(_result("lemma-24", {"n": n, "g": g}, not bad,
                               f"{n - 1} non-pendant vertices compared" + (f"; failing {bad}" if bad else ""),
                               build(spec(Kind.LOLLIPOP, n, g))))
    return out


# -- unicyclic -------------------------------------------------------------------------------

@register("lemma-cycle-F", "F(C_n) = n^2+1 and f_{C_n}(v) = 2n + C(n-1,2)", range(3, 11))
def _check_cycle(ns, **_):
    out = []
    for n in ns:
        C = cycle(n)
        F = core_index(C)
        fv = count_containing(C, [0], unsafe=True)
        problems = []
        if F != formulas.F_cycle(n):
            problems.append(f"F={F}")
        if fv != formulas.f_cycle_vertex(n):
            problems.append(f"f(v)={fv}")
        if n <= 8 and core_index_bruteforce(C) != F:
            problems.append("engines disagree")
        out.append(_result("lemma-cycle-F", {"n": n}, not problems, "; ".join(problems) or f"F={F}, f(v)={fv}", C))
    return out


def _random_rooted_tree(rng: random.Random, size: int) -> tuple[Graph, int]:
    if size == 1:
        return from_edge_list(1, []), 0
    if size == 2:
        return from_edge_list(2, [(0, 1)]), rng.randrange(2)
    T = prufer_decode([rng.randrange(size) for _ in range(size - 2)], size)
    return T, rng.randrange(size)


@register("lemma-ucyclic1", "hanging paths minimize and hanging stars maximize F among U_{n,g}(T_1..T_g)", [9])
def _check_ucyclic1(ns, cases: int = 200, seed: int = 0, **_):
    max_n = max(ns) if ns else 9
    failures = []
    for i in range(cases):
        rng = random.Random(f"{seed}:ucyclic1:{i}")
        g = rng.randint(3, max_n - 1)
        extra = rng.randint(1, max_n - g)
        sizes = [0] * g
        for _ in range(extra):
            sizes[rng.randrange(g)] += 1
        trees = [_random_rooted_tree(rng, s + 1) for s in sizes]
        G = assemble_unicyclic(g, trees)
        lo = assemble_unicyclic(g, [(path(s + 1), 0) for s in sizes])
        hi = assemble_unicyclic(g, [(star(s + 1), 0) for s in sizes])
        F, Flo, Fhi = core_index(G), core_index(lo), core_index(hi)
        ok = Flo <= F <= Fhi
        ok &= (F == Flo) == is_isomorphic(G, lo)
        ok &= (F == Fhi) == is_isomorphic(G, hi)
        if not ok:
            failures.append(G)
    return [_result("lemma-ucyclic1", {"cases": cases, "seed": seed, "max_n": max_n}, not failures,
                    f"{cases} random assemblies, {len(failures)} failures", failures[0] if failures else None)]


@register("thm-main1", "over unicyclic graphs of girth g < n, F is maximized exactly by the pineapple", range(4, 10))
def _check_main1(ns, workers=None, **_):
    return [_scan_result("thm-main1", {"n": n, "g": g}, f"unicyclic:g={g}", n, "max",
                         [build(spec(Kind.PINEAPPLE, n, g))], formulas.F_pineapple(n, g), workers=workers)
            for n in ns for g in range(3, n)]


@register("thm-main2", "among pineapples, girth 3 maximizes and girth n-1 minimizes F, strictly", range(4, 31))
def _check_main2(ns, **_):
    out = []
    for n in ns:
        vals = {g: formulas.F_pineapple(n, g) for g in range(3, n)}
        lo, hi = n * n + 1 + math.comb(n - 2, 2), 7 * 2 ** (n - 3) + n
        problems = []
        if vals[3] != hi or vals[n - 1] != lo:
            problems.append("end values differ from the stated bounds")
        if any(vals[g] <= vals[g + 1] for g in range(3, n - 1)):
            problems.append("not strictly decreasing in g")
        if n <= 9:
            for g in range(3, n):
                if core_index(build(spec(Kind.PINEAPPLE, n, g))) != vals[g]:
                    problems.append(f"closed form disagrees with the counting engine at g={g}")
        out.append(_result("thm-main2", {"n": n}, not problems, "; ".join(problems) or f"{lo} <= F <= {hi}",
                           build(spec(Kind.PINEAPPLE, n, 3))))
    return out


@register("thm-main3", "over unicyclic graphs, F is maximized exactly by U^p_{n,3}", range(4, 10))
def _check_main3(ns, workers=None, **_):
    return [_scan_result("thm-main3", {"n": n}, "unicyclic", n, "max", [build(spec(Kind.PINEAPPLE, n, 3))],
                         7 * 2 ** (n - 3) + n, workers=workers) for n in ns]


@register("thm-main4", "over unicyclic graphs of girth g < n, F is minimized exactly by the lollipop", range(4, 10))
def _check_main4(ns, workers=None, **_):
    return [_scan_result("thm-main4", {"n": n, "g": g}, f"unicyclic:g={g}", n, "min",
                         [build(spec(Kind.LOLLIPOP, n, g))], formulas.F_lollipop(n, g), workers=workers)
            for n in ns for g in range(3, n)]


def lollipop_profile(n: int) -> dict:
    """Shape of g -> F_lollipop(n, g) for 3 <= g < n."""
    vals = [formulas.F_lollipop(n, g) for g in range(3, n)]
    peak = 3 + vals.index(max(vals))
    rising = all(a < b for a, b in zip(vals[:peak - 3], vals[1:peak - 2]))
    falling = all(a > b for a, b in zip(vals[peak - 3:], vals[peak - 2:]))
    return {
        "values": vals,
        "peak": peak,
        "unimodal": rising and falling,
        "no_ties": all(a != b for a, b in zip(vals, vals[1:])),
        "min_at_3": vals[0] == min(vals) and vals.count(vals[0]) == 1,
    }


@register("thm-main5", "g -> F(U^l_{n,g}) rises strictly to g0+1 then falls; the minimum is at g = 3", range(5, 101))
def _check_main5(ns, **_):
    out = []
    for n in ns:
        prof = lollipop_profile(n)
        g0 = formulas.g0_threshold(n)
        diff = formulas.F_lollipop(n, n - 1) - formulas.F_lollipop(n, 3)
        problems = []
        if not prof["unimodal"]:
            problems.append("not strictly unimodal")
        if prof["peak"] != g0 + 1:
            problems.append(f"peak at g={prof['peak']}, threshold predicts {g0 + 1}")
        if not prof["no_ties"]:
            problems.append("consecutive girths tie")
        if not prof["min_at_3"]:
            problems.append("minimum is not uniquely at g=3")
        if diff != (n - 3) * (n - 4):
            problems.append(f"end difference {diff} != (n-3)(n-4)")
        out.append(_result("thm-main5", {"n": n}, not problems,
                           "; ".join(problems) or f"peak at g={prof['peak']}",
                           build(spec(Kind.LOLLIPOP, n, prof["peak"])) if prof["peak"] < n else None))
    return out


def unicyclic_minimizers(n: int) -> list[Graph]:
    if n <= 5:
        return [cycle(n)]
    if n == 6:
        return [cycle(6), build(spec(Kind.LOLLIPOP, 6, 3))]
    return [build(spec(Kind.LOLLIPOP, n, 3))]


@register("thm-main6", "over unicyclic graphs, F is minimized by C_n (n<=5), both C_6 and U^l_{6,3}, then U^l_{n,3}", range(4, 10))
def _check_main6(ns, workers=None, **_):
    return [_scan_result("thm-main6", {"n": n}, "unicyclic", n, "min", unicyclic_minimizers(n),
                         core_index(unicyclic_minimizers(n)[0]), workers=workers) for n in ns]


def _wiener_side(theorem, params, graphs, mode, expected, n) -> CheckResult:
    t = _stream_tally(graphs, wiener_index)
    value, count, samples = (t.lo, t.n_lo, t.lo_samples) if mode == "min" else (t.hi, t.n_hi, t.hi_samples)
    exp = _distinct(expected)
    copies = sum(labeled_copies(G) for G in exp)
    observed = {canon(from_edge_list(n, e)) for e in samples}
    wanted = {canon(G) for G in exp}
    problems = []
    if any(wiener_index(G) != value for G in exp):
        problems.append("an expected graph misses the extreme")
    if copies != count:
        problems.append(f"{count} extremizers, expected graphs have {copies} labelings")
    if observed - wanted:
        problems.append("a sampled extremizer is not expected")
    witness = from_edge_list(n, samples[0]) if samples else None
    return _result(theorem, {**params, "mode": mode}, not problems,
                   f"{mode} W = {value}, {count} extremizers" + ("; " + "; ".join(problems) if problems else ""),
                   witness)


@register("wiener-unicyclic-girth", "per girth g < n, W is minimized by the pineapple and maximized by the lollipop", range(4, 8))
def _check_wiener_girth(ns, **_):
    out = []
    for n in ns:
        by_g: dict[int, list[Graph]] = {}
        for G in enumerate_unicyclic(n):
            by_g.setdefault(girth(G), []).append(G)
        for g in range(3, n):
            p = {"n": n, "g": g}
            out.append(_wiener_side("wiener-unicyclic-girth", p, by_g[g], "min", [build(spec(Kind.PINEAPPLE, n, g))], n))
            out.append(_wiener_side("wiener-unicyclic-girth", p, by_g[g], "max", [build(spec(Kind.LOLLIPOP, n, g))], n))
    return out


@register("wiener-unicyclic-global", "over unicyclic graphs, W is minimized by U^p_{n,3} and maximized by U^l_{n,3}, with C_n tying for small n", range(4, 8))
def _check_wiener_global(ns, **_):
    out = []
    for n in ns:
        graphs = list(enumerate_unicyclic(n))
        lo = [build(spec(Kind.PINEAPPLE, n, 3))] + ([cycle(n)] if n <= 5 else [])
        hi = [build(spec(Kind.LOLLIPOP, n, 3))] + ([cycle(n)] if n == 4 else [])
        out.append(_wiener_side("wiener-unicyclic-global", {"n": n}, graphs, "min", lo, n))
        out.append(_wiener_side("wiener-unicyclic-global", {"n": n}, graphs, "max", hi, n))
    return out


# -- pendant counts ----------------------------------------------------------------------------

@register("thm-pmax1", "over connected graphs with k <= n-3 pendants, F is maximized exactly by P_n^k", range(4, 8))
def _check_pmax1(ns, k: int | None = None, **_):
    return [_scan_result("thm-pmax1", {"n": n, "k": kk}, f"pendants:k={kk}", n, "max",
                         [build(spec(Kind.PNK, n, kk))], formulas.F_P_n_k(n, kk))
            for n in ns for kk in ([k] if k is not None else range(0, n - 2)) if 0 <= kk <= n - 3]


@register("thm-pmax2", "over connected graphs with n-2 pendants, F is maximized exactly by T(1,n-3,2)", range(4, 8))
def _check_pmax2(ns, **_):
    return [_scan_result("thm-pmax2", {"n": n}, f"pendants:k={n - 2}", n, "max",
                         [build(spec(Kind.DOUBLE_BROOM, 1, n - 3, 2))], formulas.F_T1(n)) for n in ns]


@register("thm-pmax3", "over trees with k leaves (2 <= k <= n-3), F is maximized exactly by T_{n,k}", range(5, 10))
def _check_pmax3(ns, k: int | None = None, workers=None, **_):
    return [_scan_result("thm-pmax3", {"n": n, "k": kk}, f"trees:leaves={kk}", n, "max",
                         [build(spec(Kind.BALANCED_SPIDER, n, kk))], formulas.F_T_nk(n, kk), workers=workers)
            for n in ns for kk in ([k] if k is not None else range(2, n - 2)) if 2 <= kk <= n - 3]


def balanced_broom(n: int, k: int) -> Graph:
    return build(spec(Kind.DOUBLE_BROOM, k // 2, k - k // 2, n - k))


@register("thm-pmax4", "over trees with k leaves, F is minimized exactly by T(floor(k/2), ceil(k/2), n-k)", range(4, 10))
def _check_pmax4(ns, k: int | None = None, workers=None, **_):
    return [_scan_result("thm-pmax4", {"n": n, "k": kk}, f"trees:leaves={kk}", n, "min",
                         [balanced_broom(n, kk)], formulas.F_balanced_broom(n, kk), workers=workers)
            for n in ns for kk in ([k] if k is not None else range(2, n - 1)) if 2 <= kk <= n - 2]


@register("thm-pmax5", "over connected graphs with k pendants, F is minimized exactly by T(floor(k/2), ceil(k/2), n-k)", range(4, 8))
def _check_pmax5(ns, k: int | None = None, **_):
    return [_scan_result("thm-pmax5", {"n": n, "k": kk}, f"pendants:k={kk}", n, "min",
                         [balanced_broom(n, kk)], formulas.F_balanced_broom(n, kk))
            for n in ns for kk in ([k] if k is not None else range(2, n - 1)) if 2 <= kk <= n - 2]


@register("thm-pmax6", "over connected graphs with one pendant, F is minimized exactly by U^l_{n,3}", range(4, 8))
def _check_pmax6(ns, **_):
    return [_scan_result("thm-pmax6", {"n": n}, "pendants:k=1", n, "min", [build(spec(Kind.LOLLIPOP, n, 3))],
                         formulas.F_lollipop(n, 3)) for n in ns]


# -- pendant-free graphs -------------------------------------------------------------------------

@register("lemma-3cycles", "for n >= 6, F(C_n) < F(C^n_{3,3}) exactly when n <= 16", range(6, 31))
def _check_3cycles(ns, **_):
    out = []
    for n in ns:
        a, b = formulas.F_cycle(n), formulas.F_C33(n)
        problems = []
        if (a < b) != (n <= 16):
            problems.append(f"F(C_n)={a}, F(C33)={b}")
        D = build(spec(Kind.DUMBBELL, 3, 3, n))
        if n <= 14 and (core_index(D) != b or core_index(cycle(n)) != a):
            problems.append("closed form disagrees with the counting engine")
        out.append(_result("lemma-3cycles", {"n": n}, not problems,
                           "; ".join(problems) or f"F(C_n)={a} {'<' if a < b else '>='} F(C33)={b}", D))
    return out


def shared_dumbbells(n: int) -> list[Graph]:
    return [build(spec(Kind.DUMBBELL, m1, n + 1 - m1, n)) for m1 in range(3, n - 1) if m1 <= n + 1 - m1]


@register("lemma-twocycles", "two cycles sharing one vertex have larger F than the cycle on the same vertex count", range(5, 12))
def _check_twocycles(ns, **_):
    out = []
    for n in ns:
        for D, m1 in zip(shared_dumbbells(n), range(3, n)):
            m2 = n + 1 - m1
            F = core_index(D)
            ok = F > formulas.F_cycle(n) and F == formulas.F_shared_dumbbell(m1, m2) \
                and F >= formulas.F_dumbbell_lower_bound(m1, m2)
            out.append(_result("lemma-twocycles", {"m1": m1, "m2": m2}, ok,
                               f"F={F}, F(C_n)={formulas.F_cycle(n)}", D))
    return out


def _pendant_free_select(table):
    return table.connected & (table.pendants == 0)


@register("cor-ctwo", "a pendant-free graph containing a spanning two-cycles-at-a-vertex subgraph has F > F(C_n)", range(5, 8))
def _check_ctwo(ns, **_):
    np = batch.np
    out = []
    for n in ns:
        table = batch.graph_table(n)
        has = batch.spanning_copies_mask(table, shared_dumbbells(n))
        sel = _pendant_free_select(table) & has
        idx = np.flatnonzero(sel & (table.F <= formulas.F_cycle(n)))
        out.append(_result("cor-ctwo", {"n": n}, idx.size == 0,
                           f"{int(sel.sum())} graphs checked, {idx.size} violations",
                           table.graph(int(idx[0])) if idx.size else None))
    return out


@register("cor-c33", "among dumbbells with m1 + m2 <= n, C^n_{3,3} alone has the smallest F", range(6, 13))
def _check_c33(ns, **_):
    out = []
    for n in ns:
        base = core_index(build(spec(Kind.DUMBBELL, 3, 3, n)))
        for m1 in range(3, n):
            for m2 in range(m1, n - m1 + 1):
                D = build(spec(Kind.DUMBBELL, m1, m2, n))
                F = core_index(D)
                ok = F > base if (m1, m2) != (3, 3) else F == base == formulas.F_C33(n)
                out.append(_result("cor-c33", {"n": n, "m1": m1, "m2": m2}, ok, f"F={F}, F(C33)={base}", D))
    return out


@register("thm-mainp1", "pendant-free graphs with a cut vertex and no spanning two-cycles-at-a-vertex subgraph have F >= F(C^n_{3,3}), equality only there", range(6, 8))
def _check_mainp1(ns, **_):
    out = []
    for n in ns:
        table = batch.graph_table(n)
        sel = _pendant_free_select(table) & table.cut_vertex & ~batch.spanning_copies_mask(table, shared_dumbbells(n))
        t = table.tally(sel)
        D = build(spec(Kind.DUMBBELL, 3, 3, n))
        copies = labeled_copies(D)
        want = formulas.F_C33(n)
        dumbbell_vals = [core_index(build(spec(Kind.DUMBBELL, a, b, n)))
                         for a in range(3, n) for b in range(a, n - a + 1)]
        ok = t.size > 0 and t.lo == want == min(dumbbell_vals) and t.n_lo == copies \
            and all(is_isomorphic(from_edge_list(n, e), D) for e in t.lo_samples)
        out.append(_result("thm-mainp1", {"n": n}, ok,
                           f"{t.size} graphs, min F = {t.lo} ({t.n_lo} extremizers), F(C33) = {want}",
                           from_edge_list(n, t.lo_samples[0]) if t.lo_samples else None))
    return out


@register("thm-mainp2", "over 2-connected graphs, F >= F(C_n) with equality only for C_n", range(5, 8))
def _check_mainp2(ns, **_):
    return [_scan_result("thm-mainp2", {"n": n}, "two-connected", n, "min", [cycle(n)], formulas.F_cycle(n))
            for n in ns]


@register("thm-mlast", "over pendant-free connected graphs, F >= min(n^2+1, (n^2+17n)/2), attained only by C_n for n <= 16", range(4, 8))
def _check_mlast(ns, **_):
    out = []
    for n in ns:
        r = _scan_result("thm-mlast", {"n": n}, "pendant-free", n, "min", [cycle(n)], formulas.F_cycle(n))
        bound = formulas.pendant_free_minimum(n) if n >= 5 else formulas.F_cycle(4)
        if r.passed and formulas.F_cycle(n) < bound:
            r.passed = False
            r.detail += f"; minimum below the bound {bound}"
        out.append(r)
    return out


# -- identities and engines ---------------------------------------------------------------------

@register("prop-edge-monotone", "adding an edge strictly increases F", range(1, 7))
def _check_monotone(ns, **_):
    np = batch.np
    out = []
    for n in ns:
        table = batch.graph_table(n)
        bad = None
        for b in range(len(table.pairs)):
            view = table.F.reshape(-1, 2, 1 << b)
            hits = np.flatnonzero(~(view[:, 1] > view[:, 0]).reshape(-1))
            if hits.size:
                i = int(hits[0])
                bad = (i // (1 << b)) * (2 << b) + i % (1 << b)
                break
        out.append(_result("prop-edge-monotone", {"n": n}, bad is None,
                           f"{table.size} graphs, every missing edge tried",
                           table.graph(bad) if bad is not None else None))
    return out


@register("h-sequence", "h_k solves the connected-graph recurrence; F(K_n) = sum C(n,i) h_i", range(1, 9))
def _check_h(ns, **_):
    out = []
    for k in ns:
        lhs = k * 2 ** math.comb(k, 2)
        rhs = sum(math.comb(k, i) * i * formulas.h(i) * 2 ** math.comb(k - i, 2) for i in range(1, k + 1))
        problems = [] if lhs == rhs else [f"recurrence off by {lhs - rhs}"]
        if k <= 6:
            if int(batch.graph_table(k).connected.sum()) != formulas.h(k):
                problems.append("h_k disagrees with a count of labeled connected graphs")
            if core_index_bruteforce(complete(k)) != formulas.F_complete(k):
                problems.append("F(K_n) disagrees with brute force")
        out.append(_result("h-sequence", {"k": k}, not problems, "; ".join(problems) or f"h_{k} = {formulas.h(k)}",
                           complete(k)))
    return out


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    from itertools import combinations
    return from_edge_list(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@register("engine-agreement", "the counting engine equals brute force on every small graph and on random larger ones", range(1, 8))
def _check_engines(ns, samples: int = 250, seed: int = 0, **_):
    out = []
    for n in ns:
        if n <= 5:
            graphs = list(enumerate_labeled_graphs(n))
            mode = "exhaustive"
        else:
            rng = random.Random(f"{seed}:engines:{n}")
            graphs = [random_graph(rng, n) for _ in range(samples)]
            mode = "sampled"
        bad = next((G for G in graphs if core_index(G) != core_index_bruteforce(G)), None)
        out.append(_result("engine-agreement", {"n": n, "mode": mode, "graphs": len(graphs)}, bad is None,
                           f"{len(graphs)} graphs compared", bad))
    return out


def family_members(max_n: int) -> list[FamilySpec]:
    """Every family member with at most ``max_n`` vertices that has a closed form."""
    out = []
    for n in range(1, max_n + 1):
        out += [spec(Kind.PATH, n), spec(Kind.STAR, n), spec(Kind.COMPLETE, n)]
        if n >= 3:
            out.append(spec(Kind.CYCLE, n))
        for g in range(3, n):
            out += [spec(Kind.PINEAPPLE, n, g), spec(Kind.LOLLIPOP, n, g)]
        for k in range(0, n - 2):
            out.append(spec(Kind.PNK, n, k))
        for k in range(2, n - 2):
            out.append(spec(Kind.BALANCED_SPIDER, n, k))
        for k in range(1, n + 1):
            out += [spec(Kind.UNION_R_PQ, n, k), spec(Kind.UNION_K_COMPLETE, n, k), spec(Kind.UNION_K_STAR, n, k)]
        for a in range(1, n):
            for b in range(1, n - a):
                if n - a - b >= 2:
                    out.append(spec(Kind.DOUBLE_BROOM, a, b, n - a - b))
        if n >= 6:
            out.append(spec(Kind.DUMBBELL, 3, 3, n))
        for m1 in range(3, n - 1):
            if 3 <= n + 1 - m1 and m1 <= n + 1 - m1:
                out.append(spec(Kind.DUMBBELL, m1, n + 1 - m1, n))
    for l in range(1, max_n):
        for q in range(1, max_n):
            if l * q + 1 <= max_n:
                out.append(spec(Kind.SPIDER, l, q))
    return out


@register("closed-forms", "every closed form equals the counted F of its family member", [9])
def _check_closed_forms(ns, **_):
    max_n = max(ns) if ns else 9
    out = []
    for s in family_members(max_n):
        G = build(s)
        want, got = expected_F(s), core_index(G)
        out.append(_result("closed-forms", {"family": str(s)}, want == got, f"closed form {want}, counted {got}", G))
    return out


@register("wiener-anchors", "W(C_4) = 8, W(C_5) = 15, W(P_4) = 10, and W of U^p_{n,3} ties C_n at n = 4, 5")
def _check_wiener_anchors(ns, **_):
    pairs = [(cycle(4), 8), (cycle(5), 15), (path(4), 10),
             (build(spec(Kind.PINEAPPLE, 4, 3)), 8), (build(spec(Kind.PINEAPPLE, 5, 3)), 15)]
    return [_result("wiener-anchors", {"graph": encode_graph6(G)}, wiener_index(G) == w,
                    f"W = {wiener_index(G)}, expected {w}", G) for G, w in pairs]


# -- exploratory ---------------------------------------------------------------------------------

@dataclass
class Correlation:
    class_name: str
    n: int
    size: int
    spearman: float
    pvalue: float
    table: list[dict]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        return d


def wiener_correlation(cls: GraphClass | str, n: int, *, unsafe: bool = False) -> Correlation:
    """Spearman rank correlation of F against W over a connected class, plus extremizer forms.

    Exploratory: no sign is asserted.
    """
    from scipy.stats import spearmanr

    np = batch.np
    if isinstance(cls, str):
        cls = graph_class(cls)
    if cls.name == "trees" and n >= 3:
        F, W = batch.tree_values(n, unsafe=unsafe)
        graphs = None
    else:
        graphs = [G for G in enumerate_labeled_graphs(n, cls, unsafe=unsafe)]
        if any(len(G.edges) < G.n - 1 for G in graphs):
            raise GraphError("the Wiener index needs connected graphs; pick a connected class")
        F = np.array([core_index(G) for G in graphs])
        W = np.array([wiener_index(G) for G in graphs])
    if F.size < 2:
        raise EmptyClass(f"class {cls.name} at n={n} has fewer than two members")
    rho, p = spearmanr(F, W)

    def forms(values: np.ndarray, pick) -> list[str]:
        idx = np.flatnonzero(values == pick(values))[:batch.SAMPLE_CAP]
        if graphs is not None:
            return sorted({canon(graphs[int(i)]) for i in idx})
        return sorted({canon(_tree_by_index(n, int(i))) for i in idx})

    table = [
        {"statistic": "min F", "value": int(F.min()), "graphs": forms(F, np.min)},
        {"statistic": "max F", "value": int(F.max()), "graphs": forms(F, np.max)},
        {"statistic": "min W", "value": int(W.min()), "graphs": forms(W, np.min)},
        {"statistic": "max W", "value": int(W.max()), "graphs": forms(W, np.max)},
    ]
    return Correlation(cls.name, n, int(F.size), float(rho), float(p), table)


def _tree_by_index(n: int, i: int) -> Graph:
    code = []
    for _ in range(n - 2):
        code.append(i % n)
        i //= n
    return prufer_decode(code[::-1], n)


__all__ = [
    "CheckResult", "Correlation", "EmptyClass", "ExtremalReport", "REGISTRY", "SCHEMA_VERSION", "Side",
    "UnknownTheorem", "class_tally", "lollipop_profile", "scan", "theorem_ids", "verify_all",
    "verify_theorem", "wiener_correlation", "FamilyError", "SizeGuardError",
]
