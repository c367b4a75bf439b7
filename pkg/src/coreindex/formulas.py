"""Exact closed-form values of the core index for named graph families.

Everything is integer arithmetic.  Wherever a formula halves a product, the
division is checked to be exact; a remainder means a transcription error.
"""

from __future__ import annotations

import threading
from math import comb

_h_memo: list[int] = [0, 1]
_h_lock = threading.Lock()


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _half(x: int) -> int:
    q, r = divmod(x, 2)
    assert r == 0, f"non-integral half of {x}"
    return q


def h(k: int) -> int:
    """Number of connected labeled graphs on ``k`` vertices.

    Solved from ``k 2^C(k,2) = sum_i C(k,i) i h_i 2^C(k-i,2)`` by isolating
    the ``i = k`` term.
    """
    _need(k >= 1, f"h(k) needs k >= 1, got {k}")
    with _h_lock:
        while len(_h_memo) <= k:
            j = len(_h_memo)
            rest = sum(comb(j, i) * i * _h_memo[i] * 2 ** comb(j - i, 2) for i in range(1, j))
            q, r = divmod(j * 2 ** comb(j, 2) - rest, j)
            assert r == 0
            _h_memo.append(q)
        return _h_memo[k]


def F_complete(n: int) -> int:
    _need(n >= 1, f"F_complete needs n >= 1, got {n}")
    return sum(comb(n, i) * h(i) for i in range(1, n + 1))


def f_complete_vertex(n: int) -> int:
    """Connected subgraphs of K_n through a fixed vertex."""
    _need(n >= 1, f"f_complete_vertex needs n >= 1, got {n}")
    return F_complete(n) - (F_complete(n - 1) if n > 1 else 0)


def F_path(n: int) -> int:
    _need(n >= 1, f"F_path needs n >= 1, got {n}")
    return comb(n + 1, 2)


def F_star(n: int) -> int:
    """Star on ``n`` vertices (``n - 1`` leaves)."""
    _need(n >= 1, f"F_star needs n >= 1, got {n}")
    return 2 ** (n - 1) + n - 1


def f_path_vertex(n: int, i: int) -> int:
    """Position ``i`` (1-based) on P_n."""
    _need(1 <= i <= n, f"need 1 <= i <= n, got i={i}, n={n}")
    return i * (n + 1 - i)


def F_cycle(n: int) -> int:
    _need(n >= 3, f"F_cycle needs n >= 3, got {n}")
    return n * n + 1


def f_cycle_vertex(n: int) -> int:
    _need(n >= 3, f"f_cycle_vertex needs n >= 3, got {n}")
    return 2 * n + comb(n - 1, 2)


def _girth_range(n: int, g: int, name: str) -> None:
    _need(g >= 3, f"{name} needs g >= 3, got g={g}")
    _need(g < n, f"{name} needs g < n (g = n is the cycle; use F_cycle), got n={n}, g={g}")


def F_pineapple(n: int, g: int) -> int:
    _girth_range(n, g, "F_pineapple")
    return n + g * g - g + 1 + (2 ** (n - g) - 1) * (2 * g + comb(g - 1, 2))


def F_lollipop(n: int, g: int) -> int:
    _girth_range(n, g, "F_lollipop")
    return _half((n - g) * (n + g * g + 3)) + g * g + 1


def g0_threshold(n: int) -> int:
    """Largest ``g`` with ``3g^2 - g + 2 < 2gn``.

    The lollipop on ``n`` vertices with the largest core index has girth
    ``g0_threshold(n) + 1``.
    """
    _need(n >= 5, f"g0_threshold needs n >= 5, got {n}")
    g = 1
    while 3 * (g + 1) ** 2 - (g + 1) + 2 < 2 * (g + 1) * n:
        g += 1
    return g


def F_P_n_k(n: int, k: int) -> int:
    """K_{n-k} with ``k`` pendant vertices at one vertex."""
    _need(0 <= k <= n - 3, f"F_P_n_k needs 0 <= k <= n-3, got n={n}, k={k}")
    big, small = F_complete(n - k), F_complete(n - k - 1)
    return (2 ** k - 1) * (big - small) + big + k


def F_T1(n: int) -> int:
    """The double broom with one pendant at one end and ``n - 3`` at the other."""
    _need(n >= 4, f"F_T1 needs n >= 4, got {n}")
    return 3 * 2 ** (n - 3) + n


def F_spider(l: int, q: int) -> int:
    """``l`` legs of ``q`` edges each around one centre."""
    _need(l >= 1 and q >= 1, f"F_spider needs l >= 1 and q >= 1, got l={l}, q={q}")
    return _half((q + 1) * (l * q + 2 * (q + 1) ** (l - 1)))


def spider_legs(n: int, k: int) -> tuple[int, int]:
    """``(q, r)`` with ``n - 1 = kq + r``: ``r`` legs of length ``q + 1`` and ``k - r`` of length ``q``."""
    q, r = divmod(n - 1, k)
    return q, r


def F_T_nk(n: int, k: int) -> int:
    _need(2 <= k <= n - 3, f"F_T_nk needs 2 <= k <= n-3, got n={n}, k={k}")
    q, r = spider_legs(n, k)
    return (q + 2) ** r * (q + 1) ** (k - r) + _half((q + 1) * (q * k + 2 * r))


def F_balanced_broom(n: int, k: int) -> int:
    """Double broom with ``floor(k/2)`` and ``ceil(k/2)`` pendants on a spine of ``n - k`` vertices."""
    _need(2 <= k <= n - 2, f"F_balanced_broom needs 2 <= k <= n-2, got n={n}, k={k}")
    d = n - k
    if k % 2 == 0:
        return (d - 1) * 2 ** (k // 2 + 1) + 2 ** k + k + comb(d - 1, 2)
    return 3 * (d - 1) * 2 ** ((k - 1) // 2) + 2 ** k + k + comb(d - 1, 2)


def F_double_broom(k: int, l: int, d: int) -> int:
    """T(k, l, d) for any ``k, l >= 1`` and ``d >= 2``.

    Subtrees avoiding both ends of the spine, plus those reaching exactly one
    end, plus those spanning the whole spine.
    """
    _need(k >= 1 and l >= 1 and d >= 2, f"F_double_broom needs k, l >= 1 and d >= 2, got {k}, {l}, {d}")
    return k + l + comb(d - 1, 2) + (d - 1) * (2 ** k + 2 ** l) + 2 ** (k + l)


def F_C33(n: int) -> int:
    """Two triangles joined by a path, ``n >= 6`` vertices in total."""
    _need(n >= 6, f"F_C33 needs n >= 6, got {n}")
    return _half(n * n + 17 * n)


def F_dumbbell_lower_bound(m1: int, m2: int) -> int:
    """Lower bound for two cycles sharing one vertex."""
    _need(m1 >= 3 and m2 >= 3, f"need m1, m2 >= 3, got {m1}, {m2}")
    return m1 * m1 + m2 * m2 + 1 + 4 * m1 * m2


def F_shared_dumbbell(m1: int, m2: int) -> int:
    """Two cycles glued at one vertex: F(C_m1) + F(C_m2) - 1 + (f-1)(f-1)."""
    _need(m1 >= 3 and m2 >= 3, f"need m1, m2 >= 3, got {m1}, {m2}")
    return (F_cycle(m1) + F_cycle(m2) - 1
            + (f_cycle_vertex(m1) - 1) * (f_cycle_vertex(m2) - 1))


def union_extremes(n: int, k: int) -> tuple[int, int, int]:
    """Extremes over graphs on ``n`` vertices with ``k`` components.

    Returns (max over all such graphs, min over all such graphs, max over
    such forests).
    """
    _need(1 <= k <= n, f"union_extremes needs 1 <= k <= n, got n={n}, k={k}")
    hi = (k - 1) + F_complete(n - k + 1)
    q, r = divmod(n, k)
    lo = r * (q + 1) + _half(k * q * (q + 1))
    forest_hi = 2 ** (n - k) + n - 1
    return hi, lo, forest_hi


def pendant_free_minimum(n: int) -> int:
    """Smallest core index over connected graphs on ``n >= 5`` vertices with no pendant vertex."""
    _need(n >= 5, f"pendant_free_minimum needs n >= 5, got {n}")
    return min(n * n + 1, _half(n * n + 17 * n))
