from math import comb

import pytest

from coreindex import formulas as f
from coreindex.counting import core_index, core_index_bruteforce, count_containing
from coreindex.families import build, complete, cycle, path, spec, star
from coreindex.graph import from_edge_list


def test_h_sequence():
    # connected labeled graphs on k vertices
    assert [f.h(k) for k in range(1, 9)] == [1, 1, 4, 38, 728, 26704, 1866256, 251548592]


def test_h_rejects_zero():
    with pytest.raises(ValueError):
        f.h(0)


def test_complete():
    assert [f.F_complete(n) for n in (2, 3, 4)] == [3, 10, 64]
    for n in range(1, 7):
        assert f.F_complete(n) == core_index_bruteforce(complete(n))
        assert f.f_complete_vertex(n) == count_containing(complete(n), [0])


def test_paths_and_stars():
    assert (f.F_path(4), f.F_star(4)) == (10, 11)
    assert f.F_path(1) == f.F_star(1) == 1
    assert f.F_path(9) == 45
    for n in range(1, 8):
        assert f.F_path(n) == core_index_bruteforce(path(n))
        assert f.F_star(n) == core_index_bruteforce(star(n))
        assert [f.f_path_vertex(n, i) for i in range(1, n + 1)] == \
            [count_containing(path(n), [v]) for v in range(n)]


def test_cycles():
    assert f.F_cycle(4) == 17
    assert f.f_cycle_vertex(3) == 7
    assert f.F_cycle(6) == 37
    for n in range(3, 9):
        assert f.F_cycle(n) == core_index_bruteforce(cycle(n))
        assert f.f_cycle_vertex(n) == count_containing(cycle(n), [0])


def test_pineapple_and_lollipop():
    assert f.F_pineapple(4, 3) == 18
    assert f.F_pineapple(5, 3) == 33
    assert f.F_lollipop(5, 3) == 27
    assert f.F_lollipop(6, 3) == 37 == f.F_cycle(6)
    for n in range(4, 30):
        assert f.F_pineapple(n, 3) == 7 * 2 ** (n - 3) + n
        assert 2 * f.F_lollipop(n, 3) == n * n + 9 * n - 16
    for n in range(4, 10):
        for g in range(3, n):
            assert f.F_pineapple(n, g) == core_index_bruteforce(build(spec("pineapple", n, g)))
            assert f.F_lollipop(n, g) == core_index_bruteforce(build(spec("lollipop", n, g)))


@pytest.mark.parametrize("bad", [(4, 2), (4, 4), (3, 3)])
def test_girth_range(bad):
    with pytest.raises(ValueError):
        f.F_pineapple(*bad)


def test_g0_threshold():
    assert f.g0_threshold(10) == 6
    assert f.g0_threshold(5) == 3
    for n in range(5, 60):
        g0 = f.g0_threshold(n)
        vals = {g: f.F_lollipop(n, g) for g in range(3, n)}
        assert all(vals[g] < vals[g + 1] for g in range(3, g0 + 1))
        assert all(vals[g] > vals[g + 1] for g in range(g0 + 1, n - 1))


def test_pendant_families():
    assert f.F_P_n_k(4, 1) == 18 == f.F_pineapple(4, 3)
    assert f.F_P_n_k(5, 2) == 33
    for n in range(3, 9):
        assert f.F_P_n_k(n, 0) == f.F_complete(n)
    assert (f.F_T1(5), f.F_T1(4), f.F_T1(8)) == (17, 10, 104)
    assert f.F_T1(4) == f.F_path(4)


def test_spiders():
    assert f.F_spider(3, 2) == 36
    assert f.F_T_nk(7, 3) == 36
    assert f.F_T_nk(8, 3) == 48
    assert f.spider_legs(8, 3) == (2, 1)
    for l in range(1, 5):
        for q in range(1, 4):
            if l * q + 1 <= 10:
                assert f.F_spider(l, q) == core_index(build(spec("spider", l, q)))


def test_brooms():
    assert f.F_balanced_broom(5, 2) == 15 == f.F_path(5)
    assert f.F_balanced_broom(6, 3) == 24
    assert f.F_balanced_broom(6, 2) == 21 == f.F_path(6)
    assert f.F_double_broom(1, 4, 2) == f.F_T1(7)
    for k in range(1, 4):
        for l in range(1, 4):
            for d in range(2, 5):
                G = build(spec("broom", k, l, d))
                assert f.F_double_broom(k, l, d) == core_index_bruteforce(G)


def test_dumbbells():
    assert f.F_C33(7) == 84
    assert f.F_C33(6) == 69 == 10 + 10 + 7 * 7
    for n in range(6, 31):
        assert (f.F_cycle(n) < f.F_C33(n)) == (n <= 16)
    assert (f.F_C33(17), f.F_cycle(17)) == (289, 290)
    for m1 in range(3, 7):
        for m2 in range(m1, 7):
            shared = f.F_shared_dumbbell(m1, m2)
            assert shared == core_index(build(spec("dumbbell", m1, m2, m1 + m2 - 1)))
            assert shared >= f.F_dumbbell_lower_bound(m1, m2)


def test_union_extremes():
    assert f.union_extremes(5, 2) == (65, 9, 12)
    for n in range(1, 9):
        assert f.union_extremes(n, 1) == (f.F_complete(n), f.F_path(n), f.F_star(n))
        assert f.union_extremes(n, n) == (n, n, n)
    assert core_index(from_edge_list(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])) == 65


def test_pendant_free_minimum():
    for n in range(5, 40):
        assert f.pendant_free_minimum(n) == min(n * n + 1, (n * n + 17 * n) // 2)
    assert f.pendant_free_minimum(17) == 289


def test_closed_forms_are_exact_integers():
    for n in range(1, 40):
        assert isinstance(f.F_complete(n), int)
    assert f.F_complete(30) == sum(comb(30, i) * f.h(i) for i in range(1, 31))
