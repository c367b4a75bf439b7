import random

import pytest

from coreindex import perturb as P
from coreindex.counting import core_index_bruteforce, count_containing
from coreindex.families import build, cycle, path, spec, star
from coreindex.graph import from_edge_list, is_isomorphic

Lemma = P.Lemma


def check(o: P.PerturbationOutcome):
    """Outcome fields agree with the brute-force oracle and the lemma holds."""
    assert o.f_before == core_index_bruteforce(o.before)
    assert o.f_after == core_index_bruteforce(o.after)
    assert o.before.n == o.after.n
    assert o.holds, (o.f_before, o.f_after, o.expected_gap, o.bound)
    return o


class TestEffect1:
    def test_path_middle_edge(self):
        o = check(P.contract_bridge_add_pendant(path(4), (1, 2)))
        assert (o.f_before, o.f_after) == (10, 11)
        assert is_isomorphic(o.after, star(4))
        assert o.gap == o.expected_gap == (3 - 1) * (3 - 1) - 3

    def test_lollipop_inner_edge(self):
        o = check(P.contract_bridge_add_pendant(build(spec("lollipop", 6, 3)), (3, 4)))
        assert o.f_after > o.f_before

    def test_exact_gap_identity(self):
        G = build(spec("dumbbell", 3, 4, 9))
        for e in [(0, 3), (3, 4)]:
            o = P.contract_bridge_add_pendant(G, e)
            assert o.gap == o.expected_gap

    @pytest.mark.parametrize("G,e", [(path(3), (0, 1)), (cycle(4), (0, 1)), (path(4), (0, 2))])
    def test_preconditions(self, G, e):
        with pytest.raises(P.PreconditionError):
            P.contract_bridge_add_pendant(G, e)


class TestEffect2:
    def test_lollipop_with_tail(self):
        L = build(spec("lollipop", 6, 3))
        o = check(P.contract_bridge_pendant_at(L, (3, 0), 4))
        assert o.f_after > o.f_before

    def test_tree(self):
        check(P.contract_bridge_pendant_at(path(6), (2, 3), 1))

    def test_isolated_side(self):
        with pytest.raises(P.PreconditionError, match="f_G1"):
            P.contract_bridge_pendant_at(path(2), (0, 1), 0)

    def test_f_order(self):
        L = build(spec("lollipop", 6, 3))
        with pytest.raises(P.PreconditionError, match="f_G1\\(u\\) <= f_G2\\(v\\)"):
            P.contract_bridge_pendant_at(L, (0, 3), 1)

    def test_x_on_wrong_side(self):
        L = build(spec("lollipop", 6, 3))
        with pytest.raises(P.PreconditionError):
            P.contract_bridge_pendant_at(L, (3, 0), 1)


class TestGraft:
    def test_k2_base(self):
        o = check(P.graft_edge(star(4), 0, 1, 1))
        assert (o.f_before, o.f_after) == (11, 10)
        assert is_isomorphic(o.after, path(4))

    def test_triangle_base(self):
        G = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (4, 5)])
        o = check(P.graft_edge(G, 0, 1, 2))
        assert o.gap == -(count_containing(cycle(3), [0]) - 1) * 2 == -12

    def test_equal_lengths_still_strict(self):
        G = from_edge_list(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        o = check(P.graft_edge(G, 0, 2, 2))
        assert o.gap == o.expected_gap < 0

    def test_result_shape(self):
        G = from_edge_list(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        o = P.graft_edge(G, 0, 2, 2)
        want = from_edge_list(7, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 5), (5, 6), (6, 4)])
        assert is_isomorphic(o.after, want)

    @pytest.mark.parametrize("k,l", [(2, 1), (0, 1)])
    def test_bad_lengths(self, k, l):
        with pytest.raises(P.PreconditionError):
            P.graft_edge(star(4), 0, k, l)

    def test_missing_path(self):
        with pytest.raises(P.PreconditionError, match="pendant path"):
            P.graft_edge(star(4), 0, 1, 2)


class TestMovePendants:
    def test_path(self):
        o = check(P.move_pendants(path(4), 1, 2, 1, 1))
        assert (o.f_before, o.f_after) == (10, 11)

    def test_cycle_opposite(self):
        G = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)])
        o = check(P.move_pendants(G, 0, 2, 1, 1))
        assert o.f_after > o.f_before

    def test_symmetric_either_way(self):
        G = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)])
        assert P.move_pendants(G, 2, 0, 1, 1).strict

    def test_f_order_checked(self):
        G = build(spec("lollipop", 6, 3))
        G = from_edge_list(8, list(G.edges) + [(1, 6), (3, 7)])
        with pytest.raises(P.PreconditionError, match="f\\(u\\) >= f\\(v\\)"):
            P.move_pendants(G, 1, 3, 1, 1)
        check(P.move_pendants(G, 3, 1, 1, 1))

    def test_counts_checked(self):
        with pytest.raises(P.PreconditionError):
            P.move_pendants(path(4), 1, 2, 2, 1)


class TestMergePaths:
    def test_cycle_adjacent(self):
        G = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5)])
        o = check(P.merge_paths(G, 0, 1, 2, 2))
        assert o.f_after < o.f_before

    def test_triangle(self):
        G = from_edge_list(5, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)])
        o = check(P.merge_paths(G, 0, 1, 2, 2))
        fuv = count_containing(cycle(3), [0, 1])
        assert fuv == 5
        assert -o.gap >= (fuv - 1) * (2 * 2 - 2 - 2 + 1) >= 2

    def test_tree_base_rejected(self):
        with pytest.raises(P.PreconditionError, match="f\\(u, v\\) >= 2"):
            P.merge_paths(path(4), 1, 2, 2, 2)

    def test_short_paths_rejected(self):
        with pytest.raises(P.PreconditionError):
            P.merge_paths(cycle(4), 0, 1, 1, 2)


class TestLollipops:
    def test_reattach(self):
        o = check(P.reattach_lollipop(path(2), 0, (5, 3), 0))
        assert o.f_after > o.f_before

    def test_reattach_spec_argument(self):
        o = P.reattach_lollipop(cycle(3), 1, spec("lollipop", 6, 4), 2)
        assert o.holds

    def test_reattach_at_pendant_rejected(self):
        with pytest.raises(P.PreconditionError):
            P.reattach_lollipop(path(2), 0, (5, 3), 4)

    def test_girth_three_preferred(self):
        o = check(P.prefer_girth_three(path(2), 0, 4))
        assert o.f_after < o.f_before

    def test_small_m_rejected(self):
        with pytest.raises(P.PreconditionError):
            P.prefer_girth_three(path(2), 0, 3)

    def test_pendant_is_weakest(self):
        assert P.lollipop_pendant_is_weakest(6, 3) == []
        for n in range(4, 10):
            for g in range(3, n):
                assert P.lollipop_pendant_is_weakest(n, g) == []


class TestCampaigns:
    @pytest.mark.parametrize("lemma", list(Lemma))
    def test_small_campaign(self, lemma):
        outcomes = P.campaign(lemma, cases=25, seed=7, max_n=8)
        assert len(outcomes) == 25
        assert all(o.holds for o in outcomes)
        assert all(o.before.n <= 8 for o in outcomes)

    def test_campaign_is_reproducible(self):
        a = P.campaign(Lemma.EFFECT_3, cases=5, seed=3)
        b = P.campaign(Lemma.EFFECT_3, cases=5, seed=3)
        assert [(o.before, o.after) for o in a] == [(o.before, o.after) for o in b]

    def test_instances_respect_preconditions(self):
        rng = random.Random(1)
        for lemma in Lemma:
            o = P.instance(lemma, rng, 9)
            assert o.lemma is lemma and o.strict
