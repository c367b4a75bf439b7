import json

import pytest

from coreindex import batch, extremal as X
from coreindex.counting import core_index
from coreindex.families import build, cycle, graph_class, parse_spec, spec, star
from coreindex.formats import decode_graph6
from coreindex.graph import SizeGuardError, canonical_form, is_isomorphic


def form(G):
    return canonical_form(G).decode()


class TestScan:
    def test_tree_star_maximizer(self):
        r = X.scan("trees", 8, "max", expected=[star(8)])
        assert r.max.value == 135 and r.max.match
        assert r.max.observed == [form(star(8))] and r.max.forms_complete
        assert r.max.count == 8 and r.size == 8 ** 6

    def test_unicyclic_tie_at_six(self):
        r = X.scan("unicyclic", 6, "min", expected=[cycle(6), build(spec("lollipop", 6, 3))])
        assert r.min.value == 37 and r.min.match
        assert set(r.minimizers) == {form(cycle(6)), form(build(spec("lollipop", 6, 3)))}

    def test_one_pendant_minimizer(self):
        r = X.scan("pendants:k=1", 7, "min", expected=[build(parse_spec("lollipop:n=7,g=3"))])
        assert r.min.match and r.min.value == 48 and r.min.forms_complete

    def test_both_modes(self):
        r = X.scan("trees", 7, "both")
        assert (r.min.value, r.max.value) == (28, 70)
        assert r.match is None

    def test_wrong_expectation_is_reported(self):
        r = X.scan("unicyclic", 6, "min", expected=[cycle(6)])
        assert r.min.match is False
        assert "labelings" in r.min.reason

    def test_expected_outside_class(self):
        r = X.scan("trees", 5, "max", expected=[cycle(5)])
        assert r.max.match is False and "not in the class" in r.max.reason

    def test_extremizers_reevaluate(self):
        r = X.scan("connected", 5, "both")
        for side in (r.min, r.max):
            assert side.observed
            assert all(core_index(decode_graph6(g)) == side.value for g in side.observed)

    def test_stream_engine_agrees(self):
        a = X.scan("pendants:k=2", 6, "both")
        b = X.scan("pendants:k=2", 6, "both", engine="stream")
        assert a.to_dict() == b.to_dict()

    def test_empty_class(self):
        with pytest.raises(X.EmptyClass):
            X.scan("pendant-free", 2, "min")

    def test_guard(self):
        with pytest.raises(SizeGuardError):
            X.scan("connected", 8)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            X.scan("trees", 5, "median")

    def test_report_serializes(self):
        d = X.scan("trees", 5, "both").to_dict()
        assert d["schema_version"] == X.SCHEMA_VERSION
        assert json.loads(json.dumps(d, sort_keys=True)) == d

    def test_workers_do_not_change_report(self, monkeypatch):
        batch.clear_caches()
        monkeypatch.setattr(batch, "CHUNK", 101)
        one = X.scan("unicyclic", 6, "both", workers=1).to_dict()
        batch.clear_caches()
        two = X.scan("unicyclic", 6, "both", workers=2).to_dict()
        batch.clear_caches()
        assert one == two


class TestVerify:
    def test_unknown_id(self):
        with pytest.raises(X.UnknownTheorem):
            X.verify_theorem("thm-nope")

    def test_registry_covers_named_results(self):
        ids = set(X.theorem_ids())
        for tid in ["lemma-concave", "thm-score", "thm-tree-F", "thm-con-F", "lemma-con-l1", "lemma-con-l2",
                    "lemma-con-l3", "thm-con-T1", "thm-con-T2", "thm-con-T3", "lemma-effect-1", "lemma-effect-5",
                    "lemma-cycle-F", "lemma-ucyclic1", "thm-main1", "thm-main6", "lemma-24", "lemma-3uni1",
                    "lemma-3uni2", "thm-pmax1", "thm-pmax6", "lemma-3cycles", "lemma-twocycles", "cor-ctwo",
                    "cor-c33", "thm-mainp1", "thm-mainp2", "thm-mlast", "h-sequence"]:
            assert tid in ids

    def test_complete_union_lemma(self):
        rs = X.verify_theorem("lemma-con-l1", [10])
        assert rs and all(r.passed for r in rs)
        assert {(r.params["l"], r.params["m"]) for r in rs} == {(l, m) for m in range(2, 11) for l in range(2, m + 1)}

    def test_cycle_crossover(self):
        rs = X.verify_theorem("lemma-3cycles", range(6, 21))
        assert all(r.passed for r in rs)
        assert "<" in rs[10].detail and ">=" in rs[11].detail  # n = 16 and n = 17

    def test_two_connected(self):
        assert all(r.passed for r in X.verify_theorem("thm-mainp2", [5, 6]))

    def test_components_with_k(self):
        rs = X.verify_theorem("thm-con-T2", [6], k=3)
        assert len(rs) == 1 and rs[0].passed and "min F = 9" in rs[0].detail

    @pytest.mark.parametrize("tid", ["thm-con-F", "thm-con-T1", "thm-con-T3", "thm-pmax2", "thm-pmax6",
                                     "thm-mlast", "cor-ctwo", "thm-mainp1", "h-sequence", "lemma-24",
                                     "prop-edge-monotone", "wiener-anchors", "lemma-twocycles"])
    def test_quick_checkers_pass(self, tid):
        rs = X.verify_theorem(tid)
        assert rs and all(r.passed for r in rs), [r.detail for r in rs if not r.passed]

    def test_failure_carries_reproducible_counterexample(self):
        r = X._scan_result("demo", {"n": 6}, "trees", 6, "min", [star(6)], None)
        assert not r.passed
        G = decode_graph6(r.counterexample)
        assert core_index(G) == 21 < core_index(star(6))
        assert graph_class("trees").contains(G)
        assert r.counterexample_edges.startswith("6 5\n")
        assert r.to_dict()["schema_version"] == X.SCHEMA_VERSION

    def test_lollipop_profile(self):
        p = X.lollipop_profile(10)
        assert p["peak"] == 7 and p["unimodal"] and p["no_ties"] and p["min_at_3"]


class TestCorrelation:
    def test_trees(self):
        c = X.wiener_correlation("trees", 7)
        assert c.size == 7 ** 5
        assert -1.0 <= c.spearman < 0
        rows = {row["statistic"]: row for row in c.table}
        path7, star7 = rows["min F"]["graphs"], rows["max F"]["graphs"]
        assert rows["max W"]["graphs"] == path7 and rows["min W"]["graphs"] == star7

    def test_unicyclic_side_by_side(self):
        c = X.wiener_correlation("unicyclic", 5)
        rows = {row["statistic"]: row for row in c.table}
        assert rows["min F"]["graphs"] == [form(cycle(5))]
        assert form(cycle(5)) in rows["min W"]["graphs"]
        assert rows["min W"]["value"] == 15

    def test_disconnected_class_rejected(self):
        with pytest.raises(Exception):
            X.wiener_correlation("components:k=2", 4)

    def test_paths_and_stars_opposite(self):
        for n in range(4, 9):
            c = X.wiener_correlation("trees", n)
            rows = {row["statistic"]: row["graphs"] for row in c.table}
            assert rows["min F"] == rows["max W"] and rows["max F"] == rows["min W"]
            assert is_isomorphic(decode_graph6(rows["max F"][0]), star(n))
