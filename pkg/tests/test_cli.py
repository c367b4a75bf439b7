import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from coreindex.cli import EXIT_FAIL, EXIT_GUARD, EXIT_OK, EXIT_USAGE, main, parse_range


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


class TestCompute:
    def test_star_graph6(self):
        code, out = run("compute", "--g6", "Ds_")
        assert code == EXIT_OK and out.split() == ["Ds_", "F=20"]

    def test_family_all_json(self):
        code, out = run("compute", "--family", "lollipop:n=6,g=3", "--what", "all", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        rec = payload["graphs"][0]
        assert (rec["F"], rec["wiener"], rec["n"], rec["m"]) == (37, 31, 6, 6)
        assert list(rec) == sorted(rec)

    def test_core_of_path(self):
        code, out = run("compute", "--edges", "4:0-1,1-2,2-3", "--what", "core", "--format", "json")
        assert json.loads(out)["graphs"][0]["core"] == [1, 2]

    def test_csv(self):
        code, out = run("compute", "--g6", "Ch", "--what", "all", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["graph6", "n", "m", "F", "f_vector", "core", "wiener"]
        assert rows[1][:4] == ["Ch", "4", "3", "10"]

    def test_input_file(self, tmp_path):
        p = tmp_path / "g.g6"
        p.write_text("# comment\nCh\n\nDs_\n")
        code, out = run("compute", "--input", str(p))
        assert code == EXIT_OK and [l.split()[1] for l in out.splitlines()] == ["F=10", "F=20"]

    def test_input_edges_file(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("3 3\n0 1\n1 2\n0 2\n")
        code, out = run("compute", "--input", str(p), "--input-format", "edges")
        assert code == EXIT_OK and "F=10" in out

    def test_parse_error_offset_across_lines(self, tmp_path, capsys):
        p = tmp_path / "bad.g6"
        p.write_text("Ch\nD?{~\n")
        code, _ = run("compute", "--input", str(p))
        assert code == EXIT_USAGE
        assert "byte 6" in capsys.readouterr().err

    def test_bad_graph6(self, capsys):
        code, _ = run("compute", "--g6", "D?")
        assert code == EXIT_USAGE and "error:" in capsys.readouterr().err

    def test_missing_file(self):
        assert run("compute", "--input", "/nonexistent/file")[0] == EXIT_USAGE

    def test_guard_and_override(self, capsys):
        edges = "17:" + ",".join(f"{i}-{i + 1}" for i in range(16))
        code, _ = run("compute", "--edges", edges)
        assert code == EXIT_GUARD and "--unsafe-size" in capsys.readouterr().err
        code, out = run("compute", "--edges", edges, "--unsafe-size")
        assert code == EXIT_OK and "F=153" in out
        assert "estimate" in capsys.readouterr().err


class TestGen:
    @pytest.mark.parametrize("s,F", [("lollipop:n=9,g=4", 87), ("pineapple:n=5,g=3", 33)])
    def test_expect_match(self, s, F):
        code, out = run("gen", s, "--expect-F")
        assert code == EXIT_OK and f"computed={F} match" in out

    def test_json(self):
        code, out = run("gen", "cycle:n=5", "--expect-F", "--format", "json")
        rec = json.loads(out)
        assert rec["computed"] == rec["closed_form"] == 26 and rec["match"] is True

    def test_bad_spec(self):
        assert run("gen", "lollipop:n=3,g=5")[0] == EXIT_USAGE
        assert run("gen", "nosuchfamily:n=4")[0] == EXIT_USAGE


class TestScan:
    def test_trees_text(self):
        code, out = run("scan", "--class", "trees", "--n", "7")
        assert code == EXIT_OK
        assert "min F = 28" in out and "max F = 70" in out

    def test_expected_match(self):
        code, out = run("scan", "--class", "unicyclic", "--n", "6", "--mode", "min",
                        "--expect", "cycle:n=6", "--expect", "lollipop:n=6,g=3")
        assert code == EXIT_OK and "match" in out and "all forms" in out

    def test_expected_mismatch_exits_one(self):
        code, out = run("scan", "--class", "trees", "--n", "6", "--mode", "max", "--expect", "path:n=6")
        assert code == EXIT_FAIL and "MISMATCH" in out

    def test_expect_needs_single_mode(self):
        assert run("scan", "--class", "trees", "--n", "6", "--expect", "star:n=6")[0] == EXIT_USAGE

    def test_json_and_csv(self):
        code, out = run("scan", "--class", "trees", "--n", "6", "--format", "json")
        d = json.loads(out)
        assert d["schema_version"] == 1 and d["min"]["value"] == 21 and d["max"]["value"] == 37
        code, out = run("scan", "--class", "trees", "--n", "6", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert {(r["mode"], r["value"]) for r in rows} == {("min", "21"), ("max", "37")}

    def test_guard(self):
        assert run("scan", "--class", "connected", "--n", "9")[0] == EXIT_GUARD

    def test_empty_class(self):
        assert run("scan", "--class", "pendant-free", "--n", "2")[0] == EXIT_USAGE

    def test_bad_class(self):
        assert run("scan", "--class", "banana", "--n", "5")[0] == EXIT_USAGE


class TestVerify:
    def test_text(self):
        code, out = run("verify", "lemma-3cycles", "--n", "15..18")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert all(l.startswith("PASS lemma-3cycles") for l in lines[:-1])
        assert lines[-1] == "4/4 checks passed"

    def test_json_lines(self):
        code, out = run("verify", "thm-con-T2", "--n", "6", "--k", "3", "--format", "json")
        recs = [json.loads(l) for l in out.splitlines()]
        assert code == EXIT_OK and len(recs) == 1 and recs[0]["passed"] is True
        assert recs[0]["schema_version"] == 1

    def test_unknown_id(self, capsys):
        assert run("verify", "thm-nope")[0] == EXIT_USAGE
        assert "unknown theorem id" in capsys.readouterr().err

    def test_all_hits_guard(self):
        assert run("verify", "thm-con-F", "--n", "9")[0] == EXIT_GUARD

    def test_campaign_seed(self):
        a = run("verify", "lemma-effect-3", "--seed", "7", "--cases", "10", "--format", "json")
        b = run("verify", "lemma-effect-3", "--seed", "7", "--cases", "10", "--format", "json")
        assert a == b and a[0] == EXIT_OK

    def test_max_n_trees(self):
        code, out = run("verify", "thm-score", "--max-n-trees", "6")
        assert code == EXIT_OK and "n=7" not in out


class TestMisc:
    def test_list(self):
        code, out = run("list", "--format", "json")
        ids = [t["id"] for t in json.loads(out)["theorems"]]
        assert "thm-main1" in ids and len(ids) == len(set(ids))

    def test_correlate(self):
        code, out = run("correlate", "--n", "7", "--format", "json")
        d = json.loads(out)
        assert code == EXIT_OK and d["spearman"] < -0.9

    def test_argparse_errors(self):
        assert run()[0] == EXIT_USAGE
        assert run("compute")[0] == EXIT_USAGE
        assert run("scan", "--class", "trees", "--n", "x")[0] == EXIT_USAGE

    def test_workers_flag_and_env(self, monkeypatch, capsys):
        assert run("scan", "--class", "trees", "--n", "6", "--workers", "0")[0] == EXIT_USAGE
        monkeypatch.setenv("COREINDEX_WORKERS", "lots")
        assert run("scan", "--class", "trees", "--n", "6")[0] == EXIT_USAGE
        monkeypatch.setenv("COREINDEX_WORKERS", "2")
        assert run("scan", "--class", "trees", "--n", "6")[0] == EXIT_OK

    def test_parse_range(self):
        assert parse_range("6..9") == [6, 7, 8, 9]
        assert parse_range("4,6,9..11") == [4, 6, 9, 10, 11]
        with pytest.raises(Exception):
            parse_range("9..6")

    @pytest.mark.skipif(shutil.which("coreindex") is None, reason="console script not installed")
    def test_console_script(self):
        p = subprocess.run(["coreindex", "compute", "--g6", "Ch"], capture_output=True, text=True)
        assert p.returncode == 0 and "F=10" in p.stdout

    def test_module_entry(self):
        p = subprocess.run([sys.executable, "-m", "coreindex.cli", "verify", "nope"], capture_output=True, text=True)
        assert p.returncode == EXIT_USAGE
