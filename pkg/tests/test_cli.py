"""Command-line layer: row counts, column contracts, exit codes,
byte-identical reruns."""

import json

import numpy as np
import pytest

import anderson_ids.verify as verify
from anderson_ids import theorem1_bounds
from anderson_ids.cli import main

TOL = 2e-12


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def data_rows(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return lines[0], lines[1:]


class TestBounds:
    def test_row_count_matches_grid(self, capsys):
        rc, out, _ = run(capsys, "bounds", "--grid", "401")
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "energy,lower,upper,fp,free,lif_lo,lif_hi"
        assert len(rows) == 401

    def test_config_echoed_as_comments(self, capsys):
        rc, out, _ = run(capsys, "bounds", "--grid", "5", "--p", "0.4")
        assert rc == 0
        comments = [ln for ln in out.splitlines() if ln.startswith("#")]
        assert "# p=0.4" in comments
        assert "# grid=5" in comments

    def test_columns_are_ordered_bounds(self, capsys):
        rc, out, _ = run(capsys, "bounds", "--grid", "51", "--p", "0.3",
                         "--special-up-to", "6")
        _, rows = data_rows(out)
        assert len(rows) > 51
        for row in rows:
            x, lo, hi, fp, free, lif_lo, lif_hi = map(float, row.split(","))
            assert lif_lo <= lo + TOL
            assert lo <= hi + TOL
            assert lo - TOL <= fp <= hi + TOL
            assert hi <= lif_hi + TOL
            assert 0.0 <= free <= 1.0

    def test_byte_identical_reruns(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["bounds", "--grid", "21", "--out", str(a)]) == 0
        assert main(["bounds", "--grid", "21", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestIds:
    ARGS = ("ids", "--size", "3000", "--reps", "2", "--grid", "9",
            "--special-up-to", "0", "--threads", "1")

    def test_basic_curve(self, capsys):
        rc, out, _ = run(capsys, *self.ARGS)
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "energy,value,stderr,p,zeta,L,reps,seed"
        assert len(rows) == 9
        values = [float(r.split(",")[1]) for r in rows]
        assert values == sorted(values)

    def test_with_bounds_columns(self, capsys):
        rc, out, _ = run(capsys, *self.ARGS, "--with-bounds")
        assert rc == 0
        header, rows = data_rows(out)
        assert header.endswith(",lower,upper")
        for row in rows:
            cells = row.split(",")
            x, v, lo, hi = (float(cells[0]), float(cells[1]),
                            float(cells[-2]), float(cells[-1]))
            assert lo <= hi + TOL

    def test_bound_columns_empty_outside_band(self, capsys):
        rc, out, _ = run(capsys, "ids", "--size", "1000", "--reps", "1",
                         "--grid", "3", "--x-min", "3.0", "--x-max", "5.0",
                         "--special-up-to", "0", "--threads", "1",
                         "--with-bounds")
        assert rc == 0
        _, rows = data_rows(out)
        outside = rows[-1].split(",")
        assert float(outside[0]) == 5.0
        assert outside[-2] == "" and outside[-1] == ""

    def test_byte_identical_reruns(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main([*self.ARGS, "--out", str(a)]) == 0
        assert main([*self.ARGS, "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_zero_size_is_usage_error(self, capsys):
        rc, _, err = run(capsys, "ids", "--size", "0")
        assert rc == 2
        assert "error" in err

    def test_resource_guard_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("ANDERSON_IDS_MAX_SIZE", "100")
        rc, _, err = run(capsys, "ids", "--size", "500", "--grid", "3",
                         "--threads", "1")
        assert rc == 3


class TestBlockIds:
    def test_curve(self, capsys):
        rc, out, _ = run(capsys, "blockids", "--variant", "ceil-m1",
                         "--size", "500", "--grid", "7",
                         "--special-up-to", "0")
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "energy,value,stderr,p,zeta,L,reps,seed"
        assert len(rows) == 7
        assert "# variant=ceil-m1" in out
        # zeta column is empty: no coupling enters the block counts
        assert all(r.split(",")[4] == "" for r in rows)

    def test_variant_is_required(self, capsys):
        rc, _, _ = run(capsys, "blockids", "--size", "100")
        assert rc == 2


class TestSpecial:
    def test_table(self, capsys):
        rc, out, _ = run(capsys, "special", "--p", "0.3", "--n-max", "4")
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "n,x_lower,x_upper,ids_lower,ids_upper"
        assert len(rows) == 3
        first = rows[0].split(",")
        assert first[0] == "2"
        assert float(first[3]) == pytest.approx(0.4117647058823529)


class TestConjecture:
    def test_table(self, capsys):
        rc, out, _ = run(capsys, "conjecture", "--n", "3", "--zetas", "2,4",
                         "--size", "2000", "--reps", "2", "--threads", "1")
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "zeta,n,branch,estimate,stderr,closed_form,proved"
        assert len(rows) == 4
        proved = [r.split(",")[-1] for r in rows]
        assert set(proved) <= {"true", "false"}
        # coupling 2 rows are unproved for n = 3, coupling 4 rows are proved
        assert proved == ["false", "false", "true", "true"]

    def test_rejects_weak_coupling(self, capsys):
        rc, _, err = run(capsys, "conjecture", "--zetas", "1.5",
                         "--size", "100", "--reps", "1")
        assert rc == 2


class TestLemma5:
    def test_raw_samples(self, capsys):
        rc, out, _ = run(capsys, "lemma5", "--sizes", "2000,5000",
                         "--reps", "3")
        assert rc == 0
        header, rows = data_rows(out)
        assert header == "n,rep,ratio"
        assert len(rows) == 6
        ratios = [float(r.split(",")[2]) for r in rows]
        assert all(0.0 < r < 3.0 for r in ratios)

    def test_small_sizes_rejected(self, capsys):
        rc, _, _ = run(capsys, "lemma5", "--sizes", "500")
        assert rc == 2


class TestVerify:
    ARGS = ("--size", "20000", "--reps", "4", "--grid", "21", "--threads", "1")

    def test_single_check_json(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        rc, _, err = run(capsys, "verify", "theorem1", *self.ARGS,
                         "--out", str(out_path))
        assert rc == 0
        payload = json.loads(out_path.read_text())
        assert set(payload) == {"config", "reports"}
        assert [r["name"] for r in payload["reports"]] == ["theorem1"]
        assert payload["reports"][0]["status"] == "PASS"
        assert "theorem1" in err

    def test_all_runs_every_check(self, capsys, tmp_path):
        out_path = tmp_path / "all.json"
        rc, _, _ = run(capsys, "verify", "all", *self.ARGS, "--trials", "5",
                       "--max-size", "60", "--sizes", "2000",
                       "--out", str(out_path))
        payload = json.loads(out_path.read_text())
        names = [r["name"] for r in payload["reports"]]
        assert names == sorted(["theorem1", "interlacing", "special", "cor4",
                                "lifschitz", "lemma5", "symmetry"])
        assert rc in (0, 1)

    def test_weak_coupling_is_usage_error(self, capsys):
        rc, _, err = run(capsys, "verify", "theorem1", "--zeta", "3",
                         *self.ARGS)
        assert rc == 2
        assert "zeta" in err

    def test_failure_exit_code(self, capsys, monkeypatch, tmp_path):
        crooked = lambda p, x, tol=1e-12: tuple(
            1.5 * b for b in theorem1_bounds(p, x, tol))
        monkeypatch.setattr(verify, "theorem1_bounds", crooked)
        rc, _, err = run(capsys, "verify", "theorem1", *self.ARGS,
                         "--out", str(tmp_path / "r.json"))
        assert rc == 1
        assert "FAIL" in err

    def test_byte_identical_reports(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert main(["verify", "special", *self.ARGS,
                         "--out", str(path)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestTopLevel:
    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "bounds" in out and "verify" in out
