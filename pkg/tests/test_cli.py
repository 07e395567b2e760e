import json
import math
import shutil
import subprocess
import sys

import pytest

from zdg.cli import main

ZDG = [shutil.which("zdg") or sys.executable, *([] if shutil.which("zdg") else ["-m", "zdg.cli"])]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(out):
    return [json.loads(x) for x in out.splitlines()]


def verdicts(rec):
    return {c["formula_id"]: c["verdict"] for c in rec["closed_forms"]}


def test_analyze_27_json(capsys):
    code, out, _ = run(capsys, "analyze", "27", "--format", "json", "--no-timings")
    assert code == 0
    rec = json.loads(out)
    assert rec["spectrum"]["energy"] == pytest.approx(2 * math.sqrt(13), abs=1e-11)
    assert rec["spectrum"]["energy"] == 7.21110255093
    assert rec["wiener"]["brute_force"] == 43
    assert rec["block_form"] is True
    assert set(verdicts(rec).values()) == {"Match"}
    assert "timings_ms" not in rec
    assert list(rec)[:6] == ["n", "form", "factors", "convention", "vertices", "classes"]


def test_analyze_27_text(capsys):
    code, out, _ = run(capsys, "analyze", "27")
    assert code == 0
    assert "energy: 7.21110255093" in out
    assert "wiener (BFS): 43" in out
    assert "timings (ms):" in out


def test_analyze_12_reports_mismatch(capsys):
    code, out, _ = run(capsys, "analyze", "12", "--format", "json")
    assert code == 2
    rec = json.loads(out)
    assert rec["wiener"]["brute_force"] == 38
    printed = next(c for c in rec["closed_forms"] if c["formula_id"] == "thm5.2-printed")
    assert printed["value"] == 34 and printed["verdict"] == "Mismatch"
    assert verdicts(rec)["thm4.3-proof"] == "Match"
    assert verdicts(rec)["class-table"] == "Match"
    assert "timings_ms" in rec


@pytest.mark.parametrize("n", ["7", "1", "2"])
def test_analyze_no_zero_divisors(capsys, n):
    code, _, err = run(capsys, "analyze", n)
    assert code == 1
    assert "no zero divisors" in err


def test_analyze_invalid_modulus(capsys):
    code, _, err = run(capsys, "analyze", "0")
    assert code == 1 and err


def test_analyze_above_dense_cap_skips_dense_parts(capsys):
    code, out, _ = run(capsys, "analyze", "125", "--dense-cap", "10", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["dense_check"] is None and rec["wiener"] is None and rec["block_form"] is None
    assert verdicts(rec) == {"thm4.1": "Match", "thm4.2": "Match"}


def test_analyze_simple_convention(capsys):
    code, out, _ = run(capsys, "analyze", "125", "--loops", "simple", "--format", "json")
    rec = json.loads(out)
    assert rec["convention"] == "simple"
    assert rec["structural_ok"]
    # closed forms describe the looped matrix, so they no longer hold
    assert code == 2


def test_matrix_27_matches_fixture(capsysbinary, z27_fixture_bytes):
    assert main(["matrix", "27", "--format", "csv"]) == 0
    assert capsysbinary.readouterr().out == z27_fixture_bytes


def test_matrix_8_dot_simple(capsys):
    code, out, _ = run(capsys, "matrix", "8", "--format", "dot", "--loops", "simple")
    assert code == 0
    assert out.startswith("graph Z8 {")
    assert out.count(" -- ") == 2


def test_matrix_6_csv(capsys):
    code, out, _ = run(capsys, "matrix", "6")
    assert code == 0
    rows = out.splitlines()
    assert sorted(map(int, rows[0].split(","))) == [2, 3, 4]
    assert len(rows) == 4 and all(len(r.split(",")) == 3 for r in rows[1:])


def test_matrix_errors(capsys):
    assert run(capsys, "matrix", "13")[0] == 1
    code, _, err = run(capsys, "matrix", "1000", "--dense-cap", "10")
    assert code == 1 and "cap" in err


def test_verify_p3(capsys):
    code, out, _ = run(capsys, "verify", "--form", "p3", "--p-max", "7", "--no-timings")
    assert code == 0
    *recs, summary = lines(out)
    assert [r["n"] for r in recs] == [8, 27, 125, 343]
    for r in recs:
        assert set(verdicts(r).values()) == {"Match"}
        assert r["structural_ok"]
    assert summary["summary"]["records"] == 4
    assert summary["summary"]["formulas"]["thm5.1"] == {"Match": 4, "Mismatch": 0}


def test_verify_p2q(capsys):
    code, out, _ = run(capsys, "verify", "--form", "p2q", "--p-max", "5", "--no-timings")
    assert code == 0
    *recs, summary = lines(out)
    got = {tuple(f[0] for f in r["factors"]): r for r in recs}
    assert [r["n"] for r in recs] == sorted(r["n"] for r in recs)
    assert sorted(r["n"] for r in recs) == sorted(p * p * q for p, q in
                                                  [(2, 3), (3, 2), (2, 5), (5, 2), (3, 5), (5, 3)])
    for r in recs:
        v = verdicts(r)
        assert v["thm4.3-proof"] == "Match"
        q2 = r["n"] in (18, 50)  # q = 2
        assert (v["thm4.3-statement"] == "Match") == q2
    tally = summary["summary"]["formulas"]
    assert tally["thm4.3-statement"] == {"Match": 2, "Mismatch": 4}
    assert summary["summary"]["structural_failures"] == []
    assert got


def test_verify_general(capsys):
    code, out, _ = run(capsys, "verify", "--form", "general", "--p-max", "2", "--n-cap", "40",
                       "--no-timings")
    assert code == 0
    *recs, _ = lines(out)
    special = {p**3 for p in (2, 3)} | {p * p * q for p in (2, 3, 5) for q in (2, 3, 5, 7) if p != q}
    want = [n for n in range(4, 41) if any(n % k == 0 for k in range(2, n)) and n not in special]
    assert [r["n"] for r in recs] == want
    assert {16, 24, 30, 36} <= set(want)
    assert all(r["form"] == "general" and r["block_form"] for r in recs)


def test_verify_empty_range(capsys):
    code, out, _ = run(capsys, "verify", "--form", "p3", "--p-max", "1")
    assert code == 0
    assert lines(out) == [{"summary": {"records": 0, "structural_failures": [], "formulas": {}}}]


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--form", "p2q", "--p-max", "3", "--q-max", "7", "--no-timings"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    parallel = run(capsys, *argv, "--jobs", "2")[1]
    assert first == second == parallel


def test_verify_output_file(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "--form", "p3", "--p-max", "3", "--output", str(path))
    assert code == 0 and out == ""
    assert len(path.read_text().splitlines()) == 3


def test_zdg_jobs_env(monkeypatch):
    from zdg.cli import build_parser

    monkeypatch.setenv("ZDG_JOBS", "3")
    assert build_parser().parse_args(["verify", "--form", "p3", "--p-max", "3"]).jobs == 3
    monkeypatch.setenv("ZDG_JOBS", "junk")
    assert build_parser().parse_args(["verify", "--form", "p3", "--p-max", "3"]).jobs == 1


def test_structure_violation_aborts(capsys, monkeypatch):
    import zdg.cli
    from zdg.wiener import StructureViolationError

    def boom(n, opts):
        raise StructureViolationError(f"Z_{n}: classes differ")

    monkeypatch.setattr(zdg.cli, "analyze_modulus", boom)
    code, _, err = run(capsys, "verify", "--form", "p3", "--p-max", "3")
    assert code == 1 and "aborted" in err


@pytest.mark.parametrize(
    "argv, code",
    [(["analyze", "27"], 0), (["analyze", "12"], 2), (["analyze", "7"], 1), (["matrix", "8"], 0)],
)
def test_entry_point_exit_codes(argv, code):
    proc = subprocess.run([*ZDG, *argv], capture_output=True)
    assert proc.returncode == code
