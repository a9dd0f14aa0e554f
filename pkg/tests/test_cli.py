import json
import subprocess
import sys

import pytest

import groupcover.cli as cli
from conftest import DATA
from groupcover import ConvergenceReport, Decision, VerificationReport, __version__
from groupcover.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", "--no-header", *argv)
    return code, json.loads(out)


class TestGroup:
    def test_summary(self, capsys):
        code, out, _ = run(capsys, "group", "dihedral:4")
        assert code == 0
        assert out.splitlines()[0] == f"groupcover {__version__}"
        assert "order: 8" in out and "identity: e" in out

    def test_table_round_trips_through_file(self, capsys, tmp_path):
        code, out, _ = run(capsys, "--no-header", "group", "sym:3", "--table")
        assert code == 0
        table = out[out.index("order 6"):]
        path = tmp_path / "s3.txt"
        path.write_text(table)
        code, out2, _ = run(capsys, "--no-header", "group", f"table:{path}", "--table")
        assert code == 0
        assert out2[out2.index("order 6"):] == table

    def test_q8_file(self, capsys):
        code, data = run_json(capsys, "group", f"table:{DATA / 'q8.txt'}")
        assert code == 0
        assert data["order"] == 8 and data["identity"] == "1"

    def test_bad_descriptor(self, capsys):
        code, _, err = run(capsys, "group", "cyclic:x")
        assert code == 1
        assert "column" in err

    def test_not_a_group_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("order 3\n0 1 2\n1 0 2\n2 1 0\n")
        code, _, err = run(capsys, "group", f"table:{path}")
        assert code == 1
        assert "NotAGroup" in err and "not a permutation" in err

    def test_closure_cap(self, capsys):
        code, _, err = run(capsys, "--closure-cap", "10", "group", "perm:[(0,1,2,3,4);(0,1)]")
        assert code == 1
        assert "ClosureTooLarge" in err


class TestProduct:
    def test_ex1(self, capsys):
        code, out, _ = run(capsys, "--no-header", "product", "cyclic:4", "0,2", "comp:0,2")
        assert code == 0
        assert "product: {1,3}" in out and "equals G: no" in out

    def test_cover(self, capsys):
        code, data = run_json(capsys, "product", "ea:2,2", "e,a", "e,b")
        assert code == 0 and data["is_G"] is True

    def test_parse_error_is_located(self, capsys):
        code, _, err = run(capsys, "product", "cyclic:4", "0,9")
        assert code == 1
        assert "line 1, column 3" in err

    def test_empty_factor_gives_empty_product(self, capsys):
        code, data = run_json(capsys, "product", "cyclic:4", "none", "0")
        assert code == 0
        assert data["product"] == [] and data["is_G"] is False

    def test_empty_member_rejected_by_family_commands(self, capsys):
        code, _, err = run(capsys, "theorem2", "cyclic:4", "none", "0")
        assert code == 1
        assert "EmptySubset" in err


class TestTheorem2:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "--no-header", "theorem2", "cyclic:4", "0", "0", "-v")
        assert code == 0
        assert "d(B): -2" in out
        assert "counts_complement: 3 2 2 2" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "--no-header", "--format", "json",
                           "theorem2", "sym:3", "e,(01)", "(012),(02)", "-v")
        assert code == 0
        report = VerificationReport.from_json(out)
        assert report.passed and report.n == 2
        assert json.loads(report.to_json(verbose=True)) == json.loads(out)

    def test_failure_exits_2(self, capsys, monkeypatch):
        real = cli.verify_theorem2

        def failing(*a, **kw):
            rep = real(*a, **kw)
            rep.passed = False
            rep.failure = "identity"
            return rep

        monkeypatch.setattr(cli, "verify_theorem2", failing)
        code, out, _ = run(capsys, "theorem2", "cyclic:4", "0", "0")
        assert code == 2


class TestDecide:
    def test_check_holds(self, capsys):
        code, data = run_json(capsys, "decide", "cyclic:4", "0,1,2", "0,1", "0", "--check")
        assert code == 0
        assert data["theorem3_decide"] == str(Decision.PRODUCT_IS_G)
        assert data["d"] == 3
        assert data["claims_hold"] == {"decide_by_sign": True, "theorem3_decide": True}

    def test_single_member(self, capsys):
        code, data = run_json(capsys, "decide", "cyclic:4", "0,1,2")
        assert code == 0
        assert data["theorem3_decide"] is None

    def test_violation_exits_2(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "theorem3_decide", lambda fam: Decision.PRODUCT_IS_G)
        code, out, _ = run(capsys, "--no-header", "decide", "cyclic:4", "0,2", "0,2", "--check")
        assert code == 2
        assert "claim theorem3_decide: VIOLATED" in out


class TestStabilize:
    def test_stabilizes(self, capsys):
        code, data = run_json(capsys, "stabilize", "cyclic:6", "1,2")
        assert code == 0
        assert data["stabilizes"] is True and data["k"] == 5

    def test_cycle(self, capsys):
        code, out, _ = run(capsys, "--no-header", "stabilize", "cyclic:4", "1,3")
        assert code == 0
        assert "stabilizes: no, A^3 = A^1 (period 2)" in out

    def test_inconclusive(self, capsys):
        code, _, err = run(capsys, "stabilize", "cyclic:6", "1,2", "--max-steps", "2")
        assert code == 1
        assert "Inconclusive" in err


class TestWalk:
    def test_summary(self, capsys):
        code, out, _ = run(capsys, "--no-header", "walk", "cyclic:6", "1,2")
        assert code == 0
        assert "converged: yes at n=45" in out
        assert "carrier stabilizes: yes, k=5" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "--no-header", "--format", "json", "walk", "cyclic:4", "1,3",
                           "--max-n", "50")
        assert code == 0
        data = json.loads(out)
        assert data["tv_trace"] == ["1/2"] * 50
        data.pop("group"), data.pop("carrier")
        rep = ConvergenceReport.from_json(json.dumps(data))
        assert rep.to_dict() == data

    def test_csv_file(self, capsys, tmp_path):
        path = tmp_path / "trace.csv"
        code, _, _ = run(capsys, "walk", "cyclic:4", "0,1", "--csv", str(path))
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "n,tv" and lines[1] == "1,1/2"

    def test_csv_stdout_float(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "walk", "cyclic:6", "1,2", "--float",
                           "--max-n", "3")
        assert code == 0
        assert out.splitlines() == ["n,tv", "1,0.666666666667", "2,0.5", "3,0.416666666667"]


class TestSweep:
    def test_serial_and_parallel_agree(self, capsys):
        args = ["sweep", "dihedral:4", "--n", "3", "--count", "20", "--seed", "5"]
        code1, a = run_json(capsys, *args)
        code2, b = run_json(capsys, *args, "--parallel", "2")
        assert code1 == code2 == 0
        assert a == b
        assert a["passed"] == a["families"] == 20


class TestExamples:
    @pytest.mark.parametrize("name", ["ex1", "ex2", "ex3", "ex4", "disjoint", "boundary",
                                      "large-pairs", "commute", "tight-sums"])
    def test_each(self, capsys, name):
        code, out, _ = run(capsys, "--no-header", "examples", name)
        assert code == 0
        assert out.startswith(f"[PASS] {name}:")

    def test_ex1_reports_odd_coset(self, capsys):
        _, out, _ = run(capsys, "--no-header", "examples", "ex1")
        assert "H(G\\H) = {1,3} != G" in out

    def test_ex4_sizes(self, capsys):
        _, data = run_json(capsys, "examples", "ex4")
        texts = [c["text"] for c in data["scenarios"][0]["claims"]]
        assert "cyclic:6, A1={0,2,4}, A2={0,1}: |A1|+|A2| < |G|" in texts

    def test_all(self, capsys):
        code, out, _ = run(capsys, "--no-header", "examples")
        assert code == 0
        assert out.rstrip().endswith("9/9 scenarios hold")

    def test_deviation_exits_2(self, capsys, monkeypatch):
        from groupcover import scenarios
        real = scenarios.SCENARIOS["ex2"]

        def broken():
            res = real()
            res.claims[0].ok = False
            return res

        monkeypatch.setitem(scenarios.SCENARIOS, "ex2", broken)
        code, out, _ = run(capsys, "--no-header", "examples", "ex2")
        assert code == 2
        assert out.startswith("[FAIL] ex2")


class TestUsage:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 1

    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["product"])
        assert exc.value.code == 1

    def test_common_options_either_side(self, capsys):
        _, before, _ = run(capsys, "--no-header", "stabilize", "cyclic:6", "1,2")
        _, after, _ = run(capsys, "stabilize", "cyclic:6", "1,2", "--no-header")
        assert before == after
        assert not before.startswith("groupcover")

    @pytest.mark.parametrize("argv", [
        ["theorem2", "ea:3,3", "0,1,2", "comp:0,1,2", "a,b", "-v"],
        ["walk", "sym:3", "e,(01)", "--tol", "1e-6"],
        ["decide", "dihedral:4", "e,s", "r,r^2", "sr", "--check"],
    ])
    def test_deterministic(self, capsys, argv):
        outs = {run(capsys, *argv)[1] for _ in range(3)}
        assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "groupcover", "--no-header", "examples", "ex2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("[PASS] ex2")
