"""CLI behavior: golden outputs, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

import wittkit.service
from wittkit.cli import main
from wittkit.verifier import CheckReport

LAW_LINE = "H1 = X1 + Y1 ; H2 = X1*Y1 + X2 + Y2\n"


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerators:
    def test_witt_law_golden(self, capsys):
        code, out, err = run_cli(capsys, ["gen-witt-law"])
        assert code == 0
        assert out == LAW_LINE
        assert err == ""

    def test_witt_law_integral(self, capsys):
        code, out, _ = run_cli(capsys, ["gen-witt-law", "--integral"])
        assert code == 0
        assert out == "S1 = X1 + Y1 ; S2 = -X1*Y1 + X2 + Y2\n"

    def test_iterativity_json(self, capsys):
        code, out, _ = run_cli(capsys, ["gen-iterativity",
                                        "--i", "1,0", "--j", "1,0"])
        assert code == 0
        body = json.loads(out)
        assert body["constants"] == {"0,1": 1}
        assert body["law"] == "witt"

    def test_delta_table_is_byte_deterministic(self, capsys):
        args = ["gen-delta-table", "--max-i", "2", "--max-j", "2"]
        code, first, _ = run_cli(capsys, args)
        assert code == 0
        code, second, _ = run_cli(capsys, args)
        assert first == second
        body = json.loads(first)
        assert body["entries"]["0,0"]["0,0"]["text"] == "1"


class TestPointwiseCommands:
    def test_apply(self, capsys):
        code, out, _ = run_cli(capsys, ["apply", "D(1,0)^2", "X1*X2"])
        assert code == 0
        assert out == "X1\n"

    def test_derive_pbasis(self, capsys):
        code, out, _ = run_cli(capsys, ["derive-pbasis", "1/X1",
                                        "--j", "1,0"])
        assert code == 0
        assert out == "1/X1^2\n"

    def test_decompose(self, capsys):
        code, out, _ = run_cli(capsys, ["decompose", "X1^3/(X1 + 1)",
                                        "--n", "1"])
        assert code == 0
        pieces = json.loads(out)["pieces"]
        assert pieces["1,0"]["text"] == "X1/(X1 + 1)"


class TestVerify:
    def test_h5_text_output(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--suite", "h5"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == ("[h5.witness] p=2 e=2 witness-found "
                            "input=X1*X2 power=3 value=1")
        assert lines[-1] == "summary: 1 checks, 1 ok, 0 failed"

    def test_counterexample_witness_line(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--suite",
                                        "mw-counterexample"])
        assert code == 0
        assert ("[mw-counterexample.search] p=2 e=2 witness-found "
                "delta=X1 searched=5 x=X1*X2") in out.splitlines()

    def test_json_report(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--suite", "witt-law",
                                        "--json"])
        assert code == 0
        body = json.loads(out)
        assert body["all_passed"] is True
        assert len(body["reports"]) == 6

    def test_failing_check_exits_one(self, capsys, monkeypatch):
        def fake(suite, params, opts):
            return [CheckReport("synthetic.broken", {"p": 2, "e": 2},
                                "fail", {"why": "forced"})]
        monkeypatch.setattr(wittkit.service, "run_suite", fake)
        code, out, _ = run_cli(capsys, ["verify", "--suite", "witt-law"])
        assert code == 1
        assert "[synthetic.broken] p=2 e=2 fail why=forced" in out
        assert "summary: 1 checks, 0 ok, 1 failed" in out


class TestExitCodes:
    def test_missing_required_argument(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["derive-pbasis", "1/X1"])
        assert exc.value.code == 2

    def test_bad_input_maps_to_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["apply", "D(1,0)*", "X1"])
        assert exc.value.code == 2
        assert "error:" in capsys.readouterr().err

    def test_composite_characteristic(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen-witt-law", "--p", "6"])
        assert exc.value.code == 2

    def test_unreachable_server(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--server", "http://127.0.0.1:1", "gen-witt-law"])
        assert exc.value.code == 3
        assert "request failed" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wittkit", "gen-witt-law"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout == LAW_LINE
