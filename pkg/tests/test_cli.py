"""End-to-end tests of the command line interface."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from groupcodes.cli import main

SPECS = Path(__file__).resolve().parents[1] / "demos" / "specs"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def even_weight_spec():
    return str(SPECS / "even_weight.spec")


@pytest.fixture
def constant_spec():
    return str(SPECS / "constant_kernel.spec")


class TestAnalyze:
    def test_even_weight_report(self, even_weight_spec):
        code, out, _ = run_cli("analyze", even_weight_spec)
        assert code == 0
        assert "invariant factors: [2, 2]" in out
        assert "control index: 1" in out
        assert "observe index: 2" in out

    def test_json_mirrors_text(self, even_weight_spec):
        code, out, _ = run_cli("analyze", even_weight_spec, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["invariant_factors"] == [2, 2]
        assert data["control_lengths"] == [0, 1, 1]
        assert data["observe_index"] == 2

    def test_constant_code_report(self, constant_spec):
        code, out, _ = run_cli("analyze", constant_spec)
        assert code == 0
        assert "weakly controllable: no (witness window 1)" in out
        assert "not-controllable" in out

    def test_deterministic_output(self):
        for spec in sorted(SPECS.glob("*.spec")):
            first = run_cli("analyze", str(spec))
            second = run_cli("analyze", str(spec))
            assert first == second
            assert first[0] == 0


class TestDual:
    def test_dual_of_even_weight_is_repetition(self, even_weight_spec):
        code, out, _ = run_cli("dual", even_weight_spec)
        assert code == 0
        assert "generator: 1 1 1" in out

    def test_dual_twice_is_canonical_original(self, even_weight_spec):
        _, once, _ = run_cli("dual", even_weight_spec)
        spec_path = SPECS / "_tmp_dual.spec"
        spec_path.write_text(once, encoding="utf-8")
        try:
            _, twice, _ = run_cli("dual", str(spec_path))
            spec_path.write_text(twice, encoding="utf-8")
            _, thrice, _ = run_cli("dual", str(spec_path))
            assert thrice == once
        finally:
            spec_path.unlink(missing_ok=True)

    def test_convolutional_dual_swaps_form(self, constant_spec):
        code, out, _ = run_cli("dual", constant_spec)
        assert code == 0
        assert "form: image" in out
        assert "tap: 1 1" in out

    def test_convolutional_dual_twice_roundtrips(self, constant_spec, tmp_path):
        _, once, _ = run_cli("dual", constant_spec)
        first = tmp_path / "dual.spec"
        first.write_text(once, encoding="utf-8")
        _, twice, _ = run_cli("dual", str(first))
        second = tmp_path / "dual2.spec"
        second.write_text(twice, encoding="utf-8")
        _, thrice, _ = run_cli("dual", str(second))
        assert thrice == once


class TestDecompose:
    def test_even_weight_decomposition(self, even_weight_spec):
        code, out, _ = run_cli("decompose", even_weight_spec)
        assert code == 0
        assert "y_1 = [1, 1, 0]" in out
        assert "y_2 = [0, 1, 1]" in out
        assert "order product 4 vs cardinality 4" in out
        assert "verdict: valid" in out

    def test_json_shape(self, even_weight_spec):
        code, out, _ = run_cli("decompose", even_weight_spec, "--format", "json")
        data = json.loads(out)
        assert data["verified"] is True
        assert data["subdirect"] is True
        assert [g["order"] for g in data["generators"]] == [2, 2]


class TestCheck:
    def test_weak_controllable_failure_exits_one(self, constant_spec):
        code, out, _ = run_cli("check", constant_spec, "--property", "weak-controllable")
        assert code == 1
        assert "fails at window length 1" in out

    def test_l_controllable_block(self, even_weight_spec):
        code, _, _ = run_cli(
            "check", even_weight_spec, "--property", "l-controllable", "--level", "1"
        )
        assert code == 0
        code, _, _ = run_cli(
            "check", even_weight_spec, "--property", "l-controllable", "--level", "0"
        )
        assert code == 1

    def test_rectangular(self):
        code, _, _ = run_cli(
            "check", str(SPECS / "coprime_z6.spec"), "--property", "rectangular"
        )
        assert code == 0
        code, _, _ = run_cli(
            "check", str(SPECS / "even_weight.spec"), "--property", "rectangular"
        )
        assert code == 1

    def test_subdirect(self, even_weight_spec):
        code, _, _ = run_cli("check", even_weight_spec, "--property", "subdirect")
        assert code == 0

    def test_missing_level_is_usage_error(self, even_weight_spec):
        code, _, err = run_cli(
            "check", even_weight_spec, "--property", "l-controllable"
        )
        assert code == 2
        assert "level" in err


class TestDualityCheck:
    def test_block_report_passes(self, even_weight_spec):
        code, out, _ = run_cli("duality-check", even_weight_spec)
        assert code == 0
        assert "verdict: pass" in out

    def test_convolutional_report_passes(self, constant_spec):
        code, out, _ = run_cli("duality-check", constant_spec)
        assert code == 0
        assert "zero-extension" in out


class TestOracle:
    def test_block_oracle_agrees(self, even_weight_spec):
        code, out, _ = run_cli("oracle", even_weight_spec)
        assert code == 0
        assert "verdict: pass" in out

    def test_convolutional_oracle_agrees(self, constant_spec):
        code, out, _ = run_cli("oracle", constant_spec)
        assert code == 0


class TestErrors:
    def test_missing_file(self):
        code, _, err = run_cli("analyze", "no_such_file.spec")
        assert code == 2
        assert "no such file" in err

    def test_bad_document(self, tmp_path):
        bad = tmp_path / "bad.spec"
        bad.write_text("kind: block\nsymbols: [2]\ngenerator: 7\n", encoding="utf-8")
        code, _, err = run_cli("analyze", str(bad))
        assert code == 2
        assert "out of range" in err

    def test_console_entry_point(self, even_weight_spec):
        proc = subprocess.run(
            [sys.executable, "-m", "groupcodes.cli", "analyze", even_weight_spec],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "groupcodes analyze report" in proc.stdout
