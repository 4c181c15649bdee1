"""Command-line interface: formats, determinism, exit codes, stream routing."""

import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from kummer_asym.cli import CSV_COLUMNS, main, parse_linear_in_b
from kummer_asym.errors import DomainError
from kummer_asym.ratpoly import ParamPoly


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLinearParser:
    def test_accepted_forms(self):
        cases = {
            "2-b": (2, -1),
            "b/2": (0, Fraction(1, 2)),
            "1-b/2": (1, Fraction(-1, 2)),
            "3/4+2*b": (Fraction(3, 4), 2),
            "-b": (0, -1),
            "b": (0, 1),
            "5/3": (Fraction(5, 3), 0),
            "1/2*b - 1": (-1, Fraction(1, 2)),
            "1e3": (1000, 0),
        }
        for text, (const, slope) in cases.items():
            assert parse_linear_in_b(text) == ParamPoly("b", (const, slope))

    def test_rejected_forms(self):
        for text in ("", "b^2", "b*b", "(b)", "2**b", "b+"):
            with pytest.raises(DomainError):
                parse_linear_in_b(text)


class TestCoeffs:
    def test_golden_json(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--order", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["config"]["variant"] == "AB"
        assert payload["config"]["order"] == 2
        assert payload["A"][0] == [["1"]]
        assert payload["A"][1] == [[], [], ["-1/6", "1/6"], [], [], [],
                                   ["1/72"]]
        assert payload["B"][0] == [[], [], [], ["1/6"]]
        assert len(payload["A"]) == 3 and len(payload["B"]) == 3

    def test_lowered_variant_text(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--order", "1",
                               "--variant", "ab", "--format", "text")
        assert code == 0
        assert "# config:" in out
        assert "a[0] = 1" in out
        assert "b[0] = 1/6*z^3" in out

    def test_parameter_rename(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--order", "1", "--param",
                               "b", "--format", "text")
        assert code == 0
        assert "A[1] = (-1/6 + 1/6*b)*z^2 + 1/72*z^6" in out

    def test_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "coeffs", "--order", "3")
        _, second, _ = run_cli(capsys, "coeffs", "--order", "3")
        assert first == second


class TestTemme:
    def test_json_tables(self, capsys):
        code, out, _ = run_cli(capsys, "temme", "--nmax", "2")
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"config", "a", "b", "d", "dtilde"}
        assert payload["a"][0] == [["1"]]
        assert payload["b"][0] == [[], [], [], ["1/6"]]
        assert payload["d"][0] == ["1"]
        assert payload["d"][1] == []
        assert payload["dtilde"][0] == ["1"]
        assert len(payload["a"]) == 3

    def test_text_lists_all_families(self, capsys):
        code, out, _ = run_cli(capsys, "temme", "--nmax", "1", "--format",
                               "text")
        assert code == 0
        for prefix in ("a[0]", "a[1]", "b[0]", "b[1]", "d[0]", "d[1]",
                       "dtilde[0]", "dtilde[1]"):
            assert f"{prefix} = " in out


class TestBernoulli:
    def test_gamma_ratio_shape(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli", "--n", "2", "--ell",
                               "2-b", "--x", "1-b/2")
        assert code == 0
        payload = json.loads(out)
        assert payload["B"][0] == ["1"]
        # x - ell/2 vanishes identically for this pair
        assert payload["B"][1] == []
        assert len(payload["B"]) == 3

    def test_bad_expression(self, capsys):
        code, _, err = run_cli(capsys, "bernoulli", "--n", "1", "--ell",
                               "b^2", "--x", "0")
        assert code == 1
        assert "error: DomainError" in err


class TestOracle:
    def test_half_order_k(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--fn", "k", "--nu", "0.5",
                               "--r", "2")
        assert code == 0
        assert "value_value=0.11993777196803" in out

    def test_exponential_m(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--fn", "m", "--a", "1",
                               "--b", "1", "--x", "3")
        assert code == 0
        assert "value_logmag=3 value_phase=0" in out

    def test_u_inverse_power(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--fn", "u", "--a", "1",
                               "--b", "2", "--r", "3")
        assert code == 0
        assert "value_value=0.33333333333333" in out

    def test_missing_arguments(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--fn", "i", "--r", "2")
        assert code == 1
        assert "error: DomainError" in err

    def test_kernel_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--fn", "m", "--a", "1",
                               "--b", "0", "--x", "2")
        assert code == 1
        assert "error: PoleError" in err


class TestEval:
    def test_headline(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--variant", "m")
        assert code == 0
        assert "precision=double" in out
        value = float(out.rsplit("rel_discrepancy=", 1)[1])
        assert value < 1e-6

    def test_env_precision_override(self, capsys, monkeypatch):
        monkeypatch.setenv("KUMMER_ASYM_PRECISION", "dd")
        code, out, _ = run_cli(capsys, "eval", "--variant", "m")
        assert code == 0
        assert "precision=dd" in out

    def test_env_rejects_unknown_mode(self, capsys, monkeypatch):
        monkeypatch.setenv("KUMMER_ASYM_PRECISION", "quad")
        code, _, err = run_cli(capsys, "eval", "--variant", "m")
        assert code == 1
        assert "error: DomainError" in err

    def test_pole_is_reported(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--variant", "m", "--b", "0")
        assert code == 1
        assert "error: PoleError" in err

    def test_usage_error_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["eval", "--variant", "bogus"])
        assert excinfo.value.code == 2
        capsys.readouterr()
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2
        capsys.readouterr()


class TestVerify:
    def test_all_identities_pass(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--nmax", "4")
        assert code == 0
        for name in ("recursion-resubstitution", "lowered-recursion",
                     "shifted-equals-lowered", "normalizer-reciprocal",
                     "lowered-equals-iterated",
                     "odd-ratio-coefficients-vanish", "slope-bridge",
                     "origin-bridge"):
            assert f"{name}: PASS" in out
        assert out.count(": PASS") == 8
        assert "all identity checks passed" in out


class TestSweep:
    def test_csv_to_stdout(self, capsys):
        code, out, err = run_cli(capsys, "sweep", "--variant", "m", "--t",
                                 "10,20", "--order", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3
        # config echo and fitted slope go to stderr when CSV owns stdout
        assert "# config:" in err
        assert "# slope:" in err and "N=1" in err

    def test_csv_to_file(self, capsys, tmp_path):
        target = tmp_path / "rows.csv"
        code, out, err = run_cli(capsys, "sweep", "--variant", "m", "--t",
                                 "20", "--order", "2", "--out", str(target))
        assert code == 0
        assert "# config:" in out
        assert err == ""
        lines = target.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 2

    def test_row_contents(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--variant", "m", "--t", "20",
                               "--order", "3")
        assert code == 0
        header, row = csv.reader(io.StringIO(out))
        assert list(header) == list(CSV_COLUMNS)
        record = dict(zip(header, row))
        assert record["variant"] == "m"
        assert record["b_re"] == "1.5" and record["b_im"] == "0"
        assert record["N"] == "3"
        assert record["status"] == "ok"
        assert float(record["rel_discrepancy"]) < 1e-6

    def test_failed_rows_keep_status_and_empty_cells(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--variant", "u-capital",
                               "--b", "2", "--z-theta",
                               repr(2.5 * math.pi), "--t", "20")
        assert code == 0
        _, row = csv.reader(io.StringIO(out))
        assert row[8:13] == [""] * 5
        assert row[13] == "error:DomainError"

    def test_deterministic(self, capsys):
        args = ("sweep", "--variant", "u-lower", "--t", "10,20")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second


class TestEntryPoint:
    def test_clean_interpreter_run(self):
        proc = subprocess.run(
            [sys.executable, "-c",
             "import sys; from kummer_asym.cli import main; "
             "sys.exit(main(sys.argv[1:]))", "coeffs", "--order", "1"],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["A"][0] == [["1"]]
