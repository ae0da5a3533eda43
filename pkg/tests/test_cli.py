"""CLI surface: eval registry, verify reports, exit codes, determinism."""

import json

import mpmath
import pytest
from mpmath import mp

from qhankel.cli import main
from qhankel.context import QContext
from qhankel.kernels import kernel_plus

RHS_SPOT = "-0.006022949454744439518643674680359152537922574204060727"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_wall_degree_zero_is_one(self, capsys):
        code, out, _ = run(capsys, "eval", "wall", "--n", "0", "--a", "0.5",
                           "--x", "0.3", "--q", "0.5")
        assert code == 0
        assert out.strip() == "1.0"

    def test_qpochhammer_zero_base_infinite_product(self, capsys):
        code, out, _ = run(capsys, "eval", "qpochhammer", "--a", "0",
                           "--k", "inf", "--q", "0.5")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "1.0"
        assert lines[1].startswith("tail_bound ")
        assert lines[2].startswith("terms ")

    def test_product_formula_rhs_frozen_spot(self, capsys):
        code, out, _ = run(capsys, "eval", "erdelyi_rhs", "--n", "1",
                           "--m", "2", "--nu", "0.5", "--sigma", "0.3",
                           "--z", "0.7", "--q", "0.6")
        assert code == 0
        assert out.splitlines()[0].startswith(RHS_SPOT[:40])

    def test_lattice_sum_prints_tail_bound(self, capsys):
        code, out, _ = run(capsys, "eval", "erdelyi_lhs", "--n", "0",
                           "--m", "0", "--nu", "0.5", "--sigma", "0.3",
                           "--z", "0.7", "--q", "0.6")
        assert code == 0
        assert "tail_bound" in out

    def test_kernel_entry_matches_library_call(self, capsys):
        code, out, _ = run(capsys, "eval", "kernel_plus", "--p", "1",
                           "--v", "2", "--w", "0", "--q", "0.6")
        assert code == 0
        ctx = QContext(q="0.6", precision_digits=50)
        with mp.workdps(60):
            direct = mpmath.nstr(kernel_plus(1, 2, 0, ctx), 50)
        assert out.splitlines()[0] == direct

    def test_phi_and_polar_and_complex_tokens(self, capsys):
        code, out, _ = run(capsys, "eval", "phi", "--numerators", "0",
                           "--denominators", "0.3", "--argument", "0.2",
                           "--q", "0.5")
        assert code == 0
        code, _, _ = run(capsys, "eval", "erdelyi_rhs", "--n", "0",
                         "--m", "0", "--nu", "0.5", "--sigma", "1+0.5j",
                         "--z", "0.5@1/3", "--q", "0.5")
        assert code == 0

    def test_base_power_token(self, capsys):
        code, out, _ = run(capsys, "eval", "qpochhammer", "--a", "q^2",
                           "--k", "1", "--q", "0.5")
        assert code == 0
        assert out.splitlines()[0] == "0.75"

    def test_negative_integer_parameter_values(self, capsys):
        code, out, _ = run(capsys, "eval", "kernel_zero", "--p", "-1",
                           "--v", "0", "--w", "2", "--q", "0.6")
        assert code == 0
        assert out.strip()

    def test_unknown_function_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "nope")
        assert code == 2
        assert "error:" in err

    def test_unknown_parameter_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "wall", "--n", "0", "--a", "0.5",
                           "--x", "0.3", "--bogus", "1")
        assert code == 2
        assert "--bogus" in err

    def test_missing_parameter_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "wall", "--n", "0", "--a", "0.5")
        assert code == 2
        assert "--x" in err

    def test_bad_base_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "qbessel", "--order", "0.5",
                           "--argument", "1.5", "--q", "2.0")
        assert code == 2
        assert "error:" in err

    def test_domain_violation_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "erdelyi_lhs", "--n", "1",
                           "--m", "0", "--nu", "-2", "--sigma", "0",
                           "--z", "0.5", "--q", "0.5")
        assert code == 2
        assert "error:" in err

    def test_dangling_value_is_config_error(self, capsys):
        code, _, err = run(capsys, "eval", "wall", "--n")
        assert code == 2
        assert "missing a value" in err

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
        assert run(capsys, "eval", "--help")[0] == 0


CONTRACTION_INI = """\
[suite]
name = kernel-contraction

[grid]
p = -1:1
N = 40
"""


class TestVerify:
    def test_report_shape_and_counts(self, capsys, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(CONTRACTION_INI)
        out_path = tmp_path / "r.json"
        code, out, _ = run(capsys, "verify", "kernel-contraction",
                           "--config", str(cfg), "--out", str(out_path),
                           "--jobs", "1")
        assert code == 0
        assert "27/27 passed" in out
        report = json.loads(out_path.read_text())
        assert report["suite"] == "kernel-contraction"
        assert report["counts"] == {"pass": 27, "fail": 0, "truncation": 0}
        assert len(report["cases"]) == 27
        keys = {"case", "lhs", "rhs", "residual", "tail_bound", "tolerance",
                "status", "note", "params"}
        for row in report["cases"]:
            assert set(row) == keys
            assert row["status"] == "pass"

    def test_reports_are_byte_identical_across_workers(self, capsys,
                                                       tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(CONTRACTION_INI)
        a, b, c = (tmp_path / n for n in ("a.json", "b.json", "c.json"))
        assert run(capsys, "verify", "kernel-contraction", "--config",
                   str(cfg), "--out", str(a), "--jobs", "1")[0] == 0
        assert run(capsys, "verify", "kernel-contraction", "--config",
                   str(cfg), "--out", str(b), "--jobs", "1")[0] == 0
        assert run(capsys, "verify", "kernel-contraction", "--config",
                   str(cfg), "--out", str(c), "--jobs", "3")[0] == 0
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_failure_exit_code(self, capsys, tmp_path):
        out_path = tmp_path / "f.json"
        code, out, _ = run(capsys, "verify", "su2-relations",
                           "--pass-tolerance", "1e-80",
                           "--out", str(out_path), "--jobs", "1")
        assert code == 1
        report = json.loads(out_path.read_text())
        assert report["counts"]["fail"] > 0

    def test_truncation_exit_code(self, capsys, tmp_path):
        cfg = tmp_path / "t.ini"
        cfg.write_text("""\
[suite]
name = erdelyi-qintegral

[context]
q = 0.4

[grid]
n = 1
m = 1
nu = 0.5
sigma = 0.3
z = 0.35

[window]
low = -6
high = 8
""")
        out_path = tmp_path / "t.json"
        code, _, _ = run(capsys, "verify", "erdelyi-qintegral",
                         "--config", str(cfg), "--out", str(out_path),
                         "--jobs", "1")
        assert code == 3
        report = json.loads(out_path.read_text())
        assert report["counts"]["truncation"] == 1
        assert report["cases"][0]["note"] != ""

    def test_uncertifiable_tolerance_is_config_error(self, capsys):
        code, _, err = run(capsys, "verify", "erdelyi",
                           "--tolerance", "1e-60", "--precision", "50")
        assert code == 2
        assert "error:" in err

    def test_env_tolerance_is_seen_and_flag_wins(self, capsys, tmp_path,
                                                 monkeypatch):
        cfg = tmp_path / "c.ini"
        cfg.write_text(CONTRACTION_INI)
        monkeypatch.setenv("QHANKEL_TOLERANCE", "1e-60")
        code, _, err = run(capsys, "verify", "kernel-contraction",
                           "--config", str(cfg),
                           "--out", str(tmp_path / "e.json"), "--jobs", "1")
        assert code == 2
        code, _, _ = run(capsys, "verify", "kernel-contraction",
                         "--config", str(cfg), "--tolerance", "1e-30",
                         "--out", str(tmp_path / "e2.json"), "--jobs", "1")
        assert code == 0

    def test_suite_name_mismatch_is_config_error(self, capsys, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(CONTRACTION_INI)
        code, _, err = run(capsys, "verify", "su2-relations",
                           "--config", str(cfg))
        assert code == 2
        assert "kernel-contraction" in err

    def test_missing_config_file_is_config_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", "erdelyi", "--config",
                           str(tmp_path / "absent.ini"))
        assert code == 2

    def test_unknown_suite_is_usage_error(self, capsys):
        assert run(capsys, "verify", "bogus")[0] == 2

    def test_bad_window_is_config_error(self, capsys):
        code, _, err = run(capsys, "verify", "qbessel-orthogonality",
                           "--window", "10")
        assert code == 2
        assert "LOW:HIGH" in err

    def test_window_flag_reaches_the_suite(self, capsys, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("""\
[suite]
name = qbessel-orthogonality

[grid]
n = -1:1
""")
        out_path = tmp_path / "w.json"
        code, _, _ = run(capsys, "verify", "qbessel-orthogonality",
                         "--config", str(cfg), "--window", "-30:30",
                         "--out", str(out_path), "--jobs", "1")
        assert code == 0
        row = json.loads(out_path.read_text())["cases"][0]
        assert row["params"]["kmin"] == "-30"
        assert row["params"]["kmax"] == "30"

    def test_default_report_path_uses_suite_name(self, capsys, tmp_path,
                                                 monkeypatch):
        monkeypatch.chdir(tmp_path)
        cfg = tmp_path / "c.ini"
        cfg.write_text(CONTRACTION_INI)
        code, out, _ = run(capsys, "verify", "kernel-contraction",
                           "--config", str(cfg), "--jobs", "1")
        assert code == 0
        assert (tmp_path / "kernel-contraction.report.json").exists()
