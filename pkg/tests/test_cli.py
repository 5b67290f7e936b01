"""命令行：输出格式、退出码与各子命令的端到端结果."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest

from src.cli import verify
from src.cli.app import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from src.cli.lawexpr import LawExprError, format_law, parse_law, parse_rational
from src.cli.output import OutputTable, render_cell
from src.limits.laws import Dirac, FreePoisson, RawMoments, SLimit, YLimit


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(out):
    return [line.split(",") for line in out.strip().split("\n")]


# ── transform / convolve ──────────────────────────────────────────


def test_transform_s_of_free_poisson(capsys):
    code, out, _ = run(capsys, "transform", "--law", "free-poisson:t=1", "--which", "S", "--order", "4")
    assert code == EXIT_OK
    assert out == "index,value,value_f64\n0,1,1\n1,-1,-1\n2,1,1\n3,-1,-1\n"


def test_transform_s_of_dirac(capsys):
    code, out, _ = run(capsys, "transform", "--law", "dirac:c=2", "--which", "S", "--order", "2")
    assert code == EXIT_OK
    assert csv_rows(out)[1:] == [["0", "1/2", "0.5"], ["1", "0", "0"]]


def test_transform_cumulants_of_limit_law(capsys):
    code, out, _ = run(
        capsys, "transform", "--law", "y-limit:alpha=1", "--which", "cumulants", "--order", "4"
    )
    assert code == EXIT_OK
    assert [row[1] for row in csv_rows(out)[1:]] == ["1", "1", "3/2", "8/3"]


def test_convolve_boxtimes_of_diracs(capsys):
    code, out, _ = run(
        capsys, "convolve", "--op", "boxtimes", "--a", "dirac:c=2", "--b", "dirac:c=3", "--order", "3"
    )
    assert code == EXIT_OK
    assert [row[1] for row in csv_rows(out)[1:]] == ["1", "6", "36", "216"]


def test_convolve_boxplus_json(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "convolve", "--op", "boxplus",
        "--a", "free-poisson:t=1", "--b", "free-poisson:t=1", "--order", "3",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["meta"]["op"] == "boxplus"
    assert [row["moment"] for row in payload["rows"]] == ["1", "2", "6", "22"]


def test_format_after_subcommand(capsys):
    code, out, _ = run(
        capsys, "convolve", "--op", "uplus", "--a", "dirac:c=1", "--b", "dirac:c=1",
        "--order", "2", "--format", "json",
    )
    assert code == EXIT_OK
    assert [row["moment"] for row in json.loads(out)["rows"]] == ["1", "2", "4"]


def test_output_is_byte_identical_across_runs(capsys):
    argv = ("limit", "--mode", "boolean", "--law", "free-poisson:t=2", "--n", "1,2,4", "--order", "3")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]


# ── limit ─────────────────────────────────────────────────────────


def test_limit_free_first_row(capsys):
    code, out, _ = run(
        capsys, "limit", "--mode", "free", "--law", "free-poisson:t=1", "--n", "1", "--order", "3"
    )
    assert code == EXIT_OK
    rows = csv_rows(out)
    assert rows[0] == ["n", "k", "moment", "limit", "abs_error_f64", "rel_error_f64"]
    assert rows[3][:5] == ["1", "3", "5", "11/2", "0.5"]


def test_limit_repeated_n_flags(capsys):
    code, out, _ = run(
        capsys, "limit", "--mode", "exchanged-boolean", "--law", "free-poisson:t=1",
        "--n", "2", "--n", "4,8", "--order", "2",
    )
    assert code == EXIT_OK
    assert sorted({row[0] for row in csv_rows(out)[1:]}, key=int) == ["2", "4", "8"]


def test_limit_rejects_degenerate_law(capsys):
    code, out, err = run(capsys, "limit", "--mode", "free", "--law", "dirac:c=2", "--n", "1,2")
    assert code == EXIT_USAGE
    assert out == ""
    assert "nondegenerate" in err


def test_limit_rejects_n_one_for_exchanged_boolean(capsys):
    code, _, _ = run(capsys, "limit", "--mode", "exchanged-boolean", "--law", "free-poisson:t=1", "--n", "1,2")
    assert code == EXIT_USAGE


# ── density / lambertw ────────────────────────────────────────────


def test_density_levy_starts_at_right_endpoint(capsys):
    code, out, _ = run(capsys, "density", "--which", "y-levy", "--alpha", "1", "--grid", "4")
    assert code == EXIT_OK
    rows = csv_rows(out)
    assert rows[0] == ["x_f64", "density_f64"]
    assert len(rows) == 5
    assert float(rows[1][0]) == pytest.approx(math.e, rel=1e-15)
    assert rows[1][1] == "0"


def test_density_s_limit_is_bimodal(capsys):
    code, out, _ = run(capsys, "--format", "json", "density", "--which", "s-limit", "--grid", "1000")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["meta"]["local_maxima"] >= 2
    assert len(payload["rows"]) == 1000


def test_density_s_limit_needs_alpha_one(capsys):
    code, _, _ = run(capsys, "density", "--which", "s-limit", "--alpha", "2")
    assert code == EXIT_USAGE


def test_density_free_poisson_stays_in_support(capsys):
    code, out, _ = run(capsys, "density", "--which", "free-poisson", "--t", "1", "--grid", "100")
    assert code == EXIT_OK
    xs = [float(row[0]) for row in csv_rows(out)[1:]]
    assert len(xs) == 100
    assert all(0.0 <= x <= 4.0 for x in xs)


def test_density_s_limit_tail_beyond_double_range(capsys):
    code, out, _ = run(capsys, "density", "--which", "s-limit", "--grid", "1000")
    assert code == EXIT_OK
    rows = csv_rows(out)[1:]
    assert len(rows) == 1000
    assert rows[-1][1] == "inf"
    assert float(rows[-1][0]) >= 0.0
    assert all(math.isfinite(float(row[1])) for row in rows[:900])


def test_density_huge_alpha_is_usage_error(capsys):
    alpha = "1" + "0" * 400
    code, out, err = run(capsys, "density", "--which", "y-levy", "--alpha", alpha)
    assert code == EXIT_USAGE
    assert out == ""
    assert "双精度" in err


def test_density_tiny_rate_reports_rational(capsys):
    t = "1/1" + "0" * 400
    code, out, err = run(capsys, "density", "--which", "free-poisson", "--t", t)
    assert code == EXIT_USAGE
    assert out == ""
    assert t in err
    assert "t = 0.0" not in err


def test_lambertw_at_zero(capsys):
    code, out, _ = run(capsys, "lambertw", "--x", "0")
    assert code == EXIT_OK
    assert csv_rows(out)[1] == ["0", "0", "0", "0", "0"]


def test_lambertw_complex_with_integral(capsys):
    code, out, _ = run(capsys, "--format", "json", "lambertw", "--z", "0+1j", "--check-integral")
    assert code == EXIT_OK
    row = json.loads(out)["rows"][0]
    assert float(row["residual_f64"]) < 1e-14
    assert float(row["discrepancy_f64"]) < 1e-8


def test_lambertw_below_branch_point(capsys):
    code, _, err = run(capsys, "lambertw", "--x", "-1")
    assert code == EXIT_USAGE
    assert "错误" in err


# ── 用法错误 ──────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "argv",
    [
        ["transform", "--law", "gamma:k=2", "--which", "S"],
        ["transform", "--law", "free-poisson:t=0", "--which", "S"],
        ["transform", "--law", "moments:1,2", "--which", "S", "--order", "5"],
        ["transform", "--law", "moments:0,1", "--which", "S", "--order", "2"],
        ["transform", "--law", "free-poisson:t=1", "--which", "S", "--order", "99"],
        ["transform", "--law", "free-poisson:t=1"],
        ["convolve", "--op", "boxminus", "--a", "dirac:c=1", "--b", "dirac:c=1"],
        ["limit", "--mode", "free", "--law", "free-poisson:t=1", "--n", "4,2"],
        ["--config", "missing.yaml", "transform", "--law", "dirac:c=1", "--which", "psi"],
        [],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK


def test_config_file_sets_output_format(capsys, tmp_path):
    (tmp_path / "config").mkdir()
    (tmp_path / "config" / "config.yaml").write_text("output:\n  format: json\n", encoding="utf-8")
    code, out, _ = run(capsys, "transform", "--law", "dirac:c=1", "--which", "psi", "--order", "2")
    assert code == EXIT_OK
    assert json.loads(out)["meta"]["which"] == "psi"


# ── verify ────────────────────────────────────────────────────────


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK
    rows = csv_rows(out)[1:]
    assert rows
    assert all(row[1] == "pass" for row in rows)


def test_verify_detects_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--inject-fault")
    assert code == EXIT_FAILURE
    statuses = {row[0]: row[1] for row in csv_rows(out)[1:]}
    assert statuses["taylor_coefficients"] == "fail"
    assert statuses["functional_equation"] == "pass"


def _overflowing_check(opts):
    return True, f"{math.exp(1000.0)}"


def test_run_checks_records_exceptions_and_continues(monkeypatch):
    checks = (
        verify.Check("overflow", _overflowing_check),
        verify.Check("fine", lambda opts: (True, "ok")),
    )
    monkeypatch.setattr(verify, "CHECKS", checks)
    results = verify.run_checks(verify.VerifyOptions())
    assert [(name, passed) for name, passed, _ in results] == [("overflow", False), ("fine", True)]
    assert results[0][2].startswith("OverflowError")


def test_verify_prints_table_when_a_check_raises(capsys, monkeypatch):
    checks = (
        verify.Check("overflow", _overflowing_check),
        verify.Check("fine", lambda opts: (True, "ok")),
    )
    monkeypatch.setattr(verify, "CHECKS", checks)
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_FAILURE
    statuses = {row[0]: row[1] for row in csv_rows(out)[1:]}
    assert statuses == {"overflow": "fail", "fine": "pass"}


# ── 测度表达式与输出 ──────────────────────────────────────────────


@pytest.mark.parametrize(
    "law",
    [
        FreePoisson(Fraction(1, 2)),
        Dirac(Fraction(7, 3)),
        RawMoments((Fraction(1), Fraction(-3, 2), Fraction(6))),
        YLimit(Fraction(2)),
        SLimit(Fraction(5, 4)),
    ],
)
def test_law_expression_round_trip(law):
    assert parse_law(format_law(law)) == law


@pytest.mark.parametrize(
    "text",
    ["", "dirac", "dirac:c", "dirac:t=1", "dirac:c=1/0", "dirac:c=1.5", "moments:", "moments:1,,2", "foo:x=1"],
)
def test_bad_law_expressions(text):
    with pytest.raises(LawExprError):
        parse_law(text)


def test_parse_rational():
    assert parse_rational(" -3/4 ") == Fraction(-3, 4)
    assert parse_rational("+5") == 5


def test_render_cell():
    assert render_cell(Fraction(3, 2)) == "3/2"
    assert render_cell(0.1) == "0.10000000000000001"
    assert render_cell(True) == "true"
    assert render_cell(7) == "7"


def test_output_table_row_width():
    table = OutputTable(["a", "b"])
    with pytest.raises(ValueError):
        table.add_row(1)
    with pytest.raises(ValueError):
        table.render("xml")
