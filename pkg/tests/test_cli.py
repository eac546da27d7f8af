"""End-to-end checks of the command-line front end."""

from __future__ import annotations

import pytest

from steen.cli import main
from steen.config import Config, config_problems, from_env


GOOD_MODULE = """\
module tiny over A(1)
gen x0 0
gen x1 1
sq 1 x0 = x1
"""

# Sq^1 Sq^1 = 0 is violated, so the file parses but the module is bad
BROKEN_MODULE = """\
module broken over A(1)
gen x0 0
gen x1 1
gen x2 2
sq 1 x0 = x1
sq 1 x1 = x2
"""


def test_list_names_the_catalogue(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "joker" in out and "joker(2)1" in out and "a1" in out


def test_show_prints_the_joker_table(capsys):
    assert main(["show", "joker"]) == 0
    out = capsys.readouterr().out
    assert "module joker over A(1)" in out
    assert out.count("gen ") == 5
    assert "sq 2 x1 = x3" in out


def test_show_unknown_name_is_a_usage_error(capsys):
    assert main(["show", "nosuch"]) == 2
    assert "unknown module" in capsys.readouterr().err


def test_validate_round_trip(tmp_path, capsys):
    path = tmp_path / "tiny.mod"
    path.write_text(GOOD_MODULE)
    assert main(["validate", str(path)]) == 0
    assert "tiny: ok" in capsys.readouterr().out


def test_validate_reports_problems(tmp_path, capsys):
    path = tmp_path / "broken.mod"
    path.write_text(BROKEN_MODULE)
    assert main(["validate", str(path)]) == 1
    assert "Sq" in capsys.readouterr().out


def test_validate_parse_error(tmp_path, capsys):
    path = tmp_path / "junk.mod"
    path.write_text("module x over A(1)\nwhat is this\n")
    assert main(["validate", str(path)]) == 2
    assert "line" in capsys.readouterr().err


def test_dual_and_double_and_tensor(capsys):
    assert main(["dual", "joker"]) == 0
    assert "module D(joker)" in capsys.readouterr().out
    assert main(["double", "joker", "1"]) == 0
    assert "over A(2)" in capsys.readouterr().out
    assert main(["tensor", "w2", "w0"]) == 0
    assert "gen x0x0 0" in capsys.readouterr().out


def test_double_rejects_negative_k(capsys):
    assert main(["double", "joker", "-1"]) == 2
    assert "nonnegative" in capsys.readouterr().err


def test_resolve_prints_differentials(capsys):
    assert main(["resolve", "joker", "--smax", "3", "--tmax", "12"]) == 0
    out = capsys.readouterr().out
    assert "d 1 g1_0 = Sq(3) g0_0" in out
    assert "d 3 g3_2 = Sq(2) g2_1" in out


def test_resolve_bound_guard(capsys):
    assert main(["resolve", "joker", "--smax", "99", "--tmax", "12"]) == 2
    assert "s_max" in capsys.readouterr().err


def test_resolve_algebra_mismatch(capsys):
    assert main(["resolve", "joker", "--algebra", "A(2)", "--smax", "2", "--tmax", "8"]) == 2
    assert "not a module over" in capsys.readouterr().err


def test_resolve_restricts_whole_algebra_modules(capsys):
    assert main(["resolve", "joker0", "--algebra", "A(1)", "--smax", "2", "--tmax", "8"]) == 0
    assert "d 0 g0_0" in capsys.readouterr().out


def test_chart_text_to_stdout(capsys):
    assert main(["chart", "joker", "--smax", "3", "--tmax", "10"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == [str(i) for i in range(8)]


def test_chart_svg_to_stdout(capsys):
    assert main(["chart", "joker", "--smax", "3", "--tmax", "10", "--format", "svg"]) == 0
    assert capsys.readouterr().out.startswith("<svg")


def test_chart_out_lands_in_output_dir(tmp_path, capsys):
    target = tmp_path / "charts"
    rc = main(
        ["--output-dir", str(target), "chart", "joker",
         "--smax", "3", "--tmax", "10", "--out", "j.txt"]
    )
    assert rc == 0
    assert (target / "j.txt").exists()
    assert str(target / "j.txt") in capsys.readouterr().out


def test_output_dir_flag_beats_environment(tmp_path, monkeypatch, capsys):
    env_dir = tmp_path / "env"
    flag_dir = tmp_path / "flag"
    monkeypatch.setenv("STEEN_OUTPUT_DIR", str(env_dir))
    rc = main(
        ["--output-dir", str(flag_dir), "chart", "joker",
         "--smax", "2", "--tmax", "8", "--out", "j.txt"]
    )
    assert rc == 0
    capsys.readouterr()
    assert (flag_dir / "j.txt").exists()
    assert not env_dir.exists()


def test_environment_output_dir_is_used(tmp_path, monkeypatch, capsys):
    env_dir = tmp_path / "env"
    monkeypatch.setenv("STEEN_OUTPUT_DIR", str(env_dir))
    rc = main(["chart", "joker", "--smax", "2", "--tmax", "8", "--out", "j.txt"])
    assert rc == 0
    capsys.readouterr()
    assert (env_dir / "j.txt").exists()


def test_bad_environment_integer_is_a_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("STEEN_DEGREE_CAP", "lots")
    assert main(["list"]) == 2
    assert "STEEN_DEGREE_CAP" in capsys.readouterr().err


def test_environment_guard_violation(monkeypatch, capsys):
    monkeypatch.setenv("STEEN_T_MAX", "99")
    assert main(["list"]) == 2
    assert "t_max" in capsys.readouterr().err


def test_flag_overrides_bad_environment_bound(monkeypatch, capsys):
    monkeypatch.setenv("STEEN_S_MAX", "99")
    rc = main(["resolve", "joker", "--smax", "2", "--tmax", "8"])
    capsys.readouterr()
    assert rc == 0


def test_unstable_bso3_verdicts(capsys):
    assert main(["unstable", "bso3"]) == 0
    out = capsys.readouterr().out
    assert "matches joker0[2] on degrees 2..6: yes" in out
    assert "matches joker1[2] on degrees 2..6: no" in out


def test_unstable_bsu3_verdicts(capsys):
    assert main(["unstable", "bsu3"]) == 0
    out = capsys.readouterr().out
    assert "matches joker(2)0[4] on degrees 4..12: yes" in out
    assert "matches joker(2)1[4] on degrees 4..12: no" in out


def test_unstable_unclosed_cap_reports_witness(capsys):
    assert main(["unstable", "bso3", "--cap", "8"]) == 2
    assert "leaves the relation ideal at w2^2*w3" in capsys.readouterr().err


def test_obstruction_report_and_records(capsys):
    assert main(["obstruction", "4"]) == 0
    out = capsys.readouterr().out
    assert "conclusion: NonRealizable" in out
    assert "4 0 3 16 1 8 vanishes" in out


def test_obstruction_small_n_is_a_precondition_error(capsys):
    assert main(["obstruction", "3"]) == 2
    assert "k >= 3" in capsys.readouterr().err


def test_obstruction_large_n_is_guarded(capsys):
    assert main(["obstruction", "13"]) == 2
    assert "12" in capsys.readouterr().err


def test_verify_suite_ledger(capsys):
    assert main(["verify-suite", "paper"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert sum(line.startswith("PASS") for line in lines) == 13
    assert not any(line.startswith("FAIL") for line in lines)
    assert lines[-1] == "verify-suite: all criteria pass"


def test_verify_suite_rejects_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify-suite", "other"])
    assert exc.value.code == 2


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_config_env_overrides_and_guards(monkeypatch):
    monkeypatch.setenv("STEEN_FORMAT", "svg")
    monkeypatch.setenv("STEEN_PARALLELISM", "2")
    cfg = from_env()
    assert cfg.format == "svg" and cfg.parallelism == 2
    assert config_problems(cfg) == []
    assert config_problems(Config(parallelism=0)) == [
        "parallelism must be at least 1, got 0"
    ]
    assert any("format" in p for p in config_problems(Config(format="png")))
    assert any("degree_cap" in p for p in config_problems(Config(degree_cap=0)))
