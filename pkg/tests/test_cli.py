"""End-to-end command line checks, including exit codes."""

import subprocess
import sys

import pytest

from shiftgroups.formats import format_function, format_matrix, format_table
from shiftgroups.functions import constant, indicator, make
from shiftgroups.sft import validate_matrix
from shiftgroups.tables import prefix_swap

G = validate_matrix([[1, 1], [1, 0]])


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "shiftgroups", *args],
        capture_output=True, text=True, cwd=cwd)


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "G.mks").write_text(format_matrix(G), encoding="utf-8")
    (tmp_path / "tau0.tbl").write_text(
        format_table(prefix_swap(G, 1, 2)), encoding="utf-8")
    (tmp_path / "one.fn").write_text(
        format_function(constant(G, 1)), encoding="utf-8")
    (tmp_path / "chi1.fn").write_text(
        format_function(indicator(G, (1,))), encoding="utf-8")
    (tmp_path / "chi2.fn").write_text(
        format_function(indicator(G, (2,))), encoding="utf-8")
    (tmp_path / "tau0.coe").write_text(
        "coe G.mks G.mks\n"
        "code 1 { 1 -> 1 2 -> 2 } inverse 1 { 1 -> 1 2 -> 2 }\n"
        "post-table tau0.tbl\n", encoding="utf-8")
    (tmp_path / "id.coe").write_text(
        "coe G.mks G.mks\n"
        "code 1 { 1 -> 1 2 -> 2 } inverse 1 { 1 -> 1 2 -> 2 }\n",
        encoding="utf-8")
    return tmp_path


def test_validate(workdir):
    result = run_cli("validate", "G.mks", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout.strip() == "OK irreducible non-permutation n=2"
    (workdir / "perm.mks").write_text("matrix 2\n0 1\n1 0\n", encoding="utf-8")
    result = run_cli("validate", "perm.mks", cwd=workdir)
    assert result.returncode == 1
    assert result.stdout.startswith("REJECTED Permutation")


def test_validate_parse_error_is_input_error(workdir):
    (workdir / "bad.mks").write_text("matrix 2\n1 1\n", encoding="utf-8")
    result = run_cli("validate", "bad.mks", cwd=workdir)
    assert result.returncode == 2
    assert "line" in result.stderr


def test_words(workdir):
    result = run_cli("words", "G.mks", "2", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout.splitlines() == ["1.1", "1.2", "2.1"]


def test_table_commands(workdir):
    assert run_cli("table", "check", "G.mks", "tau0.tbl", cwd=workdir).returncode == 0
    result = run_cli("table", "compose", "G.mks", "tau0.tbl", "tau0.tbl", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout == "table\n1 -> 1\n2 -> 2\n"
    result = run_cli("table", "invert", "G.mks", "tau0.tbl", cwd=workdir)
    assert result.stdout == format_table(prefix_swap(G, 1, 2))
    result = run_cli("table", "apply", "G.mks", "tau0.tbl", "|1.2", cwd=workdir)
    assert result.stdout.strip() == "|2.1"


def test_table_check_rejects(workdir):
    (workdir / "bad.tbl").write_text("table\n1 -> 2\n2 -> 1\n", encoding="utf-8")
    result = run_cli("table", "check", "G.mks", "bad.tbl", cwd=workdir)
    assert result.returncode == 1
    assert result.stdout.startswith("REJECTED FollowerMismatch")


def test_rho_golden_output(workdir):
    result = run_cli("rho", "G.mks", "chi1.fn", "tau0.tbl", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout == "function\n1.1 0\n1.2 1\n2 -1\n"


def test_member_outputs(workdir):
    result = run_cli("member", "G.mks", "one.fn", "tau0.tbl", cwd=workdir)
    assert result.returncode == 1
    assert result.stdout.strip() == "NOT-MEMBER Gamma_{A,f}; d nonzero on 1.2"
    result = run_cli("member", "G.mks", "chi2.fn", "tau0.tbl", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout.strip() == "MEMBER Gamma_{A,f}"


def test_weight(workdir):
    result = run_cli("weight", "G.mks", "one.fn", "tau0.tbl", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout == "function\n1.1 0\n1.2 1\n2 -1\n"


def test_psi_and_pullback(workdir):
    result = run_cli("psi", "tau0.coe", "chi1.fn", cwd=workdir)
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "function"
    assert "1.2 -1" in lines
    result = run_cli("pullback", "tau0.coe", "chi1.fn", cwd=workdir)
    assert result.stdout == "function\n1.1 1\n1.2 0\n2 1\n"


def test_conjugacy_command(workdir):
    result = run_cli("conjugacy", "id.coe", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout.strip() == "CONJUGACY"
    result = run_cli("conjugacy", "tau0.coe", cwd=workdir)
    assert result.returncode == 1
    lines = result.stdout.splitlines()
    assert lines[0] == "WITNESS"
    assert lines[1].startswith("z ")
    assert "function" in lines
    assert "table" in lines
    assert lines[-1].startswith("level ")


def test_conjugacy_budget_exit_code(workdir):
    result = run_cli("conjugacy", "tau0.coe", "--max-level", "0", cwd=workdir)
    assert result.returncode == 3
    assert result.stdout.startswith("SEARCH-BUDGET")


def test_commutant_command(workdir):
    result = run_cli("commutant", "id.coe", cwd=workdir)
    assert result.returncode == 0
    assert result.stdout.strip() == "IDENTITY"
    result = run_cli("commutant", "tau0.coe", cwd=workdir)
    assert result.returncode == 1
    assert result.stdout.splitlines()[0] == "WITNESS"


def test_missing_file_is_input_error(workdir):
    assert run_cli("rho", "G.mks", "nope.fn", "tau0.tbl", cwd=workdir).returncode == 2


def test_usage_error_exit_code(workdir):
    assert run_cli("frobnicate", cwd=workdir).returncode == 2
    assert run_cli("words", "G.mks", "-1", cwd=workdir).returncode == 2


def test_selftest_deterministic_small(workdir):
    first = run_cli("selftest", "--seed", "3", "--cases", "2", cwd=workdir)
    second = run_cli("selftest", "--seed", "3", "--cases", "2", cwd=workdir)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.endswith("ALL PASS\n")
    other = run_cli("selftest", "--seed", "4", "--cases", "2", cwd=workdir)
    assert other.stdout.splitlines()[0] != first.stdout.splitlines()[0]
