import json

import pytest
from click.testing import CliRunner

from moyal.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_star_canonical_pair(runner):
    res = runner.invoke(main, ["star", "q", "p"])
    assert res.exit_code == 0
    assert res.output == "q*p + (1/2)*i*hbar\n"


def test_star_squares(runner):
    res = runner.invoke(main, ["star", "q^2", "p^2"])
    assert res.output == "q^2*p^2 + 2*i*hbar*q*p + (-1/2)*hbar^2\n"


def test_star_with_unit(runner):
    res = runner.invoke(main, ["star", "1", "q^3"])
    assert res.output == "q^3\n"


def test_star_single_grade(runner):
    res = runner.invoke(main, ["star", "q^2", "p^2", "--grade", "2"])
    assert res.output == "(-1/2)\n"


def test_star_grade_cap(runner):
    res = runner.invoke(main, ["star", "q", "p", "--grade", "100"])
    assert res.exit_code == 2
    assert "--grade" in res.output


def test_star_parse_error_position(runner):
    res = runner.invoke(main, ["star", "q +* p", "p"])
    assert res.exit_code == 2
    assert "position 3" in res.output


def test_bracket_cubes(runner):
    res = runner.invoke(main, ["bracket", "q^3", "p^3"])
    assert res.output == "9*q^2*p^2 + (-3/2)*hbar^2\n"


def test_bracket_json(runner):
    res = runner.invoke(main, ["bracket", "q^3", "p^3", "--grade", "1", "--format", "json"])
    payload = json.loads(res.output)
    assert payload == {"command": "bracket", "grade": 1, "result": "(-3/2)"}


def test_example2_quartic_default(runner):
    res = runner.invoke(main, ["example2"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    by_seed = {rep["seed"]: rep for rep in payload["reports"]}
    assert by_seed["q"]["first_divergent_order"] == 6
    assert by_seed["p"]["first_divergent_order"] == 5
    assert by_seed["q"]["difference_polynomial"] == "(-1/4)*hbar^2*q"


def test_example2_harmonic_null(runner):
    res = runner.invoke(
        main, ["example2", "--hamiltonian", "(1/2)*p^2 + (1/2)*q^2"]
    )
    payload = json.loads(res.output)
    assert all(rep["first_divergent_order"] is None for rep in payload["reports"])


def test_example2_ratio_check(runner):
    res = runner.invoke(main, ["example2", "--q0", "1", "--p0", "0"])
    payload = json.loads(res.output)
    checks = {c["seed"]: c for c in payload["hbar2_ratio_checks"]}
    assert checks["p"]["within_tolerance"]
    assert checks["p"]["ratio"] == pytest.approx(1.0, abs=0.02)


def test_example2_rejects_hbar_hamiltonian(runner):
    res = runner.invoke(main, ["example2", "--hamiltonian", "hbar*q"])
    assert res.exit_code == 2


def test_example1_initial_time_row_is_trivial(runner):
    res = runner.invoke(
        main,
        ["example1", "--t0", "0", "--t1", "0", "--t-steps", "1", "--skip-hbar2", "--format", "json"],
    )
    assert res.exit_code == 0
    row = json.loads(res.output)[0]
    assert row["pb_classical"] == pytest.approx(1.0)
    assert row["pb_deformed"] == pytest.approx(1.0)
    assert row["bracket_classical"] == pytest.approx(1.0)
    assert row["bracket_deformed"] == pytest.approx(1.0)
    assert row["coord_residual"] == pytest.approx(0.0, abs=1e-15)
    assert row["product_drift"] == pytest.approx(0.0, abs=1e-15)


def test_example1_known_row(runner):
    res = runner.invoke(
        main,
        ["example1", "--t0", "1", "--t1", "1", "--t-steps", "1", "--skip-hbar2", "--format", "json"],
    )
    row = json.loads(res.output)[0]
    import math

    assert row["pb_deformed"] == pytest.approx(1.0 / math.cos(0.025) ** 4, rel=1e-9)
    assert row["bracket_classical"] == pytest.approx((1 + 0.025**2) ** -2, rel=1e-9)
    assert row["bracket_classical_converged"] is True
    assert row["product_drift"] < 1e-12
    assert row["coord_residual"] > 1e-4


def test_example1_validity_guard(runner):
    res = runner.invoke(main, ["example1", "--t1", "70"])
    assert res.exit_code == 2
    assert "validity" in res.output


def test_example1_csv_header(runner):
    res = runner.invoke(
        main,
        ["example1", "--t0", "0", "--t1", "0", "--t-steps", "1", "--skip-hbar2", "--format", "csv"],
    )
    header = res.output.splitlines()[0]
    assert header.startswith("t,q_classical,p_classical,q_deformed,p_deformed,")


def test_hierarchy_csv(runner):
    res = runner.invoke(
        main,
        ["hierarchy", "--t0", "0.1", "--t1", "0.1", "--t-steps", "1", "--format", "csv"],
    )
    lines = res.output.splitlines()
    assert lines[0] == "t,Q2,P2,method"
    methods = sorted(line.rsplit(",", 1)[1] for line in lines[1:])
    assert methods == ["ode", "taylor", "transport"]
    vals = [float(line.split(",")[1]) for line in lines[1:]]
    assert max(vals) == pytest.approx(min(vals), rel=1e-6)


def test_check_subset_passes(runner):
    res = runner.invoke(main, ["check", "--only", "poly-roundtrip", "--cases", "10"])
    assert res.exit_code == 0
    assert "PASS" in res.output
    assert "1/1 suites passed" in res.output


def test_check_unknown_suite(runner):
    res = runner.invoke(main, ["check", "--only", "nonesuch"])
    assert res.exit_code == 2


def test_check_json_format(runner):
    res = runner.invoke(
        main, ["check", "--only", "bch", "--order", "2", "--format", "json"]
    )
    payload = json.loads(res.output)
    assert payload[0]["name"] == "bch"
    assert payload[0]["passed"] is True


def test_check_deterministic_output(runner):
    args = ["check", "--only", "star-associativity", "--cases", "15", "--seed", "7"]
    first = runner.invoke(main, args).output
    second = runner.invoke(main, args).output
    assert first == second
