"""CLI contract: exit codes, canonical JSON, determinism."""

import json

import pytest

from relk2 import cli
from relk2 import suites as suites_mod


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def canonical(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def strip_ms(data):
    if isinstance(data, dict):
        return {k: strip_ms(v) for k, v in data.items() if k != "ms"}
    if isinstance(data, list):
        return [strip_ms(v) for v in data]
    return data


# --- exit code 0 -------------------------------------------------------------


def test_k2_text(capsys):
    code, out, err = run(["k2", "--p", "2", "--exponents", "1,1"], capsys)
    assert code == cli.EXIT_OK
    assert "C_2 x C_2 over F_2" in out
    assert "Z/2 x Z/2" in out
    assert "agreement: yes" in out
    assert err == ""


def test_k2_json_round_trips_byte_identical(capsys):
    argv = ["k2", "--p", "2", "--exponents", "1,1", "--format", "json"]
    code, out, _ = run(argv, capsys)
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert canonical(data) == out.strip()
    assert data["invariant_factors"] == [2, 2]
    assert data["agreement"] is True


def test_k2_single_route(capsys):
    code, out, _ = run(
        ["k2", "--p", "3", "--exponents", "1", "--route", "tensor",
         "--format", "json"],
        capsys,
    )
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert data["invariant_factors"] == [3]
    assert data["agreement"] is None


def test_k2_deterministic(capsys):
    argv = ["k2", "--p", "2", "--exponents", "2", "--format", "json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert strip_ms(json.loads(out1)) == strip_ms(json.loads(out2))


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suites", "factorization"], capsys)
    assert code == cli.EXIT_OK
    assert out.startswith("PASS factorization:")
    assert "1/1 suites passed" in out


def test_verify_json(capsys):
    code, out, _ = run(
        ["verify", "--suites", "omega,factorization", "--format", "json"],
        capsys,
    )
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert canonical(data) == out.strip()
    assert data["ok"] is True
    assert [s["suite"] for s in data["suites"]] == ["omega", "factorization"]
    assert all(s["ok"] for s in data["suites"])


def test_verify_deterministic_under_seed(capsys):
    argv = ["verify", "--suites", "linalg", "--seed", "7", "--format", "json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert strip_ms(json.loads(out1)) == strip_ms(json.loads(out2))


def test_verify_parallel_jobs(capsys):
    code, out, _ = run(
        ["verify", "--suites", "factorization,omega", "--jobs", "2"], capsys
    )
    assert code == cli.EXIT_OK
    assert "2/2 suites passed" in out


def test_excision_text(capsys):
    code, out, _ = run(["excision", "--rank", "2"], capsys)
    assert code == cli.EXIT_OK
    assert "D(Z[G]/I, J/I) = Z/2 x Z/2" in out
    assert "D(F_2[G], (G~)) = Z/2 x Z/2" in out
    assert "agree: yes" in out


def test_square_text(capsys):
    code, out, _ = run(["square", "--p", "2", "--exponents", "1"], capsys)
    assert code == cli.EXIT_OK
    assert "Z[G]/I: 4 elements" in out
    assert "commutes: yes" in out
    assert "pullback: yes" in out


def test_square_symbolic_is_still_ok(capsys):
    code, out, _ = run(["square", "--p", "3", "--exponents", "1"], capsys)
    assert code == cli.EXIT_OK


def test_oracle_json(capsys):
    code, out, _ = run(
        ["oracle", "--p", "3", "--exponents", "1", "--format", "json"], capsys
    )
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert canonical(data) == out.strip()
    assert data["structure"] == {"invariant_factors": [3], "free_rank": 0}
    assert data["mode"] == "full"


# --- exit code 1: a failing verification suite ------------------------------


def test_verify_failure_names_the_suite(capsys, monkeypatch):
    def broken(**_):
        return False, 1, "injected fault"

    monkeypatch.setitem(suites_mod.SUITES, "broken", broken)
    code, out, _ = run(["verify", "--suites", "broken,factorization"], capsys)
    assert code == cli.EXIT_VERIFY_FAILED
    assert "FAIL broken: injected fault" in out
    assert "1/2 suites passed" in out


# --- exit code 2: hypothesis and scope violations ----------------------------


def test_tensor_route_refuses_order_two(capsys):
    code, _, err = run(
        ["k2", "--p", "2", "--exponents", "1", "--route", "tensor"], capsys
    )
    assert code == cli.EXIT_HYPOTHESIS
    assert "|G| > 2" in err


def test_non_prime_p(capsys):
    code, _, err = run(["k2", "--p", "4", "--exponents", "1"], capsys)
    assert code == cli.EXIT_HYPOTHESIS
    assert "not prime" in err


def test_unknown_suite_name(capsys):
    code, _, err = run(["verify", "--suites", "nope"], capsys)
    assert code == cli.EXIT_HYPOTHESIS
    assert "unknown suite" in err


def test_excision_scope(capsys):
    code, _, err = run(["excision", "--rank", "5"], capsys)
    assert code == cli.EXIT_HYPOTHESIS
    assert "cap" in err


# --- exit code 3: size budgets ------------------------------------------------


def test_budget_flag(capsys):
    code, _, err = run(
        ["k2", "--p", "2", "--exponents", "1,1", "--budget-pairs", "3"], capsys
    )
    assert code == cli.EXIT_BUDGET
    assert "budget" in err


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("RELK2_BUDGET_PAIRS", "3")
    code, _, err = run(["k2", "--p", "2", "--exponents", "1,1"], capsys)
    assert code == cli.EXIT_BUDGET


def test_excision_rank_four_exceeds_ring_cap(capsys):
    code, _, err = run(["excision", "--rank", "4"], capsys)
    assert code == cli.EXIT_BUDGET
    assert "cap" in err


# --- config validation ---------------------------------------------------------


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig(command="k2", budget_pairs=0)
    with pytest.raises(ValueError):
        cli.RunConfig(command="verify", jobs=0)
    with pytest.raises(ValueError):
        cli.RunConfig(command="k2", exponents=())
    spec = cli.RunConfig(command="k2", p=3, exponents=(1, 2)).spec()
    assert spec.p == 3 and spec.exponents == (1, 2)


def test_bad_exponent_list_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["k2", "--p", "2", "--exponents", "one"])
    assert exc.value.code == 2
    capsys.readouterr()
