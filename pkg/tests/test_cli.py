"""Golden-file tests for the command line.

Each case stores exit code, stdout and stderr in ``golden/<name>.txt``.
Regenerate with ``python tests/test_cli.py`` after an intended change.
"""

import os
import subprocess
import sys
from pathlib import Path

import pytest

from endo.cli import run

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"


def d(name):
    return f"data/{name}.json"


def end(cat, fun, *extra):
    return ["end", "--category", d(cat), "--functor", d(fun), *extra]


CASES = {
    # end
    "end_set2": end("terminal", "set2"),
    "end_set2_json": end("terminal", "set2", "--format", "json"),
    "end_arrow_set": end("arrow", "arrow_set"),
    "end_arrow_const": end("arrow", "arrow_const"),
    "end_split_idempotent": end("split_idempotent", "split_idempotent_set"),
    "end_empty": end("empty", "empty_functor"),
    "end_arrow_q_id": end("arrow", "arrow_q_id"),
    "end_arrow_q_id_json": end("arrow", "arrow_q_id", "--format", "json"),
    "end_arrow_q_proj": end("arrow", "arrow_q_proj"),
    "end_arrow_q_zero": end("arrow", "arrow_q_zero"),
    "end_matrix_units": end("matrix_units", "matrix_units_inclusion"),
    "end_malformed": end("terminal", "malformed"),
    "end_missing_file": end("terminal", "no_such_file"),
    "end_guard_default": end("terminal", "set8"),
    "end_guard_flag": end("terminal", "set2", "--guard", "3"),
    "end_guard_zero": end("terminal", "set2", "--guard", "0"),
    "end_not_functor": end("split_idempotent", "not_functor"),
    "end_corrupt_category": end("corrupt_category", "set2"),
    "end_base_mismatch": end("terminal", "set2", "--base", "qvect"),
    "end_missing_functor": ["end", "--category", d("terminal")],
    # operad
    "operad_point_q": ["operad", "--category", d("terminal"), "--functor", d("point_q"),
                       "--arity-cap", "3"],
    "operad_point_q2": ["operad", "--category", d("terminal"), "--functor", d("point_q2"),
                        "--arity-cap", "2"],
    "operad_point_q2_co": ["operad", "--category", d("terminal"), "--functor", d("point_q2"),
                           "--arity-cap", "2", "--co"],
    "operad_point_q2_json": ["operad", "--category", d("terminal"), "--functor", d("point_q2"),
                             "--arity-cap", "2", "--format", "json"],
    "operad_arrow_q_id": ["operad", "--category", d("arrow"), "--functor", d("arrow_q_id"),
                          "--arity-cap", "2"],
    "operad_finset": ["operad", "--category", d("terminal"), "--functor", d("set2")],
    "operad_cap_zero": ["operad", "--category", d("terminal"), "--functor", d("point_q"),
                        "--arity-cap", "0"],
    # verify
    "verify_axioms_set2": ["verify", "axioms", "--category", d("terminal"), "--functor", d("set2")],
    "verify_axioms_corrupt": ["verify", "axioms", "--category", d("corrupt_category")],
    "verify_axioms_corrupt_json": ["verify", "axioms", "--category", d("corrupt_category"),
                                   "--format", "json"],
    "verify_axioms_not_functor": ["verify", "axioms", "--category", d("split_idempotent"),
                                  "--functor", d("not_functor")],
    "verify_axioms_operad": ["verify", "axioms", "--category", d("terminal"), "--functor",
                             d("point_q2"), "--arity-cap", "3"],
    "verify_axioms_monoid": ["verify", "axioms", "--monoid", d("idempotent_monoid")],
    "verify_axioms_nothing": ["verify", "axioms"],
    "verify_adjunction_t2": ["verify", "adjunction", "--category", d("terminal"), "--functor",
                             d("set2"), "--monoid", d("idempotent_monoid")],
    "verify_adjunction_t2_json": ["verify", "adjunction", "--category", d("terminal"), "--functor",
                                  d("set2"), "--monoid", d("idempotent_monoid"), "--format", "json"],
    "verify_adjunction_trivial": ["verify", "adjunction", "--category", d("arrow"), "--functor",
                                  d("arrow_set"), "--monoid", d("trivial_monoid")],
    "verify_adjunction_empty": ["verify", "adjunction", "--category", d("empty"), "--functor",
                                d("empty_functor"), "--monoid", d("idempotent_monoid")],
    "verify_adjunction_algebra": ["verify", "adjunction", "--category", d("terminal"), "--functor",
                                  d("set2"), "--monoid", d("dual_numbers")],
    "verify_oracle_sets": ["verify", "oracle", "--category", d("split_idempotent"), "--functor",
                           d("split_idempotent_set")],
    "verify_oracle_vectors": ["verify", "oracle", "--category", d("matrix_units"), "--functor",
                              d("matrix_units_inclusion")],
    "verify_whisker_A": ["verify", "whisker", "--category", d("matrix_units"), "--functor",
                         d("matrix_units_inclusion"), "--whisker", d("whisker_A")],
    "verify_whisker_b": ["verify", "whisker", "--category", d("arrow"), "--functor",
                         d("arrow_set"), "--whisker", d("whisker_b")],
    "verify_faithfulness_dual": ["verify", "faithfulness", "--monoid", d("dual_numbers")],
    "verify_faithfulness_matrices_json": ["verify", "faithfulness", "--monoid", d("matrix_algebra"),
                                          "--format", "json"],
    "verify_faithfulness_finset": ["verify", "faithfulness", "--monoid", d("idempotent_monoid")],
}

# argparse wording varies between Python versions; only the exit code is pinned
USAGE = {
    "no_command": [],
    "bogus_command": ["frobnicate"],
    "bogus_suite": ["verify", "everything"],
    "bad_base": ["end", "--base", "sets"],
    "bad_guard": ["end", "--guard", "many"],
}

EXPECTED_CODES = {
    "end_malformed": 1, "end_missing_file": 1, "end_guard_default": 3, "end_guard_flag": 3,
    "end_guard_zero": 1, "end_not_functor": 1, "end_corrupt_category": 1, "end_base_mismatch": 1,
    "end_missing_functor": 1, "operad_finset": 1, "operad_cap_zero": 1,
    "verify_axioms_corrupt": 2, "verify_axioms_corrupt_json": 2, "verify_axioms_not_functor": 2,
    "verify_axioms_nothing": 1, "verify_adjunction_algebra": 1, "verify_faithfulness_finset": 1,
}


def render(code, out, err):
    return f"exit: {code}\n--- stdout\n{out}--- stderr\n{err}"


def invoke(argv):
    cwd = os.getcwd()
    env = os.environ.pop("ENDO_GUARD", None)
    try:
        os.chdir(HERE)
        return run(argv)
    finally:
        os.chdir(cwd)
        if env is not None:
            os.environ["ENDO_GUARD"] = env


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = invoke(CASES[name])
    assert code == EXPECTED_CODES.get(name, 0)
    assert render(code, out, err) == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic(name):
    assert invoke(CASES[name]) == invoke(CASES[name])


@pytest.mark.parametrize("name", sorted(USAGE))
def test_usage_errors(name):
    code, out, err = invoke(USAGE[name])
    assert code == 1 and out == "" and err.startswith("endo")


def test_every_golden_has_a_case():
    assert {p.stem for p in GOLDEN.glob("*.txt")} == set(CASES)


def test_every_suite_and_command_covered():
    from endo.cli import SUITES
    used = {(a[0], a[1] if a[0] == "verify" else None) for a in CASES.values()}
    assert {("end", None), ("operad", None)} <= used
    assert {("verify", s) for s in SUITES} <= used


def test_failures_name_a_witness():
    code, _, err = invoke(CASES["end_malformed"])
    assert "malformed.json:3:1" in err
    code, out, _ = invoke(CASES["verify_axioms_corrupt"])
    assert code == 2 and "associativity" in out and "(a, a, a)" in out


def test_adjunction_counts():
    _, out, _ = invoke(CASES["verify_adjunction_t2"])
    assert "3 = 3" in out


def test_faithfulness_rank():
    _, out, _ = invoke(CASES["verify_faithfulness_dual"])
    assert "rank=2" in out


def test_operad_dims():
    assert "dims: 1 1 1 1" in invoke(CASES["operad_point_q"])[1]
    assert "dims: 2 4 8" in invoke(CASES["operad_point_q2"])[1]
    assert "dims: 2 4 8" in invoke(CASES["operad_point_q2_co"])[1]


def test_subprocess_byte_identical():
    argv = [sys.executable, "-m", "endo", *CASES["end_set2"]]
    env = {k: v for k, v in os.environ.items() if k != "ENDO_GUARD"}
    a = subprocess.run(argv, cwd=HERE, capture_output=True, env=env)
    b = subprocess.run(argv, cwd=HERE, capture_output=True, env=env)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stdout.decode() == invoke(CASES["end_set2"])[1]


def test_subprocess_exit_codes():
    env = {k: v for k, v in os.environ.items() if k != "ENDO_GUARD"}
    for name in ("end_malformed", "end_guard_default", "verify_axioms_corrupt"):
        r = subprocess.run([sys.executable, "-m", "endo", *CASES[name]], cwd=HERE,
                           capture_output=True, env=env)
        assert r.returncode == EXPECTED_CODES[name]


def test_guard_environment(monkeypatch):
    monkeypatch.chdir(HERE)
    monkeypatch.setenv("ENDO_GUARD", "3")
    assert run(CASES["end_set2"])[0] == 3
    monkeypatch.setenv("ENDO_GUARD", "lots")
    assert run(CASES["end_set2"])[0] == 1


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for stale in GOLDEN.glob("*.txt"):
        stale.unlink()
    for name, argv in sorted(CASES.items()):
        (GOLDEN / f"{name}.txt").write_text(render(*invoke(argv)))
    print(f"wrote {len(CASES)} golden files")
