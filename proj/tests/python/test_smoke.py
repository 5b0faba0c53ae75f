import json
import os
import subprocess

import pytest

import daestruct

PENDULUM = """\
params: g L
unknowns: x1 x2 lam
equations:
  D(x1,2) - lam*x1
  D(x2,2) - lam*x2 + g
  x1^2 + x2^2 - L^2
"""
PENDULUM_WITNESS = '{"x1": "3", "x2": "4", "x1\'": "4", "x2\'": "-3", "g": "10", "L": "5"}'


def test_parse_and_analyze_pendulum():
    sys_ = daestruct.parse_system(PENDULUM)
    assert sys_.n == 3 and sys_.r == 3 and sys_.e == 2
    rep = daestruct.analyze(sys_, witness_json=PENDULUM_WITNESS, seed=42)
    assert rep["sigma"] == 4
    assert rep["order"] == 2
    assert rep["mu"] == [0, 1, 2, 3, 4, 4]
    assert rep["jacobi"]["J_E0"] == 4
    assert rep["jacobi"]["J_E"] == 2
    assert rep["witness_point"]["lam"] == "3/5"


def test_jacobi_number_matrix():
    assert daestruct.jacobi_number([[2, 0, 0], [0, 2, 0], [0, 0, 0]]) == 4
    assert daestruct.jacobi_number([[2, None, 0], [None, 2, 0], [0, 0, None]]) == 2
    assert daestruct.jacobi_number([[None, None]]) is None


def test_membership_bounds():
    sys_ = daestruct.parse_system(PENDULUM)
    rep = json.loads(
        daestruct.membership_json(sys_, "2*x1*x1' + 2*x2*x2'", witness_json=PENDULUM_WITNESS)
    )
    assert rep["N"] == 3
    assert rep["degree_bound"] == "4098"


def test_membership_find():
    sys_ = daestruct.parse_system(PENDULUM)
    rep = json.loads(
        daestruct.membership_json(
            sys_, "2*x1*x1' + 2*x2*x2'", witness_json=PENDULUM_WITNESS, find=True
        )
    )
    assert rep["found"] is True


def test_simulate_csv():
    sys_ = daestruct.parse_system("unknowns: x1\nequations:\n  x1' - x1\n")
    csv = daestruct.simulate_csv(sys_, '{"x1": "1"}', h="1/100", steps=100, jet=4)
    lines = csv.strip().splitlines()
    assert lines[0] == "t,x1,x1',residual"
    assert len(lines) == 102
    x_end = float(lines[-1].split(",")[1])
    assert abs(x_end - 2.718281828459045) < 1e-9


def test_parse_error():
    with pytest.raises(daestruct.DAEParseError):
        daestruct.parse_system("unknowns: x\nequations:\n  y'\n")


def test_determinism():
    sys_ = daestruct.parse_system(PENDULUM)
    a = daestruct.analyze_json(sys_, seed=42)
    b = daestruct.analyze_json(sys_, seed=42)
    assert a == b


def test_cli_roundtrip():
    cli = os.environ.get("DAESTRUCT_CLI")
    corpus = os.environ.get("DAESTRUCT_CORPUS")
    if not cli or not corpus:
        pytest.skip("CLI paths not provided")
    out = subprocess.run(
        [cli, "analyze", os.path.join(corpus, "pendulum.dae"),
         "--witness", os.path.join(corpus, "pendulum.wit"), "--seed", "42"],
        capture_output=True, text=True, check=True)
    rep = json.loads(out.stdout)
    assert rep["sigma"] == 4 and rep["order"] == 2
