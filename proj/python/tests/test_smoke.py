import json
import math
import os
import pathlib

import jsonschema
import numpy as np
import pytest

import dnaswap

SCHEMA = pathlib.Path(
    os.environ.get(
        "DNASWAP_SCHEMA",
        pathlib.Path(__file__).resolve().parents[2] / "schema" / "report.schema.json",
    )
)


@pytest.fixture(scope="module")
def schema():
    return json.loads(SCHEMA.read_text())


def test_recognized_a_matches_closed_form():
    a = dnaswap.recognize("A")
    want = np.zeros(8)
    want[0b011] = 1 / math.sqrt(2)
    want[0b101] = -1 / math.sqrt(2)
    assert np.allclose(a, want, atol=1e-12)


def test_recognition_unitary_is_unitary():
    u = dnaswap.recognition_unitary(0.3, 1.1)
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-12)


def test_encode_and_complement():
    assert dnaswap.encode("G#", "WC") == "110"
    assert dnaswap.complement("A") == "T"
    assert dnaswap.pairable("01", "10")


def test_pair_proper_and_improper():
    r = dnaswap.pair("G", "C", seed=3)
    assert r["verdict"] == "proper"
    assert r["bonds"] == ["b01", "b01", "b01"]
    r = dnaswap.pair("A", "G", seed=3)
    assert r["verdict"] == "improper"
    assert r["bonds"][:2] == ["b11", "b11"]


def test_modified_bell_variant_b():
    label, out = dnaswap.modified_bell(dnaswap.bell_state("b00"), 0, 1, "B", seed=9)
    assert label == "b00"
    assert np.allclose(out, dnaswap.bell_state("b01"), atol=1e-12)


def test_weak_dephase_keeps_recognized_state():
    g = dnaswap.recognize("G")
    out = dnaswap.weak_dephase(g, 0.7)
    assert abs(np.vdot(g, out)) == pytest.approx(1.0, abs=1e-12)
    assert dnaswap.sector_support(g) == [-1]
    assert dnaswap.lambda_of("101") == -1


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        dnaswap.recognize("X")
    with pytest.raises(ValueError):
        dnaswap.recognize("A", theta=2.0)


@pytest.mark.parametrize(
    "command,bases,options",
    [
        ("states", "", {}),
        ("pair", "GC", {"shots": 20}),
        ("pair", "AG", {"shots": 20}),
        ("replicate", "ATGCGA", {"order": "shuffled", "seed": 4}),
        ("replicate", "GGA", {"relaxation": "uniform-collapse", "shots": 5}),
        ("dfs-audit", "", {}),
    ],
)
def test_reports_validate_against_schema(schema, command, bases, options):
    report, ok = dnaswap.run(command, bases, **options)
    jsonschema.validate(report, schema)
    assert ok
    assert report["version"] == 1


def test_fault_audit_fails_and_validates(schema):
    report, ok = dnaswap.run("dfs-audit", inject_fault=True)
    jsonschema.validate(report, schema)
    assert not ok
    fault = report["results"]["fault"]
    assert fault["first_violation"] == fault["fault_step"]


def test_reports_are_deterministic():
    a, _ = dnaswap.run("replicate", "ATGCATGC", order="shuffled", seed=11)
    b, _ = dnaswap.run("replicate", "ATGCATGC", order="shuffled", seed=11)
    assert json.dumps(a) == json.dumps(b)
