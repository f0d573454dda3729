"""JSON wire formats: bit-exact round trips and validation."""

import json

import numpy as np
import pytest

from inducedmaps import SeparableEnsemble, ShapeError, ValidationError
from inducedmaps.jsonio import (
    complex_to_json,
    ensemble_from_json,
    ensemble_to_json,
    load_ensemble,
    load_json,
    load_matrix,
    load_state,
    load_unitary,
    matrix_from_json,
    matrix_to_json,
    save_ensemble,
    save_json,
    save_matrix,
)
from inducedmaps.presets import cnot, four_block_ensemble

AWKWARD = np.array(
    [
        [0.1 + 0.2j, 1.0 / 3.0, -0.0 + 0.0j],
        [5e-324 + 1e308j, np.pi - 2j, 1e-17 + 0.3j],
    ],
    dtype=complex,
)


def test_complex_to_json_splits_parts():
    assert complex_to_json(1.5 - 2.25j) == [1.5, -2.25]


def test_matrix_payload_round_trip_is_bit_exact():
    payload = matrix_to_json(AWKWARD)
    assert payload["rows"] == 2 and payload["cols"] == 3
    assert len(payload["data"]) == 6
    # through an actual JSON text serialization, not just the dict
    back = matrix_from_json(json.loads(json.dumps(payload)))
    assert back.tobytes() == AWKWARD.tobytes()


def test_matrix_file_round_trip_is_bit_exact(tmp_path):
    path = tmp_path / "m.json"
    save_matrix(path, AWKWARD)
    assert load_matrix(path).tobytes() == AWKWARD.tobytes()


def test_save_json_emits_sorted_stable_text(tmp_path):
    path = tmp_path / "payload.json"
    save_json(path, {"b": 1, "a": [2, 3]})
    text = path.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"b": 1, "a": [2, 3]}


def test_matrix_payload_validation_errors():
    good = matrix_to_json(np.eye(2))
    for broken in (
        "not a dict",
        {},
        {**good, "rows": 0},
        {**good, "data": good["data"][:-1]},
        {**good, "data": good["data"][:-1] + [[1.0]]},
        {**good, "data": good["data"][:-1] + ["x"]},
    ):
        with pytest.raises(ValidationError):
            matrix_from_json(broken)


def test_matrix_payload_rejects_non_finite_entries():
    with pytest.raises(ValidationError):
        matrix_from_json(
            {"rows": 1, "cols": 1, "data": [[float("nan"), 0.0]]}
        )
    with pytest.raises(ValidationError):
        matrix_from_json(
            {"rows": 1, "cols": 1, "data": [[float("inf"), 0.0]]}
        )


def test_ensemble_round_trip_preserves_terms(tmp_path):
    e = four_block_ensemble(0.37)
    payload = ensemble_to_json(e)
    back = ensemble_from_json(json.loads(json.dumps(payload)))
    assert back.dim_a == e.dim_a and back.dim_e == e.dim_e
    assert len(back.terms) == len(e.terms)
    for orig, loaded in zip(e.terms, back.terms):
        assert loaded.p == orig.p
        assert loaded.rho_a.tobytes() == orig.rho_a.tobytes()
        assert loaded.rho_e.tobytes() == orig.rho_e.tobytes()
    path = tmp_path / "e.json"
    save_ensemble(path, e)
    assert isinstance(load_ensemble(path), SeparableEnsemble)


def test_ensemble_payload_validation_errors():
    good = ensemble_to_json(four_block_ensemble())
    for broken in (
        [],
        {},
        {**good, "terms": []},
        {**good, "terms": [{"p": 1.0}]},
    ):
        with pytest.raises(ValidationError):
            ensemble_from_json(broken)
    # weights re-validated on reconstruction
    bad_weights = json.loads(json.dumps(good))
    bad_weights["terms"][0]["p"] = 0.9
    with pytest.raises(ValidationError):
        ensemble_from_json(bad_weights)


def test_load_state_distinguishes_payload_kinds(tmp_path):
    epath = tmp_path / "ensemble.json"
    mpath = tmp_path / "matrix.json"
    save_ensemble(epath, four_block_ensemble())
    save_matrix(mpath, np.eye(2) / 2.0)
    kind, state = load_state(epath)
    assert kind == "ensemble" and isinstance(state, SeparableEnsemble)
    kind, state = load_state(mpath)
    assert kind == "matrix" and isinstance(state, np.ndarray)


def test_load_unitary_checks_unitarity_and_dimension(tmp_path):
    upath = tmp_path / "u.json"
    save_matrix(upath, cnot())
    loaded = load_unitary(upath, dim=4)
    assert np.array_equal(loaded, cnot())
    with pytest.raises(ShapeError):
        load_unitary(upath, dim=2)
    bad = tmp_path / "bad.json"
    save_matrix(bad, np.ones((2, 2)))
    with pytest.raises(ValidationError):
        load_unitary(bad)


def test_load_json_rejects_malformed_text(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_json(path)
