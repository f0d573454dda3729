"""JSON file formats for matrices and ensembles.

A matrix file is ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` with
entries row-major; an ensemble file is ``{"dimA": d, "dimE": f, "terms":
[{"p": w, "rhoA": <matrix>, "rhoE": <matrix>}, ...]}``.  Floats are
emitted in shortest round-trip decimal form, so write-then-read is
bit-exact for every finite double.
"""

import json

import numpy as np

from .errors import ValidationError
from .maps import validate_unitary
from .states import EnsembleTerm, SeparableEnsemble


def complex_to_json(z) -> list[float]:
    """One complex scalar as a ``[re, im]`` pair."""
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(m) -> dict:
    """Matrix payload with row-major ``[re, im]`` entries."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"matrix payloads are 2-D, got shape {m.shape}")
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [complex_to_json(z) for z in m.reshape(-1)],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Parse and validate a matrix payload into a complex array."""
    if not isinstance(obj, dict):
        raise ValidationError(f"matrix payload must be an object, got {type(obj).__name__}")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"matrix payload missing or malformed field: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ValidationError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValidationError(
            f"matrix data length {len(data) if isinstance(data, list) else 'n/a'} "
            f"does not equal rows*cols = {rows * cols}"
        )
    flat = np.empty(rows * cols, dtype=complex)
    for idx, pair in enumerate(data):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValidationError(f"entry {idx} is not an [re, im] pair: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        flat[idx] = complex(re, im)
    m = flat.reshape(rows, cols)
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValidationError("matrix entries must all be finite")
    return m


def ensemble_to_json(e: SeparableEnsemble) -> dict:
    """Ensemble payload mirroring the in-memory invariants."""
    return {
        "dimA": int(e.dim_a),
        "dimE": int(e.dim_e),
        "terms": [
            {
                "p": float(t.p),
                "rhoA": matrix_to_json(t.rho_a),
                "rhoE": matrix_to_json(t.rho_e),
            }
            for t in e.terms
        ],
    }


def ensemble_from_json(obj) -> SeparableEnsemble:
    """Parse an ensemble payload; construction re-validates every invariant."""
    if not isinstance(obj, dict):
        raise ValidationError(f"ensemble payload must be an object, got {type(obj).__name__}")
    try:
        dim_a, dim_e, raw_terms = int(obj["dimA"]), int(obj["dimE"]), obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"ensemble payload missing or malformed field: {exc}") from exc
    if not isinstance(raw_terms, list) or not raw_terms:
        raise ValidationError("ensemble payload needs a non-empty terms list")
    terms = []
    for idx, t in enumerate(raw_terms):
        try:
            p = float(t["p"])
            rho_a = matrix_from_json(t["rhoA"])
            rho_e = matrix_from_json(t["rhoE"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"term {idx} missing or malformed field: {exc}") from exc
        terms.append(EnsembleTerm(p, rho_a, rho_e))
    return SeparableEnsemble(dim_a, dim_e, tuple(terms))


def save_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON: {exc}") from exc


def save_matrix(path, m) -> None:
    save_json(path, matrix_to_json(m))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(load_json(path))


def save_ensemble(path, e: SeparableEnsemble) -> None:
    save_json(path, ensemble_to_json(e))


def load_ensemble(path) -> SeparableEnsemble:
    return ensemble_from_json(load_json(path))


def load_state(path):
    """Load either file kind: ensembles carry a ``terms`` key, matrices don't.

    Returns ``("ensemble", SeparableEnsemble)`` or ``("matrix", ndarray)``.
    """
    obj = load_json(path)
    if isinstance(obj, dict) and "terms" in obj:
        return "ensemble", ensemble_from_json(obj)
    return "matrix", matrix_from_json(obj)


def load_unitary(path, dim: int | None = None, tol: float = 1e-10) -> np.ndarray:
    """Load a matrix file and verify unitarity (and dimension when given)."""
    return validate_unitary(load_matrix(path), dim=dim, tol=tol)
