"""Command-line front end.

Subcommands cover the full pipeline: ``check`` evaluates the
block-support condition and the discord verdict of an ensemble file,
``induce`` builds and applies the map of a state/unitary pair, ``discord``
runs the vanishing-discord test alone, ``hunt`` searches unitaries for
positive-but-not-CP candidates, and ``repro`` regenerates the two built-in
reference fixtures and asserts their pinned values.

Every report is JSON on stdout with the effective configuration echoed
under ``"config"``.  Exit codes are a stable contract: 0 success (or
condition/VQD holds), 2 condition fails (including search precondition
rejections and failed repro assertions), 3 indeterminate, 64 usage, I/O,
or validation errors, 65 dimension mismatches.
"""

import argparse
import json
import sys

import numpy as np

from .discord import NONZERO, VQD, has_vqd
from .errors import (
    PreconditionTheoremError,
    PreconditionVqdError,
    ShapeError,
    ValidationError,
)
from .jsonio import (
    load_ensemble,
    load_matrix,
    load_state,
    load_unitary,
    matrix_to_json,
    save_matrix,
)
from .linalg import hermitian_eigen, is_psd
from .maps import choi_matrix, induce, is_cp, probe_positivity
from .presets import bell_density, cnot, four_block_ensemble
from .search import GENERATOR, HAAR, SearchConfig, classification_label, hunt
from .states import (
    CANCELLATION,
    assemble,
    check_condition,
    classify_sl,
    decompose_blocks,
    rescaled_matrices,
    validate_density_matrix,
)

EXIT_OK = 0
EXIT_CONDITION_FAILS = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64
EXIT_DIMENSION = 65


class _UsageError(Exception):
    """Raised in place of argparse's SystemExit so main() can map it to 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _plain(value):
    """Make report values JSON-serializable (arrays become matrix payloads)."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        if value.ndim == 2:
            return matrix_to_json(value)
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        z = complex(value)
        return [z.real, z.imag]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _print_report(payload: dict) -> None:
    print(json.dumps(_plain(payload), indent=2, sort_keys=True))


def _discord_payload(verdict) -> dict:
    return {
        "status": verdict.status,
        "residual": verdict.residual,
        "basis": None if verdict.basis is None else matrix_to_json(verdict.basis),
    }


def _probe_payload(probe) -> dict:
    return {
        "status": probe.status,
        "min_eig": probe.min_eig,
        "witness": None if probe.witness is None else matrix_to_json(probe.witness),
    }


def _state_with_dims(path, dim_a_flag):
    """Load a state file; matrices need --dim-a to fix the tensor split."""
    kind, state = load_state(path)
    if kind == "ensemble":
        return assemble(state), state.dim_a, state.dim_e
    rho = validate_density_matrix(state, name="state")
    n = rho.shape[0]
    if dim_a_flag is None:
        raise ValidationError(
            "matrix state files need --dim-a to fix the system dimension"
        )
    if dim_a_flag < 1 or n % dim_a_flag != 0:
        raise ShapeError(
            f"state dimension {n} does not split as {dim_a_flag} x E"
        )
    return rho, dim_a_flag, n // dim_a_flag


def _cmd_check(args) -> int:
    e = load_ensemble(args.ensemble)
    report = check_condition(
        e, tol=args.tol, support_cutoff=args.support_cutoff, ortho_tol=args.ortho_tol
    )
    verdict = has_vqd(assemble(e), e.dim_a, e.dim_e, tol=args.vqd_tol, seed=args.seed)
    _print_report(
        {
            "sl_class": report.sl_class,
            "condition": {
                "holds": report.holds,
                "route": report.route,
                "routes": list(report.routes),
                "rescaled_psd": report.rescaled_psd,
                "rescaled_blocked": report.rescaled_blocked,
                "block_projector": report.block_projector,
                "witnesses": list(report.witnesses),
            },
            "vqd": _discord_payload(verdict),
            "config": {
                "tol": args.tol,
                "support_cutoff": args.support_cutoff,
                "ortho_tol": args.ortho_tol,
                "vqd_tol": args.vqd_tol,
                "seed": args.seed,
            },
        }
    )
    if report.holds:
        return EXIT_OK
    if report.rescaled_blocked == CANCELLATION:
        return EXIT_INDETERMINATE
    return EXIT_CONDITION_FAILS


def _cmd_induce(args) -> int:
    rho, dim_a, dim_e = _state_with_dims(args.state, args.dim_a)
    d = decompose_blocks(rho, dim_a, dim_e)
    u = load_unitary(args.unitary, dim=dim_a * dim_e)
    rho_prime = validate_density_matrix(load_matrix(args.input), name="input")
    if rho_prime.shape[0] != dim_a:
        raise ShapeError(
            f"input dimension {rho_prime.shape[0]} does not match system dimension {dim_a}"
        )
    m = induce(d, u)
    out = m.apply(rho_prime)
    verdict = is_cp(m, args.cp_tol)
    probe = probe_positivity(
        m, budget=args.budget, seed=args.seed, tol=args.witness_tol
    )
    out_eigs = hermitian_eigen(out, tol=1e-8).eigenvalues
    if args.out:
        save_matrix(args.out, out)
    if args.choi:
        save_matrix(args.choi, choi_matrix(m))
    _print_report(
        {
            "sl_class": classify_sl(d),
            "output": matrix_to_json(out),
            "output_min_eig": float(out_eigs[0]),
            "output_trace": float(np.trace(out).real),
            "choi_min_eig": verdict.choi_min_eig,
            "shift_norm": verdict.shift_norm,
            "cp_status": verdict.status,
            "positivity": _probe_payload(probe),
            "classification": classification_label(verdict, probe),
            "config": {
                "dim_a": dim_a,
                "dim_e": dim_e,
                "budget": args.budget,
                "seed": args.seed,
                "cp_tol": args.cp_tol,
                "witness_tol": args.witness_tol,
            },
        }
    )
    return EXIT_OK


def _cmd_discord(args) -> int:
    rho, dim_a, dim_e = _state_with_dims(args.state, args.dim_a)
    verdict = has_vqd(rho, dim_a, dim_e, tol=args.tol, seed=args.seed)
    payload = _discord_payload(verdict)
    payload["config"] = {
        "dim_a": dim_a,
        "dim_e": dim_e,
        "tol": args.tol,
        "seed": args.seed,
    }
    _print_report(payload)
    if verdict.status == VQD:
        return EXIT_OK
    if verdict.status == NONZERO:
        return EXIT_CONDITION_FAILS
    return EXIT_INDETERMINATE


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        family=args.family,
        params=tuple(args.params) if args.params is not None else None,
        trials=args.trials,
        positivity_budget=args.budget,
        seed=args.seed,
        cp_tol=args.cp_tol,
        witness_tol=args.witness_tol,
        condition_tol=args.condition_tol,
        vqd_tol=args.vqd_tol,
        candidate_threshold=args.candidate_threshold,
    )


def _config_payload(cfg: SearchConfig) -> dict:
    return {
        "family": cfg.family,
        "params": list(cfg.params) if cfg.params is not None else None,
        "trials": cfg.trials,
        "positivity_budget": cfg.positivity_budget,
        "seed": cfg.seed,
        "cp_tol": cfg.cp_tol,
        "witness_tol": cfg.witness_tol,
        "condition_tol": cfg.condition_tol,
        "vqd_tol": cfg.vqd_tol,
        "candidate_threshold": cfg.candidate_threshold,
    }


def _cmd_hunt(args) -> int:
    e = load_ensemble(args.ensemble)
    try:
        cfg = _search_config(args)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    try:
        candidates = hunt(e, cfg)
    except PreconditionTheoremError as exc:
        _print_report(
            {
                "error": {"code": "PRECONDITION_THEOREM", "message": str(exc)},
                "config": _config_payload(cfg),
            }
        )
        return EXIT_CONDITION_FAILS
    except PreconditionVqdError as exc:
        _print_report(
            {
                "error": {"code": "PRECONDITION_VQD", "message": str(exc)},
                "config": _config_payload(cfg),
            }
        )
        return EXIT_CONDITION_FAILS
    _print_report(
        {
            "count": len(candidates),
            "candidates": [
                {
                    "trial": r.trial,
                    "choi_min_eig": r.choi_min_eig,
                    "shift_norm": r.shift_norm,
                    "classification": r.classification,
                    "positivity": _probe_payload(r.positivity),
                    "unitary": matrix_to_json(r.unitary),
                }
                for r in candidates
            ],
            "config": _config_payload(cfg),
        }
    )
    return EXIT_OK


def _repro_four_block(p1: float) -> int:
    e = four_block_ensemble(p1)
    rs = rescaled_matrices(e)
    m1, m2 = rs.matrices
    target1 = np.zeros((4, 4), dtype=complex)
    target1[:2, :2] = 1.0 / p1
    target2 = np.zeros((4, 4), dtype=complex)
    target2[2:, 2:] = 1.0 / (1.0 - p1)
    entry_dev = max(
        float(np.abs(m1 - target1).max()), float(np.abs(m2 - target2).max())
    )
    ok1, min1 = is_psd(m1, tol=1e-12)
    ok2, min2 = is_psd(m2, tol=1e-12)
    checks = {
        "block_entries_match": entry_dev <= 1e-12,
        "all_psd": bool(ok1 and ok2),
    }
    status = "PASS" if all(checks.values()) else "FAIL"
    _print_report(
        {
            "name": "example-4xf",
            "rescaled": [matrix_to_json(m1), matrix_to_json(m2)],
            "expected_block_values": [1.0 / p1, 1.0 / (1.0 - p1)],
            "entry_deviation": entry_dev,
            "min_eigs": [min1, min2],
            "checks": checks,
            "status": status,
            "config": {"p1": p1},
        }
    )
    return EXIT_OK if status == "PASS" else EXIT_CONDITION_FAILS


def _repro_bell_cnot() -> int:
    d = decompose_blocks(bell_density(), 2, 2)
    m = induce(d, cnot())
    rho_prime = np.diag([1.0, 0.0]).astype(complex)
    out = m.apply(rho_prime)
    target = 0.5 * np.array([[1.0, 1.0], [1.0, 0.0]], dtype=complex)
    entry_dev = float(np.abs(out - target).max())
    min_eig = float(hermitian_eigen(out).eigenvalues[0])
    expected_eig = (1.0 - np.sqrt(5.0)) / 4.0
    checks = {
        "output_matches": entry_dev <= 1e-12,
        "min_eig_matches": abs(min_eig - expected_eig) <= 1e-10,
    }
    status = "PASS" if all(checks.values()) else "FAIL"
    _print_report(
        {
            "name": "bell-cnot",
            "output": matrix_to_json(out),
            "entry_deviation": entry_dev,
            "min_eig": min_eig,
            "expected_min_eig": expected_eig,
            "checks": checks,
            "status": status,
            "config": {},
        }
    )
    return EXIT_OK if status == "PASS" else EXIT_CONDITION_FAILS


def _cmd_repro(args) -> int:
    if args.name == "example-4xf":
        if not 0.0 < args.p1 < 1.0:
            raise _UsageError(f"--p1 must lie strictly between 0 and 1, got {args.p1}")
        return _repro_four_block(args.p1)
    return _repro_bell_cnot()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="inducedmaps",
        description=(
            "Induced dynamical maps of open systems: block decompositions, "
            "positivity checks, and unitary searches."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="evaluate the block-support condition")
    pc.add_argument("ensemble", help="ensemble JSON file")
    pc.add_argument("--tol", type=float, default=1e-9)
    pc.add_argument("--support-cutoff", type=float, default=1e-9)
    pc.add_argument("--ortho-tol", type=float, default=1e-9)
    pc.add_argument("--vqd-tol", type=float, default=1e-9)
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=_cmd_check)

    pi = sub.add_parser("induce", help="induce a map and apply it to an input")
    pi.add_argument("state", help="ensemble or matrix JSON file")
    pi.add_argument("unitary", help="joint unitary matrix JSON file")
    pi.add_argument("input", help="system input density matrix JSON file")
    pi.add_argument("--dim-a", type=int, default=None, help="system dimension for matrix states")
    pi.add_argument("--out", default=None, help="write the output matrix here")
    pi.add_argument("--choi", default=None, help="write the Choi matrix here")
    pi.add_argument("--budget", type=int, default=500)
    pi.add_argument("--seed", type=int, default=0)
    pi.add_argument("--cp-tol", type=float, default=1e-9)
    pi.add_argument("--witness-tol", type=float, default=1e-9)
    pi.set_defaults(func=_cmd_induce)

    pd = sub.add_parser("discord", help="vanishing-discord verdict for a state")
    pd.add_argument("state", help="ensemble or matrix JSON file")
    pd.add_argument("--dim-a", type=int, default=None, help="system dimension for matrix states")
    pd.add_argument("--tol", type=float, default=1e-9)
    pd.add_argument("--seed", type=int, default=0)
    pd.set_defaults(func=_cmd_discord)

    ph = sub.add_parser("hunt", help="search unitaries for positive-not-CP candidates")
    ph.add_argument("ensemble", help="ensemble JSON file")
    ph.add_argument("--family", choices=[HAAR, GENERATOR], default=HAAR)
    ph.add_argument("--params", type=float, nargs="+", default=None,
                    help="generator parameters (length dim**2) for the GENERATOR family")
    ph.add_argument("--trials", type=int, default=100)
    ph.add_argument("--budget", type=int, default=500)
    ph.add_argument("--seed", type=int, default=0)
    ph.add_argument("--cp-tol", type=float, default=1e-9)
    ph.add_argument("--witness-tol", type=float, default=1e-9)
    ph.add_argument("--condition-tol", type=float, default=1e-9)
    ph.add_argument("--vqd-tol", type=float, default=1e-9)
    ph.add_argument("--candidate-threshold", type=float, default=1e-6)
    ph.set_defaults(func=_cmd_hunt)

    pr = sub.add_parser("repro", help="regenerate a reference fixture and assert its values")
    pr.add_argument("name", choices=["example-4xf", "bell-cnot"])
    pr.add_argument("--p1", type=float, default=0.5, help="first weight for example-4xf")
    pr.set_defaults(func=_cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
