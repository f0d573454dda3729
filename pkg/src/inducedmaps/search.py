"""Search for joint unitaries whose induced maps fail complete positivity.

The search space is the joint unitary; the source ensemble is fixed and
must satisfy the block-support condition while carrying nonzero discord
(both preconditions are enforced, in that order).  Each trial induces the
map, takes the Choi spectrum and shift norm, and probes positivity on
random pure inputs; reports classify as CP, NON_POSITIVE (certified
witness), AFFINE (nonzero shift), or POSITIVE_NOT_CP_CANDIDATE.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionTheoremError, PreconditionVqdError, ShapeError
from .discord import VQD, has_vqd
from .linalg import dagger, hermitian_eigen
from .maps import CP, NOT_CP_AFFINE, VIOLATED, induce, is_cp, probe_positivity
from .states import (
    SeparableEnsemble,
    SLDecomposition,
    assemble,
    check_condition,
    decompose_blocks,
)

HAAR = "HAAR"
GENERATOR = "GENERATOR"

CLASS_CP = "CP"
CLASS_CANDIDATE = "POSITIVE_NOT_CP_CANDIDATE"
CLASS_NON_POSITIVE = "NON_POSITIVE"
CLASS_AFFINE = "AFFINE"


@dataclass(frozen=True)
class SearchConfig:
    """Settings for unitary searches.

    ``family`` picks the unitary source: HAAR draws a fresh seeded random
    unitary per trial, GENERATOR evaluates the fixed unitary generated by
    ``params`` (steered searches vary ``params`` externally and call
    :func:`classify` directly).  ``candidate_threshold`` is the magnitude
    a negative Choi eigenvalue must exceed for a report to survive the
    candidate filter in :func:`hunt`.
    """

    family: str = HAAR
    params: tuple[float, ...] | None = None
    trials: int = 100
    positivity_budget: int = 500
    seed: int = 0
    cp_tol: float = 1e-9
    witness_tol: float = 1e-9
    condition_tol: float = 1e-9
    vqd_tol: float = 1e-9
    candidate_threshold: float = 1e-6

    def __post_init__(self):
        if self.family not in (HAAR, GENERATOR):
            raise ValueError(f"unknown unitary family {self.family!r}")
        if self.family == GENERATOR and self.params is None:
            raise ValueError("GENERATOR family needs params")
        if self.params is not None:
            object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class CandidateReport:
    """Classification of one joint unitary against a fixed source state."""

    unitary: np.ndarray
    choi_min_eig: float
    shift_norm: float
    positivity: object
    classification: str
    trial: int | None = None

    def __post_init__(self):
        u = np.array(self.unitary, dtype=complex, copy=True)
        u.flags.writeable = False
        object.__setattr__(self, "unitary", u)


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed random unitary, deterministic per seed.

    QR decomposition of a complex Gaussian matrix with the phases of the
    triangular factor's diagonal absorbed into the unitary factor, which
    makes the distribution exactly Haar.
    """
    if dim < 1:
        raise ShapeError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def generator_unitary(params, dim: int) -> np.ndarray:
    """Unitary ``exp(iH)`` from a real parameter vector of length ``dim**2``.

    Layout: the first ``dim`` entries are the diagonal of the Hermitian
    generator ``H``; the remaining pairs fill the strict upper triangle in
    row-major order as (real, imaginary) parts, mirrored by conjugation.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (dim * dim,):
        raise ShapeError(
            f"params must have length {dim * dim} for dim {dim}, got {params.shape}"
        )
    h = np.zeros((dim, dim), dtype=complex)
    h[np.diag_indices(dim)] = params[:dim]
    pos = dim
    for i in range(dim):
        for j in range(i + 1, dim):
            h[i, j] = params[pos] + 1j * params[pos + 1]
            h[j, i] = params[pos] - 1j * params[pos + 1]
            pos += 2
    w, v = hermitian_eigen(h, tol=np.inf)
    return (v * np.exp(1j * w)) @ dagger(v)


def classification_label(verdict, probe) -> str:
    """Combine a CP verdict and a positivity probe into one label.

    Precedence: CP when the Choi spectrum is clean and the shift vanishes;
    NON_POSITIVE when probing certified a witness; AFFINE when the shift is
    nonzero but no witness was found in budget; otherwise the map is a
    POSITIVE_NOT_CP_CANDIDATE.
    """
    if verdict.status == CP:
        return CLASS_CP
    if probe.status == VIOLATED:
        return CLASS_NON_POSITIVE
    if verdict.status == NOT_CP_AFFINE:
        return CLASS_AFFINE
    return CLASS_CANDIDATE


def _as_decomposition(source) -> SLDecomposition:
    if isinstance(source, SLDecomposition):
        return source
    if isinstance(source, SeparableEnsemble):
        return decompose_blocks(assemble(source), source.dim_a, source.dim_e)
    raise TypeError(f"source must be a decomposition or ensemble, got {type(source)}")


def classify(source, u, cfg: SearchConfig, probe_seed=None) -> CandidateReport:
    """Induce the map of one unitary and classify its positivity.

    Precedence: CP when the Choi spectrum is clean and the shift vanishes;
    NON_POSITIVE when probing certifies a witness; AFFINE when the shift
    is nonzero but no witness was found in budget; otherwise the map is a
    POSITIVE_NOT_CP_CANDIDATE (negative Choi eigenvalue, no violation
    found).
    """
    d = _as_decomposition(source)
    m = induce(d, u)
    verdict = is_cp(m, cfg.cp_tol)
    probe = probe_positivity(
        m,
        budget=cfg.positivity_budget,
        seed=cfg.seed if probe_seed is None else probe_seed,
        tol=cfg.witness_tol,
    )
    label = classification_label(verdict, probe)
    return CandidateReport(
        unitary=u,
        choi_min_eig=verdict.choi_min_eig,
        shift_norm=verdict.shift_norm,
        positivity=probe,
        classification=label,
    )


def scan(source, cfg: SearchConfig) -> tuple[CandidateReport, ...]:
    """Classify ``cfg.trials`` unitaries from the configured family.

    Trials are independently seeded from ``cfg.seed`` (spawned seed
    sequences, one per trial), so the report list is deterministic and
    order-stable for a fixed configuration.
    """
    d = _as_decomposition(source)
    n = d.dim_a * d.dim_e
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    if cfg.family == GENERATOR:
        fixed_u = generator_unitary(cfg.params, n)
    reports = []
    for trial, child in enumerate(children):
        u_seed, probe_seed = child.spawn(2)
        u = haar_unitary(n, u_seed) if cfg.family == HAAR else fixed_u
        report = classify(d, u, cfg, probe_seed=probe_seed)
        reports.append(
            CandidateReport(
                unitary=report.unitary,
                choi_min_eig=report.choi_min_eig,
                shift_norm=report.shift_norm,
                positivity=report.positivity,
                classification=report.classification,
                trial=trial,
            )
        )
    return tuple(reports)


def filter_candidates(
    reports, threshold: float = 1e-6
) -> tuple[CandidateReport, ...]:
    """Keep POSITIVE_NOT_CP_CANDIDATE reports whose Choi eigenvalue is
    below ``-threshold``, sorted most negative first."""
    kept = [
        r
        for r in reports
        if r.classification == CLASS_CANDIDATE and r.choi_min_eig < -threshold
    ]
    return tuple(sorted(kept, key=lambda r: r.choi_min_eig))


def hunt(e: SeparableEnsemble, cfg: SearchConfig) -> tuple[CandidateReport, ...]:
    """Gated search for positive-but-not-CP candidates over an ensemble.

    Preconditions, enforced in order: the ensemble must pass
    :func:`check_condition` (else :class:`PreconditionTheoremError`) and
    its assembled state must not verify as vanishing-discord (else
    :class:`PreconditionVqdError`).  Surviving reports are filtered to
    POSITIVE_NOT_CP_CANDIDATE entries whose Choi eigenvalue is below
    ``-cfg.candidate_threshold`` and sorted most negative first.  An empty
    result is a valid outcome, not an error.
    """
    report = check_condition(e, tol=cfg.condition_tol)
    if not report.holds:
        raise PreconditionTheoremError(
            f"block-support condition does not hold: witnesses {list(report.witnesses)}"
        )
    verdict = has_vqd(
        assemble(e), e.dim_a, e.dim_e, tol=cfg.vqd_tol, seed=cfg.seed
    )
    if verdict.status == VQD:
        raise PreconditionVqdError(
            "ensemble has vanishing discord (pinching defect "
            f"{verdict.residual:.3e}); every induced map is CP"
        )
    return filter_candidates(scan(e, cfg), cfg.candidate_threshold)
