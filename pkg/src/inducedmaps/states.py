"""Separable ensembles, coherence-block decompositions, and the
block-support positivity condition.

A bipartite density matrix on A ⊗ E decomposes into dim_a x dim_a blocks
indexed by the A basis pair ``(k, l)``.  Each block is stored as a trace
coefficient together with a normalized environment factor; blocks whose
trace vanishes while the block itself does not are the obstruction to
entrywise rescaling and are tracked as a class of their own.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import (
    CancellationError,
    NonSLError,
    ShapeError,
    ValidationError,
)
from .linalg import (
    as_square,
    dagger,
    hadamard,
    hermitian_deviation,
    hermitian_eigen,
    is_psd,
    tensor,
)

# Trace-1 / hermiticity / positivity tolerance for density matrix validation.
DEFAULT_DENSITY_TOL = 1e-9

# A block trace below this magnitude counts as zero.
BLOCK_TRACE_TOL = 1e-10

# A block with every entry below this magnitude counts as the zero block.
BLOCK_ZERO_TOL = 1e-10

# Eigenvalue cutoff defining the support projector of a component state.
SUPPORT_CUTOFF = 1e-9

# Operator-norm tolerance for pairwise orthogonality of support projectors.
ORTHO_TOL = 1e-9

SL = "SL"
NON_SL = "NON_SL"

CANCELLATION = "CANCELLATION"

ROUTE_RESCALED = "RESCALED_PSD"
ROUTE_BLOCK = "BLOCK_PROJECTOR"
ROUTE_NONE = "NONE"


class PairClass(IntEnum):
    """Classification of one coherence block of a bipartite state."""

    ZERO_BLOCK = 0
    UNIT_TRACE = 1
    TRACELESS_NONZERO = 2


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex, copy=True)
    out.flags.writeable = False
    return out


def validate_density_matrix(rho, tol: float = DEFAULT_DENSITY_TOL, name: str = "rho"):
    """Check hermiticity, unit trace, and positivity; return the matrix.

    All three checks use ``tol``: hermiticity in max-entry norm, trace
    against 1, and the smallest eigenvalue against ``-tol``.
    """
    rho = as_square(rho, name)
    dev = hermitian_deviation(rho)
    if dev > tol:
        raise ValidationError(
            f"{name} is not Hermitian: max deviation {dev:.3e} exceeds {tol:.3e}"
        )
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"{name} has trace {tr:.12g}, expected 1")
    ok, lam = is_psd(rho, tol)
    if not ok:
        raise ValidationError(f"{name} has negative eigenvalue {lam:.3e}")
    return rho


@dataclass(frozen=True)
class EnsembleTerm:
    """One weighted product term ``p * (rho_a ⊗ rho_e)``."""

    p: float
    rho_a: np.ndarray
    rho_e: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.p) or self.p < 0:
            raise ValidationError(f"term weight must be >= 0, got {self.p}")
        object.__setattr__(
            self, "rho_a", _frozen(validate_density_matrix(self.rho_a, name="rho_a"))
        )
        object.__setattr__(
            self, "rho_e", _frozen(validate_density_matrix(self.rho_e, name="rho_e"))
        )


@dataclass(frozen=True)
class SeparableEnsemble:
    """Finite mixture of product states on A ⊗ E.

    Terms are validated on construction: weights are nonnegative and sum
    to 1 within 1e-9, and every factor is a valid density matrix of the
    declared dimension.
    """

    dim_a: int
    dim_e: int
    terms: tuple[EnsembleTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValidationError("ensemble needs at least one term")
        for t in self.terms:
            if t.rho_a.shape != (self.dim_a, self.dim_a):
                raise ShapeError(
                    f"rho_a shape {t.rho_a.shape} does not match dim_a {self.dim_a}"
                )
            if t.rho_e.shape != (self.dim_e, self.dim_e):
                raise ShapeError(
                    f"rho_e shape {t.rho_e.shape} does not match dim_e {self.dim_e}"
                )
        total = sum(t.p for t in self.terms)
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"term weights sum to {total:.12g}, expected 1")


@dataclass(frozen=True)
class SLDecomposition:
    """Coherence-block decomposition of a bipartite density matrix.

    ``coeffs[k, l]`` carries the trace of block ``(k, l)`` and
    ``blocks[k, l]`` the matching dim_e x dim_e factor, normalized so that
    the physical block is always ``coeffs[k, l] * blocks[k, l]``:

    - UNIT_TRACE: ``coeffs`` holds the block trace, ``blocks`` is unit trace;
    - TRACELESS_NONZERO: ``coeffs`` is fixed to 1, ``blocks`` is the raw
      block (only the product is meaningful for these pairs);
    - ZERO_BLOCK: both are zero.
    """

    dim_a: int
    dim_e: int
    coeffs: np.ndarray
    blocks: np.ndarray
    pair_class: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _frozen(self.coeffs))
        object.__setattr__(self, "blocks", _frozen(self.blocks))
        pc = np.array(self.pair_class, dtype=np.int8, copy=True)
        pc.flags.writeable = False
        object.__setattr__(self, "pair_class", pc)

    @property
    def is_sl(self) -> bool:
        """True when no block is traceless yet nonzero."""
        return not bool(np.any(self.pair_class == PairClass.TRACELESS_NONZERO))


@dataclass(frozen=True)
class RescaledSet:
    """Per-component entrywise ratios against the total block coefficients.

    ``matrices[i][k, l]`` is ``rho_a_i[k, l] / gamma[k, l]`` where ``gamma``
    is the weighted sum of all component matrices.  ``defined_mask`` is True
    where the ratio is a genuine quotient and False where the 0/0
    convention (entry set to 0) applied.
    """

    matrices: tuple[np.ndarray, ...]
    defined_mask: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(_frozen(m) for m in self.matrices))
        mask = np.array(self.defined_mask, dtype=bool, copy=True)
        mask.flags.writeable = False
        object.__setattr__(self, "defined_mask", mask)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the block-support condition with per-route detail.

    ``routes`` lists every route that holds; ``route`` is the first of
    them or ``"NONE"``.  ``rescaled_psd`` is None when that route could
    not be evaluated (``rescaled_blocked`` then names the reason,
    CANCELLATION or NON_SL).
    """

    holds: bool
    route: str
    routes: tuple[str, ...]
    sl_class: str
    rescaled_psd: bool | None
    rescaled_blocked: str | None
    block_projector: bool
    witnesses: tuple[dict, ...]


def assemble(e: SeparableEnsemble) -> np.ndarray:
    """Total density matrix ``sum_i p_i (rho_a_i ⊗ rho_e_i)``."""
    n = e.dim_a * e.dim_e
    rho = np.zeros((n, n), dtype=complex)
    for t in e.terms:
        rho += t.p * tensor(t.rho_a, t.rho_e)
    return rho


def decompose_blocks(
    rho_ae,
    dim_a: int,
    dim_e: int,
    trace_tol: float = BLOCK_TRACE_TOL,
    zero_tol: float = BLOCK_ZERO_TOL,
    density_tol: float = DEFAULT_DENSITY_TOL,
) -> SLDecomposition:
    """Split a bipartite density matrix into classified coherence blocks.

    Block ``(k, l)`` is the dim_e x dim_e submatrix at row block ``k`` and
    column block ``l``.  Its trace decides the class: above ``trace_tol``
    in magnitude the block divides through and is UNIT_TRACE; otherwise a
    block with any entry above ``zero_tol`` is TRACELESS_NONZERO (stored
    raw with coefficient 1), and the rest are ZERO_BLOCK.
    """
    rho = validate_density_matrix(rho_ae, tol=density_tol, name="rho_ae")
    n = dim_a * dim_e
    if dim_a < 1 or dim_e < 1 or rho.shape[0] != n:
        raise ShapeError(f"shape {rho.shape} does not factor as {dim_a}x{dim_e}")
    coeffs = np.zeros((dim_a, dim_a), dtype=complex)
    blocks = np.zeros((dim_a, dim_a, dim_e, dim_e), dtype=complex)
    pair_class = np.zeros((dim_a, dim_a), dtype=np.int8)
    for k in range(dim_a):
        for l in range(dim_a):
            block = rho[k * dim_e : (k + 1) * dim_e, l * dim_e : (l + 1) * dim_e]
            tr = complex(np.trace(block))
            if abs(tr) > trace_tol:
                coeffs[k, l] = tr
                blocks[k, l] = block / tr
                pair_class[k, l] = PairClass.UNIT_TRACE
            elif np.abs(block).max() > zero_tol:
                coeffs[k, l] = 1.0
                blocks[k, l] = block
                pair_class[k, l] = PairClass.TRACELESS_NONZERO
            else:
                pair_class[k, l] = PairClass.ZERO_BLOCK
    return SLDecomposition(dim_a, dim_e, coeffs, blocks, pair_class)


def reassemble(d: SLDecomposition) -> np.ndarray:
    """Rebuild the bipartite matrix ``sum_kl coeffs[k,l] |k><l| ⊗ blocks[k,l]``."""
    n = d.dim_a * d.dim_e
    rho = np.zeros((n, n), dtype=complex)
    for k in range(d.dim_a):
        for l in range(d.dim_a):
            rho[k * d.dim_e : (k + 1) * d.dim_e, l * d.dim_e : (l + 1) * d.dim_e] = (
                d.coeffs[k, l] * d.blocks[k, l]
            )
    return rho


def classify_sl(d: SLDecomposition) -> str:
    """``"SL"`` when every block is unit-trace or zero, else ``"NON_SL"``."""
    return SL if d.is_sl else NON_SL


def rescaled_matrices(
    e: SeparableEnsemble,
    trace_tol: float = BLOCK_TRACE_TOL,
    zero_tol: float = BLOCK_ZERO_TOL,
) -> RescaledSet:
    """Entrywise component-to-total ratios for an SL-class ensemble.

    With ``gamma = sum_i p_i rho_a_i``, component ``i`` rescales to
    ``rho_a_i[k, l] / gamma[k, l]`` wherever ``gamma`` is nonzero.  Entries
    where both numerator and denominator vanish are set to 0 and flagged in
    ``defined_mask``; a vanishing denominator with a nonzero numerator means
    the components cancel and raises :class:`CancellationError`.  The
    assembled state must be SL class, else :class:`NonSLError` is raised.
    """
    d = decompose_blocks(assemble(e), e.dim_a, e.dim_e, trace_tol, zero_tol)
    if not d.is_sl:
        pairs = np.argwhere(d.pair_class == PairClass.TRACELESS_NONZERO)
        raise NonSLError(
            f"assembled state has traceless nonzero blocks at {pairs.tolist()}"
        )
    gamma = np.zeros((e.dim_a, e.dim_a), dtype=complex)
    for t in e.terms:
        gamma += t.p * t.rho_a
    defined = np.abs(gamma) > trace_tol
    matrices = []
    for i, t in enumerate(e.terms):
        stray = ~defined & (np.abs(t.rho_a) > zero_tol)
        if np.any(stray):
            entries = np.argwhere(stray).tolist()
            raise CancellationError(
                f"component {i} is nonzero at {entries} where the total "
                "coefficient vanishes; rescaling is indeterminate"
            )
        ratio = np.zeros_like(gamma)
        np.divide(t.rho_a, gamma, out=ratio, where=defined)
        matrices.append(ratio)
    return RescaledSet(tuple(matrices), defined)


def _support_projector(rho: np.ndarray, cutoff: float) -> np.ndarray:
    w, v = hermitian_eigen(rho)
    keep = v[:, w > cutoff]
    return keep @ dagger(keep)


def check_condition(
    e: SeparableEnsemble,
    tol: float = 1e-9,
    support_cutoff: float = SUPPORT_CUTOFF,
    ortho_tol: float = ORTHO_TOL,
) -> ConditionReport:
    """Evaluate the block-support positivity condition along both routes.

    Route RESCALED_PSD holds when every rescaled component matrix is
    positive semidefinite (smallest eigenvalue >= ``-tol``).  Route
    BLOCK_PROJECTOR holds when the assembled state is SL class and the
    component supports are pairwise orthogonal (operator norm of each
    projector product <= ``ortho_tol``); orthogonal supports always extend
    to a complete family of orthogonal block projectors, so this matches
    the projector formulation exactly.  The condition holds when either
    route does.  Cancellation blocks the rescaled route only; the
    projector route is still evaluated.
    """
    witnesses: list[dict] = []
    d = decompose_blocks(assemble(e), e.dim_a, e.dim_e)
    sl_class = classify_sl(d)

    rescaled_psd: bool | None = None
    rescaled_blocked: str | None = None
    if sl_class == NON_SL:
        rescaled_blocked = "NON_SL"
        witnesses.append({"route": ROUTE_RESCALED, "error": "NON_SL"})
    else:
        try:
            rs = rescaled_matrices(e)
        except CancellationError as exc:
            rescaled_blocked = CANCELLATION
            witnesses.append(
                {"route": ROUTE_RESCALED, "error": CANCELLATION, "detail": str(exc)}
            )
        else:
            rescaled_psd = True
            for i, m in enumerate(rs.matrices):
                ok, lam = is_psd(m, tol)
                if not ok:
                    rescaled_psd = False
                    witnesses.append(
                        {"route": ROUTE_RESCALED, "term": i, "min_eig": lam}
                    )

    block_projector = True
    if sl_class == NON_SL:
        block_projector = False
        witnesses.append({"route": ROUTE_BLOCK, "error": "NON_SL"})
    else:
        projectors = [_support_projector(t.rho_a, support_cutoff) for t in e.terms]
        for i, (t, proj) in enumerate(zip(e.terms, projectors)):
            residual = float(np.abs(t.rho_a - proj @ t.rho_a @ proj).max())
            if residual > tol:
                block_projector = False
                witnesses.append(
                    {"route": ROUTE_BLOCK, "term": i, "projection_residual": residual}
                )
        for i in range(len(projectors)):
            for j in range(i + 1, len(projectors)):
                overlap = float(np.linalg.norm(projectors[i] @ projectors[j], 2))
                if overlap > ortho_tol:
                    block_projector = False
                    witnesses.append(
                        {"route": ROUTE_BLOCK, "pair": [i, j], "overlap": overlap}
                    )

    routes = tuple(
        name
        for name, ok in ((ROUTE_RESCALED, rescaled_psd), (ROUTE_BLOCK, block_projector))
        if ok
    )
    return ConditionReport(
        holds=bool(routes),
        route=routes[0] if routes else ROUTE_NONE,
        routes=routes,
        sl_class=sl_class,
        rescaled_psd=rescaled_psd,
        rescaled_blocked=rescaled_blocked,
        block_projector=block_projector,
        witnesses=tuple(witnesses),
    )


def component_images(rho_prime, rescaled: RescaledSet) -> tuple[np.ndarray, ...]:
    """Entrywise products of an input state with each rescaled component.

    These are the effective per-component inputs in the decomposition of
    an induced map over an ensemble: when every rescaled matrix is
    positive semidefinite, each product is too (Schur product of positive
    semidefinite factors).
    """
    rho_prime = validate_density_matrix(rho_prime, name="rho_prime")
    return tuple(hadamard(rho_prime, m) for m in rescaled.matrices)
