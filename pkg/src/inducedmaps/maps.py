"""Induced dynamical maps on the A factor of a jointly evolving pair.

Given a coherence-block decomposition of the initial joint state and a
joint unitary, the reduced dynamics of A is affine: a linear part acting
on the input's matrix entries plus an input-independent shift collected
from the traceless coherence blocks.  SL-class sources have zero shift
and a trace-preserving linear part.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotPsdError, ShapeError, ValidationError
from .linalg import dagger, hermitian_eigen, partial_trace
from .states import PairClass, SLDecomposition, validate_density_matrix

CP = "CP"
NOT_CP = "NOT_CP"
NOT_CP_AFFINE = "NOT_CP_AFFINE"

VIOLATED = "VIOLATED"
NO_VIOLATION_FOUND = "NO_VIOLATION_FOUND"

DEFAULT_UNITARITY_TOL = 1e-10

# Eigenvalues of the Choi matrix below this are dropped when extracting
# operator-sum terms; their total contribution is far below the 1e-9
# reconstruction contract.
KRAUS_KEEP_TOL = 1e-12


@dataclass(frozen=True)
class InducedMap:
    """Affine reduced dynamics: ``rho' -> sum_kl rho'[k,l] images[k,l] + shift``.

    ``images[k, l]`` is the response to the basis pair ``|k><l|`` and
    ``shift`` the contribution of the source state's traceless coherence
    blocks.  For SL sources the images are unit-trace on the diagonal and
    traceless off it, so the map preserves trace; for non-SL sources the
    images absorb the source block coefficients and the shift is nonzero.
    """

    dim_a: int
    images: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        images = np.array(self.images, dtype=complex, copy=True)
        shift = np.array(self.shift, dtype=complex, copy=True)
        images.flags.writeable = False
        shift.flags.writeable = False
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "shift", shift)

    def apply(self, rho_prime) -> np.ndarray:
        """Evaluate the map on an input matrix."""
        rho_prime = np.asarray(rho_prime, dtype=complex)
        if rho_prime.shape != (self.dim_a, self.dim_a):
            raise ShapeError(
                f"input shape {rho_prime.shape}, expected {(self.dim_a, self.dim_a)}"
            )
        return np.einsum("kl,klab->ab", rho_prime, self.images) + self.shift


@dataclass(frozen=True)
class CpVerdict:
    """Complete-positivity verdict for an induced map.

    ``status`` is CP, NOT_CP (negative Choi eigenvalue), or NOT_CP_AFFINE
    (nonzero shift, reported distinctly because the map is not even
    linear).
    """

    status: str
    choi_min_eig: float
    shift_norm: float


@dataclass(frozen=True)
class PositivityProbe:
    """Outcome of sampling-plus-refinement positivity probing.

    VIOLATED comes with a certified witness: a valid input density matrix
    whose output has smallest eigenvalue ``min_eig`` below tolerance.
    NO_VIOLATION_FOUND is an exhausted budget, not a proof of positivity.
    """

    status: str
    min_eig: float
    witness: np.ndarray | None


def validate_unitary(u, dim: int | None = None, tol: float = DEFAULT_UNITARITY_TOL):
    """Check ``U†U = I`` to ``tol`` (max-entry norm); return the matrix."""
    from .linalg import as_square

    u = as_square(u, "unitary")
    if dim is not None and u.shape[0] != dim:
        raise ShapeError(f"unitary has dimension {u.shape[0]}, expected {dim}")
    dev = float(np.abs(dagger(u) @ u - np.eye(u.shape[0])).max())
    if dev > tol:
        raise ValidationError(f"matrix is not unitary: deviation {dev:.3e}")
    return u


def induce(
    d: SLDecomposition, u, unitarity_tol: float = DEFAULT_UNITARITY_TOL
) -> InducedMap:
    """Build the induced map of a joint unitary over a block decomposition.

    Every stored block is conjugated through the unitary and traced over
    the environment.  UNIT_TRACE pairs feed the linear images (weighted by
    the block coefficients when the decomposition is not SL class, so the
    affine convention reproduces the reference non-SL outputs);
    TRACELESS_NONZERO pairs accumulate into the shift; ZERO_BLOCK pairs
    contribute nothing.
    """
    da, de = d.dim_a, d.dim_e
    n = da * de
    u = validate_unitary(u, dim=n, tol=unitarity_tol)
    weighted = not d.is_sl
    images = np.zeros((da, da, da, da), dtype=complex)
    shift = np.zeros((da, da), dtype=complex)
    u_dag = dagger(u)
    for k in range(da):
        for l in range(da):
            cls = d.pair_class[k, l]
            if cls == PairClass.ZERO_BLOCK:
                continue
            embedded = np.zeros((n, n), dtype=complex)
            embedded[k * de : (k + 1) * de, l * de : (l + 1) * de] = d.blocks[k, l]
            response = partial_trace(u @ embedded @ u_dag, da, de, side="E")
            if cls == PairClass.UNIT_TRACE:
                images[k, l] = d.coeffs[k, l] * response if weighted else response
            else:
                shift += d.coeffs[k, l] * response
    return InducedMap(da, images, shift)


def choi_matrix(m: InducedMap) -> np.ndarray:
    """Choi matrix with block ``(k, l)`` equal to ``images[k, l]``.

    Row block ``k``, column block ``l``; the shift is excluded (the Choi
    construction characterizes the linear part only).
    """
    da = m.dim_a
    return m.images.transpose(0, 2, 1, 3).reshape(da * da, da * da)


def is_cp(m: InducedMap, tol: float = 1e-9) -> CpVerdict:
    """Classify complete positivity of the map's linear part.

    CP requires the Choi matrix to have smallest eigenvalue >= ``-tol``
    and the shift to vanish within ``tol`` (max-entry norm).  A nonzero
    shift yields NOT_CP_AFFINE regardless of the Choi spectrum.
    """
    w, _ = hermitian_eigen(choi_matrix(m), tol=max(tol, 1e-9))
    choi_min = float(w[0])
    shift_norm = float(np.abs(m.shift).max())
    if shift_norm > tol:
        status = NOT_CP_AFFINE
    elif choi_min < -tol:
        status = NOT_CP
    else:
        status = CP
    return CpVerdict(status, choi_min, shift_norm)


def _output_min_eig(m: InducedMap, vec: np.ndarray) -> float:
    out = m.apply(np.outer(vec, vec.conj()))
    out = (out + dagger(out)) / 2.0
    return float(np.linalg.eigvalsh(out)[0])


def probe_positivity(
    m: InducedMap,
    budget: int = 500,
    seed: int = 0,
    tol: float = 1e-9,
    refine_iters: int = 200,
) -> PositivityProbe:
    """Search for an input whose output loses positivity.

    Samples ``budget`` Haar-random pure inputs, then refines the worst one
    by derivative-free descent: random normalized perturbations of the
    state vector, halving the step on every rejected move, for at most
    ``refine_iters`` iterations.  VIOLATED is reported only with a
    certified witness (a valid density matrix re-checked below ``-tol``).
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    rng = np.random.default_rng(seed)
    da = m.dim_a

    def sample() -> np.ndarray:
        v = rng.normal(size=da) + 1j * rng.normal(size=da)
        return v / np.linalg.norm(v)

    best_vec = sample()
    best = _output_min_eig(m, best_vec)
    for _ in range(budget - 1):
        vec = sample()
        lam = _output_min_eig(m, vec)
        if lam < best:
            best, best_vec = lam, vec

    step = 0.5
    for _ in range(refine_iters):
        delta = rng.normal(size=da) + 1j * rng.normal(size=da)
        delta /= np.linalg.norm(delta)
        cand = best_vec + step * delta
        cand /= np.linalg.norm(cand)
        lam = _output_min_eig(m, cand)
        if lam < best:
            best, best_vec = lam, cand
        else:
            step /= 2.0
            if step < 1e-12:
                break

    if best < -tol:
        witness = np.outer(best_vec, best_vec.conj())
        witness = validate_density_matrix(witness, name="witness")
        return PositivityProbe(VIOLATED, best, witness)
    return PositivityProbe(NO_VIOLATION_FOUND, best, None)


def kraus_from_choi(
    choi, tol: float = 1e-9, keep_tol: float = KRAUS_KEEP_TOL
) -> list[np.ndarray]:
    """Operator-sum terms of a completely positive linear part.

    Eigenvectors of the Choi matrix, scaled by the square roots of their
    eigenvalues, reshaped so that ``sum_j K_j rho K_j†`` reproduces the
    map's linear action.  A Choi eigenvalue below ``-tol`` raises
    :class:`NotPsdError`; eigenvalues up to ``keep_tol`` are discarded.
    """
    from .linalg import as_square

    choi = as_square(choi, "choi")
    da = int(round(np.sqrt(choi.shape[0])))
    if da * da != choi.shape[0]:
        raise ShapeError(f"Choi dimension {choi.shape[0]} is not a perfect square")
    w, v = hermitian_eigen(choi, tol=max(tol, 1e-9))
    if float(w[0]) < -tol:
        raise NotPsdError(f"Choi matrix has negative eigenvalue {float(w[0]):.3e}")
    ops = []
    for lam, vec in zip(w, v.T):
        if lam > keep_tol:
            ops.append(np.sqrt(lam) * vec.reshape(da, da).T)
    return ops
