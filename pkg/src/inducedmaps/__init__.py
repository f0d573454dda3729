"""Induced dynamical maps of open quantum systems.

Build bipartite system-environment states from separable ensembles,
decompose them into coherence blocks, evaluate a block-support condition
sufficient for the induced map to be positive, detect vanishing quantum
discord, induce the map of any joint unitary in affine form (linear images
plus shift), classify it via the Choi spectrum and positivity probing, and
search unitary families for positive-but-not-CP candidates.
"""

from .discord import (
    INDETERMINATE,
    NONZERO,
    VQD,
    DiscordVerdict,
    has_vqd,
    pinching_defect,
)
from .errors import (
    CancellationError,
    HermiticityError,
    InducedMapsError,
    NonSLError,
    NotPsdError,
    PreconditionTheoremError,
    PreconditionVqdError,
    ShapeError,
    SizeError,
    ValidationError,
)
from .linalg import (
    Spectrum,
    dagger,
    hadamard,
    hermitian_eigen,
    is_psd,
    partial_trace,
    tensor,
)
from .maps import (
    CP,
    NO_VIOLATION_FOUND,
    NOT_CP,
    NOT_CP_AFFINE,
    VIOLATED,
    CpVerdict,
    InducedMap,
    PositivityProbe,
    choi_matrix,
    induce,
    is_cp,
    kraus_from_choi,
    probe_positivity,
    validate_unitary,
)
from .presets import (
    bell_density,
    cnot,
    four_block_ensemble,
    random_coherent_block_ensemble,
    random_density,
    random_pure_density,
    random_vqd_ensemble,
)
from .search import (
    CLASS_AFFINE,
    CLASS_CANDIDATE,
    CLASS_CP,
    CLASS_NON_POSITIVE,
    GENERATOR,
    HAAR,
    CandidateReport,
    SearchConfig,
    classification_label,
    classify,
    filter_candidates,
    generator_unitary,
    haar_unitary,
    hunt,
    scan,
)
from .states import (
    CANCELLATION,
    NON_SL,
    ROUTE_BLOCK,
    ROUTE_NONE,
    ROUTE_RESCALED,
    SL,
    ConditionReport,
    EnsembleTerm,
    PairClass,
    RescaledSet,
    SeparableEnsemble,
    SLDecomposition,
    assemble,
    check_condition,
    classify_sl,
    component_images,
    decompose_blocks,
    reassemble,
    rescaled_matrices,
    validate_density_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "CANCELLATION",
    "CLASS_AFFINE",
    "CLASS_CANDIDATE",
    "CLASS_CP",
    "CLASS_NON_POSITIVE",
    "CP",
    "CancellationError",
    "CandidateReport",
    "ConditionReport",
    "CpVerdict",
    "DiscordVerdict",
    "EnsembleTerm",
    "GENERATOR",
    "HAAR",
    "HermiticityError",
    "INDETERMINATE",
    "InducedMap",
    "InducedMapsError",
    "NONZERO",
    "NON_SL",
    "NOT_CP",
    "NOT_CP_AFFINE",
    "NO_VIOLATION_FOUND",
    "NonSLError",
    "NotPsdError",
    "PairClass",
    "PositivityProbe",
    "PreconditionTheoremError",
    "PreconditionVqdError",
    "ROUTE_BLOCK",
    "ROUTE_NONE",
    "ROUTE_RESCALED",
    "RescaledSet",
    "SL",
    "SLDecomposition",
    "SearchConfig",
    "SeparableEnsemble",
    "ShapeError",
    "SizeError",
    "Spectrum",
    "VIOLATED",
    "VQD",
    "ValidationError",
    "__version__",
    "assemble",
    "bell_density",
    "check_condition",
    "choi_matrix",
    "classification_label",
    "classify",
    "classify_sl",
    "cnot",
    "component_images",
    "dagger",
    "decompose_blocks",
    "filter_candidates",
    "four_block_ensemble",
    "generator_unitary",
    "haar_unitary",
    "hadamard",
    "has_vqd",
    "hermitian_eigen",
    "hunt",
    "induce",
    "is_cp",
    "is_psd",
    "kraus_from_choi",
    "partial_trace",
    "pinching_defect",
    "probe_positivity",
    "random_coherent_block_ensemble",
    "random_density",
    "random_pure_density",
    "random_vqd_ensemble",
    "reassemble",
    "rescaled_matrices",
    "scan",
    "tensor",
    "validate_density_matrix",
    "validate_unitary",
]
