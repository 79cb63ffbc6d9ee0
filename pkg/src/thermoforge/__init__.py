"""Exact thermo-majorization, thermal-operation polytopes and swap protocols."""

from .core import (
    ConvexProtocol,
    Dist,
    DSwap,
    Perm,
    StochMatrix,
    SwapSeq,
    TTransform,
    apply,
    compose,
    conjugate_to_sorted,
    dswap_matrix,
    is_d_stochastic,
    is_quasi_uniform,
    protocol_matrix,
    sorting_perm,
    total_variation,
    ttransform_matrix,
    two_level_ratio,
)
from .errors import (
    CapExceeded,
    DimensionMismatch,
    FactorialBlowup,
    FixtureSelfCheckFailed,
    IndexOutOfRange,
    InternalInfeasible,
    LambdaOutOfRange,
    NegativeEntry,
    NotAnExtreme,
    NotDStochastic,
    NotMajorized,
    NotNormalized,
    NotPositive,
    NotStochastic,
    OutOfDomain,
    Rejected,
    ThermoError,
    TooSmall,
    UnsupportedEquilibrium,
)
from .eto import (
    LengthOneWitness,
    emulate_thermal_op,
    extreme_to_swaps,
    is_length_one,
    length_one_membership,
    support_monotone_check,
)
from .fixtures import Fixture, get_fixture, load_fixtures
from .lpdecomp import ConvexWitness, convex_decompose
from .majorization import (
    LorenzCurve,
    cone_extremes,
    cone_point,
    curve_at,
    d_permutation,
    in_cone,
    lorenz_curve,
    thermo_majorizes,
)
from .polytope import enumerate_extremes, jurkat_ryser, validate_extreme_structure
from .walks import WalkSpec, classify_walk, is_eto_walk, iterate_walk, lazy_walk, simple_walk
from .weto import (
    TPath,
    emulate_cone_extreme,
    reach_strong,
    reach_weak,
    reach_weak_uniform,
    search_canonical_path,
)

__version__ = "0.1.0"

__all__ = [
    "apply",
    "CapExceeded",
    "classify_walk",
    "compose",
    "cone_extremes",
    "cone_point",
    "conjugate_to_sorted",
    "convex_decompose",
    "ConvexProtocol",
    "ConvexWitness",
    "curve_at",
    "d_permutation",
    "DimensionMismatch",
    "Dist",
    "DSwap",
    "dswap_matrix",
    "emulate_cone_extreme",
    "emulate_thermal_op",
    "enumerate_extremes",
    "extreme_to_swaps",
    "FactorialBlowup",
    "Fixture",
    "FixtureSelfCheckFailed",
    "get_fixture",
    "in_cone",
    "IndexOutOfRange",
    "InternalInfeasible",
    "is_d_stochastic",
    "is_eto_walk",
    "is_length_one",
    "is_quasi_uniform",
    "iterate_walk",
    "jurkat_ryser",
    "LambdaOutOfRange",
    "lazy_walk",
    "length_one_membership",
    "LengthOneWitness",
    "load_fixtures",
    "lorenz_curve",
    "LorenzCurve",
    "NegativeEntry",
    "NotAnExtreme",
    "NotDStochastic",
    "NotMajorized",
    "NotNormalized",
    "NotPositive",
    "NotStochastic",
    "OutOfDomain",
    "Perm",
    "protocol_matrix",
    "reach_strong",
    "reach_weak",
    "reach_weak_uniform",
    "Rejected",
    "search_canonical_path",
    "simple_walk",
    "sorting_perm",
    "StochMatrix",
    "support_monotone_check",
    "SwapSeq",
    "thermo_majorizes",
    "ThermoError",
    "TooSmall",
    "total_variation",
    "TPath",
    "TTransform",
    "ttransform_matrix",
    "two_level_ratio",
    "UnsupportedEquilibrium",
    "validate_extreme_structure",
    "WalkSpec",
]
