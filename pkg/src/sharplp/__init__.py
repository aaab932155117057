"""sharplp: numerical verification of sharpened p-th power triangle bounds.

The package evaluates both sides of the sharpened two-function inequality on
finite discrete measure spaces, the constant-ratio factor and its power-mean
restatements, the convexity and sign-change structure behind the proof, the
exponent-doubling step, and the non-commutative trace analog for positive
matrices.
"""
from .audit import (
    ChainContext,
    ChainReport,
    Crossing,
    HyperbolicPoint,
    PatternKind,
    SignChangePattern,
    audit_chain,
    b_of_a,
    chain_eval,
    curvature,
    expected_pattern,
    fraction_bound,
    h_of_a,
    hyperbolic_point,
    invert_b,
    sign_changes,
    tanh_gap,
)
from .doubling import (
    DoublingLink,
    DoublingReport,
    InequalityViolation,
    P4Report,
    direct_p4,
    doubling_step,
    psi,
)
from .inequality import (
    EqualityCase,
    EqualityKind,
    InequalityReport,
    JensenDirection,
    JensenReport,
    detect_equality_case,
    gamma_pair,
    jensen_audit,
    main_sides,
)
from .means import (
    AGMChain,
    SharpnessResult,
    agm_chain,
    constant_factor,
    eta_family,
    g_rp,
    power_mean,
    sharpness_probe,
)
from .measure import (
    ExponentRegion,
    MeasureSpace,
    RegionKind,
    SimpleFunction,
    lp_functional,
    lp_norm,
    overlap_norm,
    reduce_to_probability,
)
from .schatten import (
    PSDMatrix,
    SchattenDoublingReport,
    SchattenReport,
    lieb_thirring_check,
    mixed_trace,
    random_psd,
    schatten_doubling,
    schatten_norm,
    schatten_verify,
)

__version__ = "0.1.0"

__all__ = [
    "AGMChain",
    "ChainContext",
    "ChainReport",
    "Crossing",
    "DoublingLink",
    "DoublingReport",
    "EqualityCase",
    "EqualityKind",
    "ExponentRegion",
    "HyperbolicPoint",
    "InequalityReport",
    "InequalityViolation",
    "JensenDirection",
    "JensenReport",
    "MeasureSpace",
    "P4Report",
    "PatternKind",
    "PSDMatrix",
    "RegionKind",
    "SchattenDoublingReport",
    "SchattenReport",
    "SharpnessResult",
    "SignChangePattern",
    "SimpleFunction",
    "agm_chain",
    "audit_chain",
    "b_of_a",
    "chain_eval",
    "constant_factor",
    "curvature",
    "detect_equality_case",
    "direct_p4",
    "doubling_step",
    "eta_family",
    "expected_pattern",
    "fraction_bound",
    "g_rp",
    "gamma_pair",
    "h_of_a",
    "hyperbolic_point",
    "invert_b",
    "jensen_audit",
    "lieb_thirring_check",
    "lp_functional",
    "lp_norm",
    "main_sides",
    "mixed_trace",
    "overlap_norm",
    "power_mean",
    "psi",
    "random_psd",
    "reduce_to_probability",
    "schatten_doubling",
    "schatten_norm",
    "schatten_verify",
    "sharpness_probe",
    "sign_changes",
    "tanh_gap",
]
