"""Both sides of the sharpened two-function inequality and its audits.

For f, g >= 0 on a finite discrete measure space the sharpened bound reads

    int |f+g|^p  <=  (1 + gamma_tilde)^(p-1) * int (|f|^p + |g|^p),

with the coupling ratio gamma_tilde = ||fg||_{p/2} * ((||f||_p^p +
||g||_p^p)/2)^(-2/p).  The direction holds for p in (0,1] u [2,inf) and
reverses for p in (-inf,0) u (1,2); p = 1 (nonnegative inputs) and p = 2 are
identities.  The classical interpolation uses the larger ratio
gamma = ||fg||_{p/2} / (||f||_p ||g||_p) and is dominated for p >= 2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .audit import h_of_a, invert_b
from .errors import (
    ExponentOutOfRange,
    NegativeInput,
    NonpositiveValueForNegativeP,
    NotProbabilitySpace,
    OutOfRangeAlpha,
    ZeroExponent,
    ZeroNorm,
    ZeroSumPoint,
)
from .measure import (
    ExponentRegion,
    MeasureSpace,
    RegionKind,
    SimpleFunction,
    lp_functional,
    lp_norm,
    overlap_norm,
)

RELATIVE_SLACK = 1e-9


class EqualityKind(enum.Enum):
    DISJOINT_SUPPORT = "disjoint_support"
    EQUAL_FUNCTIONS = "equal_functions"
    MAX_RATIO_CONSTANT = "max_ratio_constant"
    NONE = "none"


class JensenDirection(enum.Enum):
    MEAN_AT_LEAST = "mean_at_least"
    MEAN_AT_MOST = "mean_at_most"
    EQUALITY = "equality"


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    carbery_rhs: float | None
    gamma: float
    gamma_tilde: float
    region: ExponentRegion
    satisfied: bool
    slack: float


@dataclass(frozen=True)
class EqualityCase:
    kind: EqualityKind
    constant: float | None


@dataclass(frozen=True)
class JensenReport:
    B: float
    mean_H: float
    H_of_B: float
    direction_expected: JensenDirection
    satisfied: bool


def _validate_pair(f: SimpleFunction, g: SimpleFunction, p: float) -> None:
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if np.any(f.values < 0.0) or np.any(g.values < 0.0):
        raise NegativeInput("f and g must be nonnegative")
    if 1.0 < p < 2.0 and (np.any(f.values == 0.0) or np.any(g.values == 0.0)):
        raise NonpositiveValueForNegativeP(
            "the reverse range 1 < p < 2 requires strictly positive values"
        )


def gamma_pair(
    f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float
) -> tuple[float, float]:
    """Both coupling ratios (gamma, gamma_tilde); gamma_tilde <= gamma for p > 0."""
    p = float(p)
    _validate_pair(f, g, p)
    nf = lp_norm(f, space, p)
    ng = lp_norm(g, space, p)
    if nf == 0.0 or ng == 0.0:
        raise ZeroNorm("gamma needs nonzero norms of both functions")
    ov = overlap_norm(f, g, space, p)
    S = lp_functional(f, space, p) + lp_functional(g, space, p)
    gamma = ov / (nf * ng)
    gamma_tilde = ov * (S / 2.0) ** (-2.0 / p)
    return gamma, gamma_tilde


def main_sides(
    f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float
) -> InequalityReport:
    """Evaluate both sides of the sharpened inequality and check its direction.

    ``carbery_rhs`` (the bound built from gamma) is populated only when both
    norms are nonzero; otherwise gamma is reported as NaN.
    """
    p = float(p)
    _validate_pair(f, g, p)
    fg_sum = SimpleFunction(f.values + g.values)
    lhs = lp_functional(fg_sum, space, p)
    F = lp_functional(f, space, p)
    G = lp_functional(g, space, p)
    S = F + G
    if S == 0.0:
        raise ZeroNorm("f and g cannot both vanish identically")
    ov = overlap_norm(f, g, space, p)
    gamma_tilde = ov * (S / 2.0) ** (-2.0 / p)
    rhs = (1.0 + gamma_tilde) ** (p - 1.0) * S

    if F > 0.0 and G > 0.0:
        gamma = ov / (lp_norm(f, space, p) * lp_norm(g, space, p))
        carbery_rhs = (1.0 + gamma) ** (p - 1.0) * S
    else:
        gamma = math.nan
        carbery_rhs = None

    region = ExponentRegion.from_p(p)
    tol = RELATIVE_SLACK * max(abs(lhs), abs(rhs))
    if region.region is RegionKind.FORWARD:
        satisfied = lhs <= rhs + tol
        slack = rhs - lhs
    elif region.region is RegionKind.REVERSE:
        satisfied = lhs >= rhs - tol
        slack = lhs - rhs
    else:  # p = 1 or p = 2: identities
        satisfied = abs(lhs - rhs) <= tol
        slack = rhs - lhs
    return InequalityReport(
        lhs=lhs,
        rhs=rhs,
        carbery_rhs=carbery_rhs,
        gamma=gamma,
        gamma_tilde=gamma_tilde,
        region=region,
        satisfied=bool(satisfied),
        slack=slack,
    )


def detect_equality_case(
    f: SimpleFunction,
    g: SimpleFunction,
    space: MeasureSpace,
    tol: float = 1e-10,
) -> EqualityCase:
    """Classify the structure that makes the sharpened bound an equality.

    Checked in order: essentially disjoint supports, equal functions, and
    constant max{alpha, 1-alpha} (the two functions are pointwise a constant
    split of their sum, up to swapping roles).
    """
    if np.any(f.values < 0.0) or np.any(g.values < 0.0):
        raise NegativeInput("f and g must be nonnegative")
    s = f.values + g.values
    if np.any(s <= 0.0):
        raise ZeroSumPoint("f + g must be strictly positive at every point")
    if np.all(f.values * g.values <= tol * s * s):
        return EqualityCase(kind=EqualityKind.DISJOINT_SUPPORT, constant=None)
    if np.all(np.abs(f.values - g.values) <= tol * s):
        return EqualityCase(kind=EqualityKind.EQUAL_FUNCTIONS, constant=None)
    alpha = f.values / s
    m = np.maximum(alpha, 1.0 - alpha)
    if m.max() - m.min() <= tol:
        return EqualityCase(
            kind=EqualityKind.MAX_RATIO_CONSTANT, constant=float(m.mean())
        )
    return EqualityCase(kind=EqualityKind.NONE, constant=None)


def jensen_audit(
    alpha: SimpleFunction, prob_space: MeasureSpace, p: float
) -> JensenReport:
    """Check the averaging step that reduces the inequality to constant ratios.

    With b(a) = a^p + (1-a)^p and H the coupling value expressed as a function
    of b, the mean of H(b(alpha)) over a probability space lies above H of the
    mean for p > 2 (H convex) and below it for p < 2 (H concave).
    """
    p = float(p)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if p in (1.0, 2.0):
        raise ExponentOutOfRange("the averaging audit needs p outside {1, 2}")
    w = prob_space.weights
    if abs(float(w.sum()) - 1.0) > 1e-12:
        raise NotProbabilitySpace("weights must sum to 1 within 1e-12")
    a = alpha.values
    if np.any(a < 0.0) or np.any(a > 1.0):
        raise OutOfRangeAlpha("alpha must lie in [0, 1] pointwise")
    if p < 0.0 and (np.any(a == 0.0) or np.any(a == 1.0)):
        raise OutOfRangeAlpha("p < 0 requires alpha strictly inside (0, 1)")

    mean_H = float(np.sum(w * (a * (1.0 - a)) ** (p / 2.0)))
    B = float(np.sum(w * (a ** p + (1.0 - a) ** p)))
    a_star = invert_b(B, p)
    H_of_B = h_of_a(a_star, p)

    direction = (
        JensenDirection.MEAN_AT_LEAST if p > 2.0 else JensenDirection.MEAN_AT_MOST
    )
    tol = 1e-10 * max(1.0, abs(mean_H), abs(H_of_B))
    if direction is JensenDirection.MEAN_AT_LEAST:
        satisfied = mean_H >= H_of_B - tol
    else:
        satisfied = mean_H <= H_of_B + tol
    return JensenReport(
        B=B,
        mean_H=mean_H,
        H_of_B=H_of_B,
        direction_expected=direction,
        satisfied=bool(satisfied),
    )
