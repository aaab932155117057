"""Finite discrete measure spaces and weighted p-th power functionals.

A measure space here is a finite list of strictly positive point masses; a
simple function is a list of real values aligned to it.  The power functional
``sum_i w_i |f_i|^p`` and its 1/p-th root are defined for every real p != 0.
For p < 0 the root is a decreasing transform of the functional, not a norm;
the contract is the formula.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    MisalignedFunction,
    NegativeInput,
    NonpositiveValueForNegativeP,
    ZeroExponent,
    ZeroSumPoint,
)
from .precision import high_precision, mp_workdps

# |p| above this threshold switches to per-term log-domain evaluation, which
# stays finite for |p| up to several hundred on double precision.
LOG_DOMAIN_THRESHOLD = 8.0


def _as_readonly(values: Sequence[float]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence of reals")
    arr.setflags(write=False)
    return arr


class MeasureSpace:
    """Finite list of strictly positive, finite point masses."""

    __slots__ = ("weights",)

    def __init__(self, weights: Sequence[float]):
        arr = _as_readonly(weights)
        if arr.size < 1:
            raise ValueError("a measure space needs at least one point")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError("all point masses must be strictly positive and finite")
        self.weights = arr

    def __len__(self) -> int:
        return int(self.weights.size)

    def total(self) -> float:
        return float(self.weights.sum())

    def __repr__(self) -> str:
        return f"MeasureSpace({self.weights.tolist()!r})"


class SimpleFunction:
    """Real values aligned to the points of a MeasureSpace."""

    __slots__ = ("values",)

    def __init__(self, values: Sequence[float]):
        arr = _as_readonly(values)
        if not np.all(np.isfinite(arr)):
            raise ValueError("function values must be finite")
        self.values = arr

    def __len__(self) -> int:
        return int(self.values.size)

    def __repr__(self) -> str:
        return f"SimpleFunction({self.values.tolist()!r})"


class RegionKind(enum.Enum):
    """Direction of the sharpened inequality as a function of the exponent."""

    FORWARD = "forward"          # p in (0,1) or (2,inf): lhs <= rhs
    REVERSE = "reverse"          # p in (-inf,0) or (1,2): lhs >= rhs
    BOUNDARY_P1 = "boundary_p1"  # p = 1: identity for nonnegative inputs
    BOUNDARY_P2 = "boundary_p2"  # p = 2: identity
    UNDEFINED_P0 = "undefined_p0"


@dataclass(frozen=True)
class ExponentRegion:
    p: float
    region: RegionKind

    @classmethod
    def from_p(cls, p: float) -> "ExponentRegion":
        p = float(p)
        if p == 0.0:
            kind = RegionKind.UNDEFINED_P0
        elif p == 1.0:
            kind = RegionKind.BOUNDARY_P1
        elif p == 2.0:
            kind = RegionKind.BOUNDARY_P2
        elif 0.0 < p < 1.0 or p > 2.0:
            kind = RegionKind.FORWARD
        else:
            kind = RegionKind.REVERSE
        return cls(p=p, region=kind)


def _check_aligned(f: SimpleFunction, space: MeasureSpace) -> None:
    if len(f) != len(space):
        raise MisalignedFunction(
            f"function has {len(f)} values but the space has {len(space)} points"
        )


def _check_exponent(p: float) -> float:
    p = float(p)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    return p


def _check_positive_for_negative_p(values: np.ndarray, p: float) -> None:
    if p < 0.0 and np.any(values <= 0.0):
        raise NonpositiveValueForNegativeP(
            "p < 0 requires strictly positive function values"
        )


def _log_terms(values: np.ndarray, weights: np.ndarray, p: float) -> np.ndarray:
    """log(w_i) + p*log|f_i| with -inf at zeros (only reachable for p > 0)."""
    with np.errstate(divide="ignore"):
        return np.log(weights) + p * np.log(np.abs(values))


def _logsumexp(logs: np.ndarray) -> float:
    m = float(logs.max())
    if m == -math.inf:
        return -math.inf
    return m + math.log(np.exp(logs - m).sum())


def _lp_log_functional(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    """log of the power functional, or -inf when it vanishes."""
    return _logsumexp(_log_terms(values, weights, p))


def _lp_functional_float(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    if abs(p) > LOG_DOMAIN_THRESHOLD:
        ls = _lp_log_functional(values, weights, p)
        return 0.0 if ls == -math.inf else math.exp(ls)
    return float(np.sum(weights * np.abs(values) ** p))


def _lp_functional_mp(values: np.ndarray, weights: np.ndarray, p: float):
    with mp_workdps() as mp:
        pm = mp.mpf(p)
        return mp.fsum(
            mp.mpf(w) * mp.mpf(abs(v)) ** pm for v, w in zip(values, weights)
        )


def lp_functional(f: SimpleFunction, space: MeasureSpace, p: float) -> float:
    """sum_i w_i |f_i|^p for real p != 0."""
    p = _check_exponent(p)
    _check_aligned(f, space)
    _check_positive_for_negative_p(f.values, p)
    if high_precision():
        return _lp_functional_mp(f.values, space.weights, p)
    return _lp_functional_float(f.values, space.weights, p)


def lp_norm(f: SimpleFunction, space: MeasureSpace, p: float) -> float:
    """The 1/p-th root of lp_functional; a norm only for p >= 1."""
    p = _check_exponent(p)
    _check_aligned(f, space)
    _check_positive_for_negative_p(f.values, p)
    if high_precision():
        with mp_workdps() as mp:
            return _lp_functional_mp(f.values, space.weights, p) ** (1 / mp.mpf(p))
    if abs(p) > LOG_DOMAIN_THRESHOLD:
        ls = _lp_log_functional(f.values, space.weights, p)
        return 0.0 if ls == -math.inf else math.exp(ls / p)
    total = _lp_functional_float(f.values, space.weights, p)
    return total ** (1.0 / p)


def overlap_norm(
    f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float
) -> float:
    """Power-(p/2) root norm of the pointwise product fg.

    This is the coupling quantity measuring how far f and g are from having
    disjoint supports: it is 0 exactly when fg vanishes identically (p > 0).
    """
    p = _check_exponent(p)
    _check_aligned(f, space)
    _check_aligned(g, space)
    prod = f.values * g.values
    if p > 0.0 and not np.any(prod != 0.0):
        return 0.0
    return lp_norm(SimpleFunction(prod), space, p / 2.0)


def reduce_to_probability(
    f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float
) -> tuple[SimpleFunction, MeasureSpace]:
    """Push the measure through (f+g)^p and normalize.

    Returns the ratio function alpha = f/(f+g) together with the probability
    space carrying weights w_i (f_i+g_i)^p / sum_j w_j (f_j+g_j)^p.  This turns
    the two-function inequality into a one-function statement on a probability
    space.
    """
    p = _check_exponent(p)
    _check_aligned(f, space)
    _check_aligned(g, space)
    if np.any(f.values < 0.0) or np.any(g.values < 0.0):
        raise NegativeInput("reduction requires f, g >= 0")
    s = f.values + g.values
    if np.any(s <= 0.0):
        raise ZeroSumPoint("f + g must be strictly positive at every point")
    alpha = SimpleFunction(f.values / s)
    logs = np.log(space.weights) + p * np.log(s)
    logs -= _logsumexp(logs)
    w = np.exp(logs)
    w /= w.sum()
    return alpha, MeasureSpace(w)
