"""Two-argument power means, the constant-ratio factor, and exponent sharpness.

The central object is ``constant_factor``: the scalar right-hand side obtained
when the ratio alpha = f/(f+g) is constant,

    (1 + R^q)^(p-1) * (alpha^p + (1-alpha)^p),
    R = 2 alpha^(p/2) (1-alpha)^(p/2) / (alpha^p + (1-alpha)^p),

which is >= 1 on the forward exponent ranges and <= 1 on the reverse ranges,
with the natural exponent q = 2/p.  ``sharpness_probe`` demonstrates that no
power other than 2/p works, by measuring the first-order slope of the
substituted gap function near its flat point and searching for sign witnesses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EndpointWithNegativeP,
    ExponentOutOfRange,
    NonpositiveArgument,
    OutOfDomain,
    ZeroExponent,
)
from .precision import high_precision, logaddexp, logcosh, mp_workdps

# Sign witnesses are searched on (0, 0.1] with log-spaced samples, then the
# extremal violation is polished by golden-section; the flat point sits at
# s = 0, so violations concentrate near the left end.
_WITNESS_RANGE = (1e-6, 0.1)
_WITNESS_POINTS = 200
_WITNESS_THRESHOLD = 1e-12


@dataclass(frozen=True)
class AGMChain:
    """The four-term refinement chain between arithmetic and geometric means."""

    A: float
    G: float
    Mp: float
    Mp_dual: float
    terms: tuple[float, float, float, float]


@dataclass(frozen=True)
class SharpnessResult:
    slope_predicted: float
    slope_measured: float
    witness_s: float | None


def power_mean(x: float, y: float, q: float) -> float:
    """((x^q + y^q)/2)^(1/q) for q != 0, geometric mean at q = 0.

    Evaluated as exp(mid + logcosh(q*d)/q) with mid, d the mean and half-gap
    of the logs, which is stable for every q and never overflows.
    """
    if x <= 0.0 or y <= 0.0:
        raise NonpositiveArgument("power means need x, y > 0")
    if high_precision():
        with mp_workdps() as mp:
            xm, ym, qm = mp.mpf(x), mp.mpf(y), mp.mpf(q)
            if q == 0.0:
                return mp.sqrt(xm * ym)
            return ((xm ** qm + ym ** qm) / 2) ** (1 / qm)
    lx, ly = math.log(x), math.log(y)
    mid, d = 0.5 * (lx + ly), 0.5 * (lx - ly)
    if q == 0.0:
        return math.exp(mid)
    return math.exp(mid + logcosh(q * d) / q)


def constant_factor(alpha: float, p: float, q_exponent: float) -> float:
    """(1 + R^q)^(p-1) * (alpha^p + (1-alpha)^p) for alpha in [0, 1].

    ``q_exponent = 2/p`` gives the factor of the sharpened inequality at
    constant ratio.  Endpoints alpha in {0, 1} return the continuity limit 1
    for p > 0 and are rejected for p < 0.
    """
    p = float(p)
    alpha = float(alpha)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if not 0.0 <= alpha <= 1.0:
        raise OutOfDomain(f"alpha must lie in [0, 1], got {alpha}")
    if alpha in (0.0, 1.0):
        if p < 0.0:
            raise EndpointWithNegativeP("alpha in {0,1} is not admissible for p < 0")
        return 1.0
    if high_precision():
        with mp_workdps() as mp:
            am, pm, qm = mp.mpf(alpha), mp.mpf(p), mp.mpf(q_exponent)
            b = am ** pm + (1 - am) ** pm
            R = 2 * am ** (pm / 2) * (1 - am) ** (pm / 2) / b
            return (1 + R ** qm) ** (pm - 1) * b
    la, l1a = math.log(alpha), math.log1p(-alpha)
    log_b = logaddexp(p * la, p * l1a)
    log_R = math.log(2.0) + 0.5 * p * (la + l1a) - log_b  # R <= 1 always
    log_factor = (p - 1.0) * math.log1p(math.exp(q_exponent * log_R))
    return math.exp(log_factor + log_b)


def agm_chain(x: float, y: float, p: float) -> AGMChain:
    """Refinement chain 1-(A/Mp)^p' >= (1-(G/Mp)^2)/2 >= (1-(G/Mp')^2)/2 >= 1-(A/Mp')^p.

    Valid for x, y > 0 and p > 2, with p' = p/(p-1); all four terms are
    nonnegative and vanish together exactly at x = y.
    """
    if x <= 0.0 or y <= 0.0:
        raise NonpositiveArgument("chain needs x, y > 0")
    if not p > 2.0:
        raise ExponentOutOfRange("chain requires p > 2")
    p_dual = p / (p - 1.0)
    A = 0.5 * (x + y)
    G = math.sqrt(x * y)
    Mp = power_mean(x, y, p)
    Mp_dual = power_mean(x, y, p_dual)
    terms = (
        1.0 - (A / Mp) ** p_dual,
        0.5 * (1.0 - (G / Mp) ** 2),
        0.5 * (1.0 - (G / Mp_dual) ** 2),
        1.0 - (A / Mp_dual) ** p,
    )
    return AGMChain(A=A, G=G, Mp=Mp, Mp_dual=Mp_dual, terms=terms)


# Exponents within this distance of 1 are routed to the explicit limit
# formula; the generic exponent 1/(p-1) is singular there.
_P1_SWITCH = 1e-6


def _f1_limit(s: float) -> float:
    """Explicit value of the gap function at p = 1."""
    rs = math.sqrt(s)
    return (
        (2.0 - s)
        * (1.0 - rs) ** (0.5 * (1.0 - rs))
        * (1.0 + rs) ** (0.5 * (1.0 + rs))
        - 2.0
    )


def _log_eta(s: float, p: float) -> float:
    rs = math.sqrt(s)
    return logaddexp(p * math.log1p(rs), p * math.log1p(-rs)) - math.log(2.0)


def eta_family(s: float, p: float) -> tuple[float, float]:
    """Half-sum eta(s) = ((1+sqrt(s))^p + (1-sqrt(s))^p)/2 and the gap function.

    The gap eta^(1/(p-1)) + (1-s) eta^((2-p)/(p(p-1))) - 2 is >= 0 exactly on
    p < 0 or p > 2 and <= 0 on 0 < p < 2; near p = 1 the explicit limit
    formula is used.
    """
    s = float(s)
    p = float(p)
    if not 0.0 <= s < 1.0:
        raise OutOfDomain(f"s must lie in [0, 1), got {s}")
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if high_precision():
        with mp_workdps() as mp:
            sm, pm = mp.mpf(s), mp.mpf(p)
            rs = mp.sqrt(sm)
            eta = ((1 + rs) ** pm + (1 - rs) ** pm) / 2
            if abs(p - 1.0) <= _P1_SWITCH:
                f = (2 - sm) * (1 - rs) ** ((1 - rs) / 2) * (1 + rs) ** ((1 + rs) / 2) - 2
            else:
                f = eta ** (1 / (pm - 1)) + (1 - sm) * eta ** ((2 - pm) / (pm * (pm - 1))) - 2
            return eta, f
    log_eta = _log_eta(s, p)
    eta = math.exp(log_eta)
    if abs(p - 1.0) <= _P1_SWITCH:
        return eta, _f1_limit(s)
    f = (
        math.exp(log_eta / (p - 1.0))
        + math.exp(math.log1p(-s) + log_eta * (2.0 - p) / (p * (p - 1.0)))
        - 2.0
    )
    return eta, f


def g_rp(s: float, r: float, p: float) -> float:
    """Gap function with the coupling power replaced by r times the natural one:

        eta^(1/(p-1)) * (1 + ((1-s)/eta^(2/p))^r) - 2.

    r = 1 recovers the gap of ``eta_family``; near s = 0 the leading behavior
    is p(1-r)s, which drives the sharpness argument.
    """
    s = float(s)
    p = float(p)
    if not 0.0 <= s < 1.0:
        raise OutOfDomain(f"s must lie in [0, 1), got {s}")
    if p == 0.0 or p == 1.0:
        raise ZeroExponent("p in {0, 1} is not admissible here")
    if high_precision():
        with mp_workdps() as mp:
            sm, rm, pm = mp.mpf(s), mp.mpf(r), mp.mpf(p)
            rs = mp.sqrt(sm)
            eta = ((1 + rs) ** pm + (1 - rs) ** pm) / 2
            return eta ** (1 / (pm - 1)) * (1 + ((1 - sm) / eta ** (2 / pm)) ** rm) - 2
    log_eta = _log_eta(s, p)
    inner = r * (math.log1p(-s) - (2.0 / p) * log_eta)
    return math.exp(log_eta / (p - 1.0) + math.log1p(math.exp(inner))) - 2.0


def _claimed_sign(p: float) -> int:
    """+1 where the gap is claimed nonnegative, -1 where nonpositive."""
    return 1 if (p > 2.0 or p < 0.0) else -1


def sharpness_probe(p: float, r: float) -> SharpnessResult:
    """Measure the slope of g_rp at s = 0 and search for a sign witness.

    The slope is Richardson-extrapolated from steps 1e-6 and 5e-7 and should
    match p(1-r).  A witness is a point s where the region's claimed sign of
    the gap fails by more than 1e-12; one exists exactly when the coupling
    power moves in the pinching direction (r > 1 for p > 2, r < 1 for p < 0
    or 0 < p < 2).
    """
    p = float(p)
    if p in (0.0, 1.0, 2.0):
        raise ExponentOutOfRange("sharpness is probed away from p in {0, 1, 2}")
    h = 1e-6
    d1 = g_rp(h, r, p) / h
    d2 = g_rp(0.5 * h, r, p) / (0.5 * h)
    slope_measured = 2.0 * d2 - d1
    slope_predicted = p * (1.0 - r)

    claimed = _claimed_sign(p)
    lo, hi = _WITNESS_RANGE
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), _WITNESS_POINTS))
    violation = lambda s: -claimed * g_rp(float(s), r, p)  # > 0 where claim fails
    vals = np.array([violation(s) for s in grid])
    worst = int(np.argmax(vals))
    witness = None
    if vals[worst] > _WITNESS_THRESHOLD:
        # polish the extremal violation between the neighbors of the best sample
        a = grid[max(worst - 1, 0)]
        b = grid[min(worst + 1, len(grid) - 1)]
        witness = _golden_max(violation, float(a), float(b))
        if violation(witness) <= _WITNESS_THRESHOLD:
            witness = float(grid[worst])
    return SharpnessResult(
        slope_predicted=slope_predicted,
        slope_measured=float(slope_measured),
        witness_s=witness,
    )


def _golden_max(fn, a: float, b: float, iters: int = 60) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = fn(x1)
    return 0.5 * (a + b)
