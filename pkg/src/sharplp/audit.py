"""Numerical audit of the convexity step and the auxiliary derivative chain.

Two layers are covered.  First, the reparametrized coupling function: with
b(a) = a^p + (1-a)^p and h(a) = (a(1-a))^(p/2), the map b -> H(b) = h(a(b)) is
strictly convex for p > 2 and strictly concave for p < 2 (p not 0 or 1).  Its
derivatives have closed forms under the substitution e^(2x) = a/(1-a), which
``hyperbolic_point`` evaluates.

Second, the scalar chain behind the constant-ratio inequality: after the
substitution t = ((1-alpha)/alpha)^p, c = 1/p, a ladder of auxiliary functions
(f, f', g, h, v, v', v'', v''', w, ...) reduces the claim to one-sign-change
statements on (0, 1).  ``sign_changes`` locates crossings on a grid with
bisection refinement, escalating to high precision where double precision
cannot certify a sign, and ``audit_chain`` compares the observed patterns
against the claimed ones.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy.ndimage import maximum_filter1d

from .errors import (
    DomainError,
    EndpointWithNegativeP,
    ExponentOutOfRange,
    NameRequiresC,
    OutOfDomain,
    SingularPoint,
    TargetOutOfRange,
    TooCoarse,
    ZeroExponent,
)
from .precision import high_precision, logaddexp, logcosh, mp_workdps

DEFAULT_DELTA = 1e-6
# Samples this close to either end of (0, 1) get their sign confirmed at high
# precision: several chain functions vanish to second or third order at t = 1,
# where double-precision evaluation is roundoff-dominated.
_EDGE_GUARD = 1e-3
# Crossings that fall below the truncated domain are refined down to here.
_LEFT_FLOOR = 1e-18
_ZERO_REL = 1e-13
_BRACKET_WIDTH = 1e-10


# ---------------------------------------------------------------------------
# coupling function b, h and the hyperbolic parametrization
# ---------------------------------------------------------------------------


def b_of_a(a: float, p: float) -> float:
    """b(a) = a^p + (1-a)^p on [0, 1] (endpoints give 1 for p > 0)."""
    a, p = float(a), float(p)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if not 0.0 <= a <= 1.0:
        raise OutOfDomain(f"a must lie in [0, 1], got {a}")
    if a in (0.0, 1.0):
        if p < 0.0:
            raise EndpointWithNegativeP("a in {0,1} is not admissible for p < 0")
        return 1.0
    if high_precision():
        with mp_workdps() as mp:
            am, pm = mp.mpf(a), mp.mpf(p)
            return am ** pm + (1 - am) ** pm
    return math.exp(logaddexp(p * math.log(a), p * math.log1p(-a)))


def h_of_a(a: float, p: float) -> float:
    """h(a) = (a(1-a))^(p/2) on [0, 1] (endpoints give 0 for p > 0)."""
    a, p = float(a), float(p)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if not 0.0 <= a <= 1.0:
        raise OutOfDomain(f"a must lie in [0, 1], got {a}")
    if a in (0.0, 1.0):
        if p < 0.0:
            raise EndpointWithNegativeP("a in {0,1} is not admissible for p < 0")
        return 0.0
    if high_precision():
        with mp_workdps() as mp:
            am, pm = mp.mpf(a), mp.mpf(p)
            return (am * (1 - am)) ** (pm / 2)
    return math.exp(0.5 * p * (math.log(a) + math.log1p(-a)))


def invert_b(b_target: float, p: float) -> float:
    """The unique a in [1/2, 1) (closed at 1 for the limit) with b(a) = b_target.

    b is monotone on [1/2, 1): increasing for p > 1 and p < 0, decreasing for
    0 < p < 1.  Bisection converges to |b(a) - b_target| <= 1e-14*max(1, b)
    wherever double precision can represent a preimage that accurately (b is
    steep near a = 1 for p < 0, where the nearest representable a is
    returned); for p < 0 the upper bracket expands toward 1 until it encloses
    the target.
    """
    b_target, p = float(b_target), float(p)
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")
    if p == 1.0:
        raise ExponentOutOfRange("b is identically 1 at p = 1; nothing to invert")
    tol = 1e-14 * max(1.0, abs(b_target))
    b_half = b_of_a(0.5, p)  # 2^(1-p), the symmetric extremum
    if b_target == b_half:
        return 0.5

    if p > 0.0:
        lo_val, hi_val = (b_half, 1.0) if p > 1.0 else (1.0, b_half)
        lo_b, hi_b = min(lo_val, hi_val), max(lo_val, hi_val)
        slack = 1e-9 * max(1.0, hi_b)
        if not lo_b - slack <= b_target <= hi_b + slack:
            raise TargetOutOfRange(
                f"b_target={b_target} outside attainable range [{lo_b}, {hi_b}]"
            )
        b_target = min(max(b_target, lo_b), hi_b)
        if b_target == 1.0 and p > 1.0:
            return 1.0
        if b_target == 1.0 and p < 1.0:
            return 1.0
        lo, hi = 0.5, 1.0 - 1e-16
        increasing = p > 1.0
    else:
        if b_target < b_half * (1.0 - 1e-12):
            raise TargetOutOfRange(
                f"b_target={b_target} below the minimum {b_half} for p={p}"
            )
        b_target = max(b_target, b_half)
        lo, hi = 0.5, 0.75
        while b_of_a(hi, p) < b_target:
            hi = 0.5 * (1.0 + hi)
            if 1.0 - hi < 1e-15:
                if b_of_a(hi, p) < b_target:
                    raise TargetOutOfRange(
                        f"b_target={b_target} needs a closer to 1 than double "
                        "precision can represent"
                    )
                break
        increasing = True

    a = 0.5 * (lo + hi)
    for _ in range(200):
        a = 0.5 * (lo + hi)
        val = b_of_a(a, p)
        if abs(val - b_target) <= tol or hi - lo <= 1e-17:
            break
        if (val < b_target) == increasing:
            lo = a
        else:
            hi = a
    return a


@dataclass(frozen=True)
class HyperbolicPoint:
    """Values and derivatives of b, h, H at the point e^(2x) = a/(1-a).

    The quotient fields are None at x = 0, where db/dx vanishes; use x > 0
    for curvature data.
    """

    x: float
    a: float
    b: float
    h: float
    db_dx: float
    dh_dx: float
    dH_db: float | None
    ddx_dH_db: float | None
    d2H_db2: float | None


def _logsinh(u: float) -> float:
    """log(sinh(u)) for u > 0, stable for large u."""
    return u + math.log1p(-math.exp(-2.0 * u)) - math.log(2.0)


def hyperbolic_point(x: float, p: float) -> HyperbolicPoint:
    """Evaluate the closed-form derivative chain of H at parameter x >= 0."""
    x, p = float(x), float(p)
    if x < 0.0:
        raise OutOfDomain("x must be >= 0 (the parametrization is symmetric)")
    if p == 1.0:
        raise SingularPoint("p = 1 makes the derivative quotients identically singular")
    if p == 0.0:
        raise ZeroExponent("p = 0 is not admissible")

    if high_precision():
        return _hyperbolic_point_mp(x, p)

    a = 1.0 / (1.0 + math.exp(-2.0 * x))
    log_2cosh = logcosh(x) + math.log(2.0)
    h = math.exp(-p * log_2cosh)
    b = math.exp(math.log(2.0) + logcosh(p * x) - p * log_2cosh)
    dh_dx = -p * math.tanh(x) * h

    if x == 0.0:
        return HyperbolicPoint(
            x=x, a=a, b=b, h=h, db_dx=0.0, dh_dx=0.0,
            dH_db=None, ddx_dH_db=None, d2H_db2=None,
        )

    u = abs(p - 1.0) * x
    sign_s = 1.0 if p > 1.0 else -1.0  # sign of sinh((p-1)x) for x > 0
    log_db = (
        (1.0 - p) * math.log(2.0)
        + math.log(abs(p))
        + _logsinh(u)
        - (p + 1.0) * logcosh(x)
    )
    db_dx = math.copysign(math.exp(log_db), p * sign_s)

    dH_db = -math.copysign(
        math.exp(_logsinh(x) - math.log(2.0) - _logsinh(u)), sign_s
    )

    gap = (p - 1.0) * math.tanh(x) - math.tanh((p - 1.0) * x)
    # sinh((p-1)x) * tanh((p-1)x) = sinh(u) * tanh(u) > 0
    log_den = math.log(2.0) + _logsinh(u) + math.log(math.tanh(u))
    ddx = math.copysign(
        math.exp(logcosh(x) + math.log(abs(gap)) - log_den), gap
    ) if gap != 0.0 else 0.0

    d2 = ddx / db_dx
    return HyperbolicPoint(
        x=x, a=a, b=b, h=h, db_dx=db_dx, dh_dx=dh_dx,
        dH_db=dH_db, ddx_dH_db=ddx, d2H_db2=d2,
    )


def _hyperbolic_point_mp(x: float, p: float) -> HyperbolicPoint:
    with mp_workdps() as mp:
        xm, pm = mp.mpf(x), mp.mpf(p)
        a = mp.e ** (2 * xm) / (1 + mp.e ** (2 * xm))
        h = (2 * mp.cosh(xm)) ** (-pm)
        b = 2 * mp.cosh(pm * xm) * h
        dh = -pm * mp.tanh(xm) * h
        if x == 0.0:
            return HyperbolicPoint(
                x=x, a=a, b=b, h=h, db_dx=mp.mpf(0), dh_dx=mp.mpf(0),
                dH_db=None, ddx_dH_db=None, d2H_db2=None,
            )
        db = 2 ** (1 - pm) * pm * mp.sinh((pm - 1) * xm) / mp.cosh(xm) ** (pm + 1)
        dHdb = -mp.sinh(xm) / (2 * mp.sinh((pm - 1) * xm))
        ddx = (
            mp.cosh(xm)
            * ((pm - 1) * mp.tanh(xm) - mp.tanh((pm - 1) * xm))
            / (2 * mp.sinh((pm - 1) * xm) * mp.tanh((pm - 1) * xm))
        )
        return HyperbolicPoint(
            x=x, a=a, b=b, h=h, db_dx=db, dh_dx=dh,
            dH_db=dHdb, ddx_dH_db=ddx, d2H_db2=ddx / db,
        )


def curvature(x: float, p: float) -> float:
    """d2H/db2 at x > 0; positive exactly where H is convex."""
    if x <= 0.0:
        raise SingularPoint("curvature needs x > 0")
    point = hyperbolic_point(x, p)
    assert point.d2H_db2 is not None
    return point.d2H_db2


def tanh_gap(t_param: float, x: float) -> float:
    """t*tanh(x) - tanh(t*x); vanishes at t in {-1, 0, 1}, positive for t > 1
    and -1 < t < 0 (x > 0), negative otherwise."""
    if high_precision():
        with mp_workdps() as mp:
            tm, xm = mp.mpf(t_param), mp.mpf(x)
            return tm * mp.tanh(xm) - mp.tanh(tm * xm)
    return t_param * math.tanh(x) - math.tanh(t_param * x)


# ---------------------------------------------------------------------------
# the substituted scalar chain on t in (0, 1), c = 1/p
# ---------------------------------------------------------------------------

CHAIN_NAMES = (
    "f", "f_prime", "g", "h", "h0", "v", "v_prime", "v_dprime", "v_tprime",
    "w", "p_quad", "m", "u", "b_factor", "q_factor",
)


@dataclass(frozen=True)
class ChainContext:
    """Fixes the exponent through c = 1/p and the truncated scan interval."""

    p: float
    c: float
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if self.c == 0.0 or self.p == 0.0:
            raise ZeroExponent("c = 1/p requires a nonzero exponent")
        if not math.isclose(self.c * self.p, 1.0, rel_tol=1e-12):
            raise ValueError("ChainContext requires c = 1/p")
        if not 0.0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")

    @classmethod
    def from_c(cls, c: float, delta: float = DEFAULT_DELTA) -> "ChainContext":
        c = float(c)
        if c == 0.0:
            raise ZeroExponent("c = 0 is not admissible")
        return cls(p=1.0 / c, c=c, delta=delta)

    @classmethod
    def from_p(cls, p: float, delta: float = DEFAULT_DELTA) -> "ChainContext":
        p = float(p)
        if p == 0.0:
            raise ZeroExponent("p = 0 is not admissible")
        return cls(p=p, c=1.0 / p, delta=delta)


def _fraction(c, t):
    """(1-c)(t^c+1)(1-t)/(t^c-t), the always-greater-than-1 second factor."""
    return (1.0 - c) * (t ** c + 1.0) * (1.0 - t) / (t ** c - t)


def _chain_f(c, t):
    x_big = (1.0 + t) ** 2 / (4.0 * t)
    return (
        -np.log1p(t ** c) / c
        + np.log1p(t)
        + (1.0 - c) / c * np.log1p((1.0 / x_big) ** c)
    )


def _chain_f_prime(c, t):
    x_big = (1.0 + t) ** 2 / (4.0 * t)
    bracket = 1.0 / (x_big ** c + 1.0) - (t ** c - t) / (
        (1.0 - c) * (t ** c + 1.0) * (1.0 - t)
    )
    return (1.0 - c) * (1.0 - t) / (t * (1.0 + t)) * bracket


def _chain_g(c, t):
    x_big = (1.0 + t) ** 2 / (4.0 * t)
    return x_big ** c - (_fraction(c, t) - 1.0)


def _chain_h(c, t):
    x_big = (1.0 + t) ** 2 / (4.0 * t)
    return c * np.log(x_big) - np.log(_fraction(c, t) - 1.0)


def _chain_v(c, t):
    return (
        t * (2.0 * c * c - 1.0)
        - t * t * c * c
        + 2.0 * c * (1.0 - 2.0 * c) * (t ** c - t ** (c + 1.0))
        + t ** (2.0 * c) * (1.0 - 2.0 * c * c)
        + (t ** (1.0 + 2.0 * c) - 1.0) * (1.0 - c) ** 2
        + t ** (2.0 * c - 1.0) * c * c
    )


def _chain_v_prime(c, t):
    return (
        2.0 * c * c - 1.0
        - 2.0 * c * c * t
        + 2.0 * c * (1.0 - 2.0 * c) * (c * t ** (c - 1.0) - (c + 1.0) * t ** c)
        + 2.0 * c * (1.0 - 2.0 * c * c) * t ** (2.0 * c - 1.0)
        + (1.0 - c) ** 2 * (1.0 + 2.0 * c) * t ** (2.0 * c)
        + c * c * (2.0 * c - 1.0) * t ** (2.0 * c - 2.0)
    )


def _chain_q(c, t):
    """v''(t)/(2c); for c = 2 it factors as (t-1)(5t^2-16t+8)."""
    return (
        -c
        + c * (1.0 - 2.0 * c) * (c - 1.0) * t ** (c - 2.0)
        - c * (1.0 - 2.0 * c) * (c + 1.0) * t ** (c - 1.0)
        + (2.0 * c - 1.0) * (1.0 - 2.0 * c * c) * t ** (2.0 * c - 2.0)
        + (1.0 - c) ** 2 * (1.0 + 2.0 * c) * t ** (2.0 * c - 1.0)
        + c * (2.0 * c - 1.0) * (c - 1.0) * t ** (2.0 * c - 3.0)
    )


def _chain_v_dprime(c, t):
    return 2.0 * c * _chain_q(c, t)


def _chain_w(c, t):
    return (
        c * (c - 2.0)
        - (c + 1.0) * c * t
        - 2.0 * t ** c * (1.0 - 2.0 * c * c)
        + (1.0 - c) * (1.0 + 2.0 * c) * t ** (c + 1.0)
        - c * (2.0 * c - 3.0) * t ** (c - 1.0)
    )


def _chain_v_tprime(c, t):
    return 2.0 * c * (1.0 - 2.0 * c) * (c - 1.0) * t ** (c - 3.0) * _chain_w(c, t)


def _chain_p_quad(c, t):
    return (
        t * t * (c + 1.0) * (1.0 + 2.0 * c)
        + 2.0 * t * (1.0 - 2.0 * c * c)
        + 2.0 * c * c
        - 7.0 * c
        + 6.0
    )


def _chain_m(c, t):
    return (
        c * (2.0 - c) * t ** (1.0 - c)
        + c * (c + 1.0) * t ** (2.0 - c)
        + 2.0 * (1.0 - 2.0 * c * c) * t
        + (c - 1.0) * (1.0 + 2.0 * c) * t * t
        + c * (2.0 * c - 3.0)
    )


def _chain_u(c, t):
    return (
        -c * t ** (3.0 - 2.0 * c)
        + c * (1.0 - 2.0 * c) * (c - 1.0) * t ** (1.0 - c)
        - c * (1.0 - 2.0 * c) * (c + 1.0) * t ** (2.0 - c)
        + (2.0 * c - 1.0) * (1.0 - 2.0 * c * c) * t
        + (1.0 - c) ** 2 * (1.0 + 2.0 * c) * t * t
        + c * (2.0 * c - 1.0) * (c - 1.0)
    )


def _chain_b_factor(c, t):
    return (
        c ** 3
        - c
        - t * c * (c + 1.0) * (c - 2.0)
        + 2.0 * t ** (2.0 - c) * (2.0 * c - 3.0)
    )


_CHAIN_FLOAT: Mapping[str, Callable] = {
    "f": _chain_f,
    "f_prime": _chain_f_prime,
    "g": _chain_g,
    "h": _chain_h,
    "v": _chain_v,
    "v_prime": _chain_v_prime,
    "v_dprime": _chain_v_dprime,
    "v_tprime": _chain_v_tprime,
    "w": _chain_w,
    "p_quad": _chain_p_quad,
    "m": _chain_m,
    "u": _chain_u,
    "b_factor": _chain_b_factor,
    "q_factor": _chain_q,
}

# values at t = 1 for the names whose displayed form is 0/0 there
_AT_ONE = {"f": 0.0, "f_prime": 0.0, "g": 0.0, "h": 0.0}


def _chain_mp_value(name: str, c: float, t: float):
    """High-precision evaluation of the displayed formulas (scalar)."""
    with mp_workdps() as mp:
        cm, tm = mp.mpf(c), mp.mpf(t)
        one = mp.mpf(1)
        if name in _AT_ONE and t == 1.0:
            return mp.mpf(_AT_ONE[name])
        x_big = (1 + tm) ** 2 / (4 * tm)
        if name in ("f_prime", "g", "h", "f"):
            frac = (1 - cm) * (tm ** cm + 1) * (1 - tm) / (tm ** cm - tm)
            if name == "f":
                return (
                    -mp.log(1 + tm ** cm) / cm
                    + mp.log(1 + tm)
                    + (1 - cm) / cm * mp.log(1 + (1 / x_big) ** cm)
                )
            if name == "f_prime":
                bracket = 1 / (x_big ** cm + 1) - (tm ** cm - tm) / (
                    (1 - cm) * (tm ** cm + 1) * (1 - tm)
                )
                return (1 - cm) * (1 - tm) / (tm * (1 + tm)) * bracket
            if name == "g":
                return x_big ** cm - (frac - 1)
            return cm * mp.log(x_big) - mp.log(frac - 1)
        if name == "v":
            return (
                tm * (2 * cm ** 2 - 1)
                - tm ** 2 * cm ** 2
                + 2 * cm * (1 - 2 * cm) * (tm ** cm - tm ** (cm + 1))
                + tm ** (2 * cm) * (1 - 2 * cm ** 2)
                + (tm ** (1 + 2 * cm) - 1) * (1 - cm) ** 2
                + tm ** (2 * cm - 1) * cm ** 2
            )
        if name == "v_prime":
            return (
                2 * cm ** 2 - 1
                - 2 * cm ** 2 * tm
                + 2 * cm * (1 - 2 * cm) * (cm * tm ** (cm - 1) - (cm + 1) * tm ** cm)
                + 2 * cm * (1 - 2 * cm ** 2) * tm ** (2 * cm - 1)
                + (1 - cm) ** 2 * (1 + 2 * cm) * tm ** (2 * cm)
                + cm ** 2 * (2 * cm - 1) * tm ** (2 * cm - 2)
            )
        if name in ("v_dprime", "q_factor"):
            q = (
                -cm
                + cm * (1 - 2 * cm) * (cm - 1) * tm ** (cm - 2)
                - cm * (1 - 2 * cm) * (cm + 1) * tm ** (cm - 1)
                + (2 * cm - 1) * (1 - 2 * cm ** 2) * tm ** (2 * cm - 2)
                + (1 - cm) ** 2 * (1 + 2 * cm) * tm ** (2 * cm - 1)
                + cm * (2 * cm - 1) * (cm - 1) * tm ** (2 * cm - 3)
            )
            return 2 * cm * q if name == "v_dprime" else q
        w = (
            cm * (cm - 2)
            - (cm + 1) * cm * tm
            - 2 * tm ** cm * (1 - 2 * cm ** 2)
            + (1 - cm) * (1 + 2 * cm) * tm ** (cm + 1)
            - cm * (2 * cm - 3) * tm ** (cm - 1)
        )
        if name == "w":
            return w
        if name == "v_tprime":
            return 2 * cm * (1 - 2 * cm) * (cm - 1) * tm ** (cm - 3) * w
        if name == "p_quad":
            return (
                tm ** 2 * (cm + 1) * (1 + 2 * cm)
                + 2 * tm * (1 - 2 * cm ** 2)
                + 2 * cm ** 2
                - 7 * cm
                + 6
            )
        if name == "m":
            return (
                cm * (2 - cm) * tm ** (1 - cm)
                + cm * (cm + 1) * tm ** (2 - cm)
                + 2 * (1 - 2 * cm ** 2) * tm
                + (cm - 1) * (1 + 2 * cm) * tm ** 2
                + cm * (2 * cm - 3)
            )
        if name == "u":
            return (
                -cm * tm ** (3 - 2 * cm)
                + cm * (1 - 2 * cm) * (cm - 1) * tm ** (1 - cm)
                - cm * (1 - 2 * cm) * (cm + 1) * tm ** (2 - cm)
                + (2 * cm - 1) * (1 - 2 * cm ** 2) * tm
                + (1 - cm) ** 2 * (1 + 2 * cm) * tm ** 2
                + cm * (2 * cm - 1) * (cm - 1)
            )
        if name == "b_factor":
            return (
                cm ** 3
                - cm
                - tm * cm * (cm + 1) * (cm - 2)
                + 2 * tm ** (2 - cm) * (2 * cm - 3)
            )
        raise NameRequiresC(f"unknown chain function {name!r}")


def _h0_value(c: float) -> float:
    if c < 0.0:
        return -math.inf
    if c == 0.0 or c == 1.0:
        raise NameRequiresC("h0 is not defined at c in {0, 1}")
    if c < 1.0:
        return -2.0 * c * math.log(2.0) - math.log1p(-c)
    return math.inf


def chain_eval(name: str, ctx: ChainContext, t: float) -> float:
    """Evaluate one auxiliary chain function at t in (0, 1] (h0 ignores t)."""
    if name not in CHAIN_NAMES:
        raise NameRequiresC(f"unknown chain function {name!r}")
    if name == "h0":
        return _h0_value(ctx.c)
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"t must lie in (0, 1], got {t}")
    if high_precision():
        return _chain_mp_value(name, ctx.c, t)
    if t == 1.0 and name in _AT_ONE:
        return _AT_ONE[name]
    with np.errstate(all="ignore"):
        return float(_CHAIN_FLOAT[name](ctx.c, t))


def fraction_bound(ctx: ChainContext, t: float) -> float:
    """The second factor (1-c)(t^c+1)(1-t)/(t^c-t); provably > 1 on (0, 1)."""
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t}")
    return float(_fraction(ctx.c, t))


# ---------------------------------------------------------------------------
# sign-change detection
# ---------------------------------------------------------------------------


class PatternKind(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    PLUS_TO_MINUS = "plus_to_minus"
    MINUS_TO_PLUS = "minus_to_plus"
    OTHER = "other"


@dataclass(frozen=True)
class Crossing:
    bracket_lo: float
    bracket_hi: float
    sign_before: int
    sign_after: int


@dataclass(frozen=True)
class SignChangePattern:
    crossings: tuple[Crossing, ...]
    overall: PatternKind


def _left_limit_sign(name: str, c: float) -> int | None:
    """Sign of the t -> 0+ limit, from the chain's stated asymptotics.

    Needed because a crossing can fall below the truncated scan interval (for
    small c the g/h crossing sits at astronomically small t).
    """
    if name in ("g", "h"):
        return -1 if c < 0.5 else 1
    if name == "f_prime":
        hs = -1 if c < 0.5 else 1
        sgn_1c = 1 if c < 1.0 else -1
        return -sgn_1c * hs
    if name in ("v", "v_dprime"):
        return 1 if c < 0.5 else -1
    if name == "q_factor":
        vd = 1 if c < 0.5 else -1
        return vd if c > 0.0 else -vd
    if name == "w":
        if c < 1.0:
            # divergent t^(c-1) term, coefficient c(3-2c)
            return 1 if 0.0 < c else -1
        return _sign_of(c * (c - 2.0))
    if name == "m":
        return 1  # c(2-c) t^(1-c) dominates on the audited range c in (1,2)
    if name == "u":
        return -1  # -c t^(3-2c) dominates for c > 2
    if name == "p_quad":
        return _sign_of(2.0 * c * c - 7.0 * c + 6.0)
    if name == "b_factor":
        return 1  # 2(2c-3) t^(2-c) dominates for c > 2
    return None


def _sign_of(x: float) -> int:
    return (x > 0) - (x < 0)


def _mp_sign(name: str, c: float, t: float) -> int:
    val = _chain_mp_value(name, c, t)
    with mp_workdps() as mp:
        return int(mp.sign(val))


def sign_changes(
    name: str | Callable[[np.ndarray], np.ndarray],
    ctx: ChainContext,
    grid_size: int,
) -> SignChangePattern:
    """Locate the sign crossings of a chain function on (0, 1).

    A uniform grid on (delta, 1-delta) is scanned in double precision.
    Samples whose magnitude falls under 1e-13 of the local 5-sample scale, or
    that sit in the edge guard bands, are re-evaluated at 50 digits before a
    sign is accepted.  The known t -> 0+ limit sign is prepended so crossings
    below the truncation are still reported (their brackets are refined below
    delta).  Each detected crossing is bisected to a bracket of width 1e-10.
    ``name`` may also be a vectorized callable, which is classified from its
    grid values alone (used for shims in tests).
    """
    if grid_size < 1000:
        raise TooCoarse("grid_size must be at least 1000")
    is_callable = callable(name)
    if not is_callable:
        if name not in CHAIN_NAMES:
            raise NameRequiresC(f"unknown chain function {name!r}")
        if name == "h0":
            raise NameRequiresC("h0 is a limit value, not a function of t")

    delta = ctx.delta
    t = np.linspace(delta, 1.0 - delta, grid_size)
    with np.errstate(all="ignore"):
        if is_callable:
            vals = np.asarray(name(t), dtype=float)
        else:
            vals = np.asarray(_CHAIN_FLOAT[name](ctx.c, t), dtype=float)

    absvals = np.abs(vals)
    finite = np.isfinite(vals)
    local = maximum_filter1d(np.where(finite, absvals, 0.0), size=5, mode="nearest")
    # infinities carry a definite sign; NaNs and sub-scale samples do not
    ambiguous = np.isnan(vals) | (finite & (absvals <= _ZERO_REL * local))

    signs = np.where(vals > 0.0, 1, np.where(vals < 0.0, -1, 0)).astype(int)
    if not is_callable:
        needs_mp = ambiguous | (t <= _EDGE_GUARD) | (t >= 1.0 - _EDGE_GUARD)
        for i in np.nonzero(needs_mp)[0]:
            signs[i] = _mp_sign(name, ctx.c, float(t[i]))
    else:
        signs[ambiguous] = 0

    # adjacent unresolved samples defeat classification
    zero = signs == 0
    if np.any(zero[:-1] & zero[1:]):
        raise TooCoarse("adjacent sign-ambiguous samples; refine the grid")

    # sample sequence, with the t -> 0+ limit sign prepended for known names
    seq_t = list(t)
    seq_s = list(signs)
    if not is_callable:
        s0 = _left_limit_sign(name, ctx.c)
        if s0 is not None:
            seq_t.insert(0, 0.0)
            seq_s.insert(0, s0)

    def _sign_at(x: float) -> int:
        if is_callable:
            return _sign_of(float(name(np.asarray([x]))[0]))
        with np.errstate(all="ignore"):
            v = float(_CHAIN_FLOAT[name](ctx.c, x))
        if (
            not math.isfinite(v)
            or x >= 1.0 - _EDGE_GUARD
            or abs(v) <= 1e-12 * (1.0 + abs(v))
        ):
            return _mp_sign(name, ctx.c, x)
        return _sign_of(v)

    crossings: list[Crossing] = []
    prev_i = None
    for i in range(len(seq_s)):
        if seq_s[i] == 0:
            continue
        if prev_i is not None and seq_s[i] != seq_s[prev_i]:
            lo, hi = float(seq_t[prev_i]), float(seq_t[i])
            s_lo, s_hi = int(seq_s[prev_i]), int(seq_s[i])
            if lo == 0.0:
                # flip against the t -> 0+ limit sign: probe down to the floor
                lo = _LEFT_FLOOR
                if _sign_at(lo) != s_lo:
                    # crossing sits below the probing floor; record it there
                    crossings.append(
                        Crossing(0.0, lo, sign_before=s_lo, sign_after=s_hi)
                    )
                    prev_i = i
                    continue
            while hi - lo > _BRACKET_WIDTH:
                mid = 0.5 * (lo + hi)
                if _sign_at(mid) == s_lo:
                    lo = mid
                else:
                    hi = mid
            crossings.append(Crossing(lo, hi, sign_before=s_lo, sign_after=s_hi))
        prev_i = i

    nonzero = [s for s in seq_s if s != 0]
    if not nonzero:
        overall = PatternKind.OTHER
    elif len(crossings) == 0:
        overall = PatternKind.POSITIVE if nonzero[0] > 0 else PatternKind.NEGATIVE
    elif len(crossings) == 1:
        overall = (
            PatternKind.PLUS_TO_MINUS
            if crossings[0].sign_before > 0
            else PatternKind.MINUS_TO_PLUS
        )
    else:
        overall = PatternKind.OTHER
    return SignChangePattern(crossings=tuple(crossings), overall=overall)


# ---------------------------------------------------------------------------
# whole-chain audit
# ---------------------------------------------------------------------------

CORE_AUDIT_NAMES = ("f_prime", "g", "h", "v", "v_dprime")


@dataclass(frozen=True)
class PatternEntry:
    observed: SignChangePattern
    expected: PatternKind
    match: bool


@dataclass(frozen=True)
class ChainReport:
    c: float
    patterns: dict[str, PatternEntry]
    extras: dict[str, PatternEntry]
    fraction_min: float
    fraction_ok: bool

    @property
    def all_match(self) -> bool:
        return all(entry.match for entry in self.patterns.values())


def expected_pattern(name: str, c: float) -> PatternKind:
    """Claimed sign behavior of each audited function on (0, 1)."""
    if name == "f_prime":
        if c < 0.0:
            return PatternKind.POSITIVE
        if 0.0 < c < 0.5 or c > 1.0:
            return PatternKind.PLUS_TO_MINUS
        return PatternKind.MINUS_TO_PLUS
    if name in ("g", "h"):
        if c < 0.0:
            return PatternKind.NEGATIVE
        return PatternKind.MINUS_TO_PLUS if c < 0.5 else PatternKind.PLUS_TO_MINUS
    if name in ("v", "v_dprime"):
        if c < 0.0:
            return PatternKind.POSITIVE
        return PatternKind.PLUS_TO_MINUS if c < 0.5 else PatternKind.MINUS_TO_PLUS
    raise NameRequiresC(f"no claimed pattern for {name!r}")


def _extra_expectations(c: float) -> dict[str, PatternKind]:
    """Scoped informational checks for the intermediate chain functions."""
    extras: dict[str, PatternKind] = {}
    if 0.0 < c < 1.0:
        extras["w"] = PatternKind.PLUS_TO_MINUS
        extras["p_quad"] = PatternKind.POSITIVE
    elif c < 0.0:
        extras["w"] = PatternKind.NEGATIVE
        extras["p_quad"] = PatternKind.POSITIVE
    if 1.0 < c < 2.0:
        extras["m"] = PatternKind.PLUS_TO_MINUS
    if c > 2.0:
        extras["u"] = PatternKind.MINUS_TO_PLUS
        extras["b_factor"] = PatternKind.POSITIVE
    return extras


def audit_chain(ctx: ChainContext, grid_size: int = 10_000) -> ChainReport:
    """Compare observed sign patterns of the whole chain to the claimed ones.

    The five pattern-bearing functions gate the audit; the intermediate
    helpers are reported informationally only on the parameter ranges where
    the argument uses them.  The always-positive second factor is checked on
    the same grid.
    """
    c = ctx.c
    if c in (0.0, 0.5, 1.0):
        raise ExponentOutOfRange(
            "pattern claims exclude c in {0, 1/2, 1} (p in {1, 2} or infinite)"
        )
    patterns: dict[str, PatternEntry] = {}
    for name in CORE_AUDIT_NAMES:
        observed = sign_changes(name, ctx, grid_size)
        expected = expected_pattern(name, c)
        patterns[name] = PatternEntry(
            observed=observed, expected=expected, match=observed.overall is expected
        )
    extras: dict[str, PatternEntry] = {}
    for name, expected in _extra_expectations(c).items():
        observed = sign_changes(name, ctx, grid_size)
        extras[name] = PatternEntry(
            observed=observed, expected=expected, match=observed.overall is expected
        )

    t = np.linspace(ctx.delta, 1.0 - ctx.delta, grid_size)
    with np.errstate(all="ignore"):
        frac = _fraction(c, t)
    fraction_min = float(np.nanmin(frac))
    fraction_ok = bool(fraction_min > 1.0 - 1e-12)
    return ChainReport(
        c=c,
        patterns=patterns,
        extras=extras,
        fraction_min=fraction_min,
        fraction_ok=fraction_ok,
    )
