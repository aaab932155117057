"""Exponent-doubling machinery: the scalar lemma, the direct p = 4 proof, and
the p -> 2p step.

The scalar lemma concerns psi_t(a) = (1+a)^(1+t) - (1+a^2)^t - 2^t a, which is
nonnegative on [0, inf) for t in [0, 1] and nonpositive for t > 1.  Combined
with the triangle inequality and the p-level sharpened bound applied to
(f^2, g^2), it transports the bound from exponent p to 2p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ExponentOutOfRange, NegativeInput, SharpLpError, ZeroPair
from .inequality import InequalityReport, main_sides
from .measure import MeasureSpace, SimpleFunction, lp_functional, lp_norm
from .precision import high_precision, mp_workdps

_CHECK_SLACK = 1e-9


class InequalityViolation(SharpLpError):
    """A provably valid numeric inequality failed beyond slack (should not happen)."""


@dataclass(frozen=True)
class P4Report:
    """Quantities of the direct fourth-power proof, after normalization."""

    alpha: float            # ||fg||_2
    beta: float             # ||f^2+g^2||_2
    lhs: float              # ||f+g||_4^2
    bound_minkowski: float  # beta + 2 alpha
    bound_final: float      # sqrt(2) (1+alpha)^(3/2)
    identity_gap: float     # beta^2 - 2 - 2 alpha^2


@dataclass(frozen=True)
class DoublingLink:
    name: str
    lhs: float
    rhs: float
    direction: str  # "<=" or ">="
    slack: float
    satisfied: bool


@dataclass(frozen=True)
class DoublingReport:
    p: float
    gamma: float
    beta: float
    lhs_2p: float           # ||f+g||_{2p}^2 after normalization
    final_bound: float      # 2^(1/p) (1+gamma)^(2-1/p)
    links: tuple[DoublingLink, ...]
    level_2p: InequalityReport

    @property
    def all_links_hold(self) -> bool:
        return all(link.satisfied for link in self.links)


def psi(t_param: float, alpha: float) -> float:
    """(1+a)^(1+t) - (1+a^2)^t - 2^t a for a >= 0."""
    if alpha < 0.0:
        raise NegativeInput("psi is defined on alpha >= 0")
    if high_precision():
        with mp_workdps() as mp:
            tm, am = mp.mpf(t_param), mp.mpf(alpha)
            return (1 + am) ** (1 + tm) - (1 + am * am) ** tm - 2 ** tm * am
    a, t = float(alpha), float(t_param)
    return (1.0 + a) ** (1.0 + t) - (1.0 + a * a) ** t - 2.0 ** t * a


def _link(name: str, lhs: float, rhs: float, direction: str) -> DoublingLink:
    tol = _CHECK_SLACK * max(abs(lhs), abs(rhs), 1e-300)
    if direction == "<=":
        ok = lhs <= rhs + tol
        slack = rhs - lhs
    else:
        ok = lhs >= rhs - tol
        slack = lhs - rhs
    return DoublingLink(
        name=name, lhs=float(lhs), rhs=float(rhs),
        direction=direction, slack=float(slack), satisfied=bool(ok),
    )


def _normalized(f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float):
    """Rescale so that the p-th power sums of f and g average to 1."""
    total = lp_functional(f, space, p) + lp_functional(g, space, p)
    if total == 0.0:
        raise ZeroPair("f and g cannot both vanish identically")
    scale = float(total / 2.0) ** (1.0 / p)
    return (
        SimpleFunction(f.values / scale),
        SimpleFunction(g.values / scale),
    )


def direct_p4(f: SimpleFunction, g: SimpleFunction, space: MeasureSpace) -> P4Report:
    """Run the direct fourth-power proof chain on one instance.

    Inputs are rescaled internally to ||f||_4^4 + ||g||_4^4 = 2.  The chain
    ||f+g||_4^2 <= beta + 2 alpha <= sqrt(2)(1+alpha)^(3/2) is checked along
    with the identity beta^2 = 2 + 2 alpha^2 and the scalar square-root bound;
    a violation beyond slack raises InequalityViolation.
    """
    if np.any(f.values < 0.0) or np.any(g.values < 0.0):
        raise NegativeInput("f and g must be nonnegative")
    fn, gn = _normalized(f, g, space, 4.0)
    X = SimpleFunction(fn.values * gn.values)
    Y = SimpleFunction(fn.values ** 2 + gn.values ** 2)
    alpha = lp_norm(X, space, 2.0) if np.any(X.values != 0.0) else 0.0
    beta = lp_norm(Y, space, 2.0)
    lhs = lp_norm(SimpleFunction(fn.values + gn.values), space, 4.0) ** 2
    bound_minkowski = beta + 2.0 * alpha
    bound_final = math.sqrt(2.0) * (1.0 + alpha) ** 1.5
    identity_gap = beta ** 2 - 2.0 - 2.0 * alpha ** 2

    report = P4Report(
        alpha=float(alpha), beta=float(beta), lhs=float(lhs),
        bound_minkowski=float(bound_minkowski), bound_final=float(bound_final),
        identity_gap=float(identity_gap),
    )
    tol = _CHECK_SLACK * max(lhs, bound_final)
    if lhs > bound_minkowski + tol or bound_minkowski > bound_final + tol:
        raise InequalityViolation(f"fourth-power chain failed: {report}")
    if alpha > 1.0 + 1e-12 or beta > 2.0 + 1e-12:
        raise InequalityViolation(f"normalized overlap out of range: {report}")
    if abs(identity_gap) > 1e-12 * max(1.0, beta ** 2):
        raise InequalityViolation(f"beta^2 = 2 + 2 alpha^2 failed: {report}")
    scalar_gap = (1.0 + alpha) ** 1.5 - math.sqrt(2.0) * alpha - math.sqrt(1.0 + alpha ** 2)
    if scalar_gap < -1e-12:
        raise InequalityViolation(f"scalar square-root bound failed: {report}")
    return report


def doubling_step(
    f: SimpleFunction, g: SimpleFunction, space: MeasureSpace, p: float
) -> DoublingReport:
    """Verify every link transporting the bound from exponent p to 2p.

    Valid for p >= 2 (forward) and p < 0, where each ingredient reverses:
    the triangle inequality, the p-level bound on (f^2, g^2), and the scalar
    lemma with t = 1 - 1/p.  The final bound satisfies
    final^p = (2p)-level right side, which is also checked via ``main_sides``.
    """
    p = float(p)
    if not (p >= 2.0 or p < 0.0):
        raise ExponentOutOfRange("doubling applies for p >= 2 or p < 0")
    if np.any(f.values < 0.0) or np.any(g.values < 0.0):
        raise NegativeInput("f and g must be nonnegative")
    forward = p >= 2.0

    fn, gn = _normalized(f, g, space, 2.0 * p)
    X = SimpleFunction(fn.values * gn.values)
    Y = SimpleFunction(fn.values ** 2 + gn.values ** 2)
    gamma = lp_norm(X, space, p)
    beta = lp_norm(Y, space, p)
    lhs_2p = lp_norm(SimpleFunction(fn.values + gn.values), space, 2.0 * p) ** 2

    d1 = "<=" if forward else ">="
    link_triangle = _link("triangle", lhs_2p, beta + 2.0 * gamma, d1)

    level_p = main_sides(
        SimpleFunction(fn.values ** 2), SimpleFunction(gn.values ** 2), space, p
    )
    link_level_p = _link("level_p", level_p.lhs, level_p.rhs, d1)

    middle = 2.0 ** (1.0 / p) * (1.0 + gamma ** 2) ** (1.0 - 1.0 / p) + 2.0 * gamma
    final_bound = 2.0 ** (1.0 / p) * (1.0 + gamma) ** (2.0 - 1.0 / p)
    link_psi = _link("psi", middle, final_bound, d1)

    level_2p = main_sides(fn, gn, space, 2.0 * p)

    return DoublingReport(
        p=p,
        gamma=float(gamma),
        beta=float(beta),
        lhs_2p=float(lhs_2p),
        final_bound=float(final_bound),
        links=(link_triangle, link_level_p, link_psi),
        level_2p=level_2p,
    )
