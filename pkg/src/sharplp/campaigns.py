"""Deterministic randomized verification campaigns and grid sweeps.

All campaigns are seeded and reproducible: a fixed seed yields byte-identical
summaries.  Instances are small discrete spaces (up to 12 points, values and
weights in (0, 2]); forward and reverse exponent lists follow the regions of
the sharpened inequality.
"""
from __future__ import annotations

import numpy as np

from .inequality import main_sides
from .means import constant_factor
from .measure import MeasureSpace, SimpleFunction
from .schatten import lieb_thirring_check, random_psd, schatten_verify

FORWARD_PS = (0.3, 0.7, 2.5, 3.0, 4.5, 9.0)
REVERSE_PS = (-3.0, -0.7, 1.2, 1.8)
DEFAULT_TRIALS = 2000
MAX_POINTS = 12

SCHATTEN_PS = (2.0, 4.0, 8.0, 16.0)
SCHATTEN_DIMS = (2, 3, 4, 5, 6)
SCHATTEN_TRIALS = 500


def _positive_uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    """n samples uniform on (0, 2]."""
    return 2.0 * (1.0 - rng.random(n))


def random_instance(
    rng: np.random.Generator, max_points: int = MAX_POINTS
) -> tuple[SimpleFunction, SimpleFunction, MeasureSpace]:
    n = int(rng.integers(1, max_points + 1))
    f = SimpleFunction(_positive_uniform(rng, n))
    g = SimpleFunction(_positive_uniform(rng, n))
    w = MeasureSpace(_positive_uniform(rng, n))
    return f, g, w


def _equality_instances(rng: np.random.Generator, max_points: int):
    """One equal pair and one disjoint pair, for the exact-equality checks."""
    n = int(rng.integers(2, max_points + 1))
    vals = _positive_uniform(rng, n)
    w = MeasureSpace(_positive_uniform(rng, n))
    equal = (SimpleFunction(vals), SimpleFunction(vals.copy()), w)
    mask = rng.random(n) < 0.5
    mask[0], mask[-1] = True, False  # keep both supports nonempty
    f2 = SimpleFunction(np.where(mask, vals, 0.0))
    g2 = SimpleFunction(np.where(mask, 0.0, vals))
    disjoint = (f2, g2, w)
    return equal, disjoint


def verify_campaign(
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    forward_ps=FORWARD_PS,
    reverse_ps=REVERSE_PS,
    max_points: int = MAX_POINTS,
    slack: float = 1e-9,
    dominance_slack: float = 1e-12,
) -> dict:
    """Randomized two-sided campaign over both exponent regions.

    Checks, per instance: the region-correct direction within relative slack;
    domination of the classical interpolation bound for p >= 2; and the exact
    equality cases (equal pair, disjoint pair) at every forward exponent.
    Returns a JSON-ready summary with per-region failure counts.
    """
    rng = np.random.default_rng(seed)
    per_region_failures = {"forward": 0, "reverse": 0, "dominance": 0, "equality": 0}
    max_violation = 0.0
    checked = 0

    def violation(lhs: float, rhs: float, forward: bool) -> float:
        scale = max(abs(lhs), abs(rhs), 1e-300)
        return float(((lhs - rhs) if forward else (rhs - lhs)) / scale)

    for p in forward_ps:
        for _ in range(trials):
            f, g, w = random_instance(rng, max_points)
            rep = main_sides(f, g, w, p)
            checked += 1
            v = violation(rep.lhs, rep.rhs, forward=True)
            max_violation = max(max_violation, v)
            if v > slack:
                per_region_failures["forward"] += 1
            if p >= 2.0 and rep.carbery_rhs is not None:
                if rep.rhs > rep.carbery_rhs * (1.0 + dominance_slack):
                    per_region_failures["dominance"] += 1
    for p in reverse_ps:
        for _ in range(trials):
            f, g, w = random_instance(rng, max_points)
            rep = main_sides(f, g, w, p)
            checked += 1
            v = violation(rep.lhs, rep.rhs, forward=False)
            max_violation = max(max_violation, v)
            if v > slack:
                per_region_failures["reverse"] += 1

    for p in forward_ps:
        equal, disjoint = _equality_instances(rng, max_points)
        for f, g, w in (equal, disjoint):
            rep = main_sides(f, g, w, p)
            checked += 1
            gap = float(abs(rep.lhs - rep.rhs) / max(rep.lhs, rep.rhs))
            max_violation = max(max_violation, gap)
            if gap > slack:
                per_region_failures["equality"] += 1

    return {
        "seed": seed,
        "trials": trials,
        "instances_checked": checked,
        "forward_ps": list(forward_ps),
        "reverse_ps": list(reverse_ps),
        "per_region_failures": per_region_failures,
        "max_violation": max_violation,
        "passed": all(v == 0 for v in per_region_failures.values()),
    }


def schatten_campaign(
    seed: int = 0,
    trials: int = SCHATTEN_TRIALS,
    ps=SCHATTEN_PS,
    dims=SCHATTEN_DIMS,
    slack: float = 1e-9,
    identity_slack: float = 1e-12,
) -> dict:
    """Seeded trials of the trace bound and the rearrangement link.

    For every (p, dim) pair, random PSD pairs are drawn deterministically and
    the bound, the rearrangement inequality, and the p = 2 identity are
    checked within their tolerances.
    """
    failures = {"bound": 0, "rearrangement": 0, "identity_p2": 0}
    max_violation = 0.0
    checked = 0
    for p in ps:
        for dim in dims:
            base = seed * 1_000_003 + dim * 1_009
            for trial in range(trials):
                A = random_psd(dim, base + 2 * trial)
                B = random_psd(dim, base + 2 * trial + 1)
                rep = schatten_verify(A, B, p)
                checked += 1
                v = (rep.lhs - rep.rhs) / max(rep.lhs, rep.rhs)
                max_violation = max(max_violation, v)
                if v > slack:
                    failures["bound"] += 1
                if p == 2.0 and abs(rep.lhs - rep.rhs) > identity_slack * rep.lhs:
                    failures["identity_p2"] += 1
                lt_lhs, lt_rhs = lieb_thirring_check(A, B, p)
                lt_v = (lt_lhs - lt_rhs) / max(lt_lhs, lt_rhs, 1e-300)
                max_violation = max(max_violation, lt_v)
                if lt_v > slack:
                    failures["rearrangement"] += 1
    return {
        "seed": seed,
        "trials": trials,
        "ps": list(ps),
        "dims": list(dims),
        "instances_checked": checked,
        "failures": failures,
        "max_violation": max_violation,
        "passed": all(v == 0 for v in failures.values()),
    }


def factor_grid(
    alpha_min: float,
    alpha_max: float,
    p_min: float,
    p_max: float,
    n_alpha: int,
    n_p: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense evaluation of the constant-ratio factor at its natural power 2/p.

    Returns (alphas, ps, values) with values[i, j] = factor(alphas[j], ps[i]):
    one row per exponent, alpha varying fastest.
    """
    alphas = np.linspace(alpha_min, alpha_max, n_alpha)
    ps = np.linspace(p_min, p_max, n_p)
    values = np.empty((n_p, n_alpha))
    for i, p in enumerate(ps):
        q = 2.0 / p
        values[i, :] = [constant_factor(a, p, q) for a in alphas]
    return alphas, ps, values
