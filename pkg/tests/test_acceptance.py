"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Criterion 3 is known to fail and is asserted as stated anyway: the window
[1.04, 1.08] matches the reference contour range (max "about 1.06"), but the
exact factor on the stated grid peaks near 1.18 at the alpha = 0.001 edge,
where the landscape steepens as alpha -> 0 with small p.  Away from that
spike (alpha >= 0.02) the grid max is 1.064, inside the window; both numbers
are printed.  The value at the edge is confirmed against a 50-digit
evaluation of the same formula, so the discrepancy is in the stated window,
not in the implementation.
"""
import math
import time

import numpy as np

from sharplp.audit import ChainContext, audit_chain, chain_eval, curvature
from sharplp.campaigns import factor_grid, schatten_campaign, verify_campaign
from sharplp.cli import parse_config, run
from sharplp.means import constant_factor, sharpness_probe
from sharplp.doubling import psi


def _report(criterion: int, ok: bool, detail: str) -> bool:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion:2d}: {status}: {detail}")
    return ok


def test_criterion_01_figure1_window():
    t0 = time.perf_counter()
    alphas = 0.5 + 1e-4 * np.arange(5001)
    edge_vals = np.array([constant_factor(float(a), 4.0, 0.5) for a in alphas])
    edge_max = float(edge_vals.max())
    argmax_alpha = float(alphas[int(np.argmax(edge_vals))])

    _, _, values = factor_grid(0.5, 1.0, 2.0, 4.0, 400, 400)
    grid_max = float(values.max())
    boundary = values[-1, :].max()  # the p = 4 row of the same grid

    ok = (
        1.016 <= edge_max <= 1.020
        and 0.55 < argmax_alpha < 0.95
        and abs(grid_max - boundary) <= 1e-6
    )
    detail = (
        f"p=4 edge max {edge_max:.6f} at alpha={argmax_alpha:.4f}; "
        f"grid max {grid_max:.6f} ({time.perf_counter()-t0:.2f}s)"
    )
    assert _report(1, ok, detail)


def test_criterion_02_figure2_window():
    t0 = time.perf_counter()
    _, _, values = factor_grid(0.5, 1.0, 1.0, 2.0, 600, 600)
    grid_min = float(values.min())
    ok = 0.9955 <= grid_min <= 0.9965
    assert _report(
        2, ok, f"grid min {grid_min:.6f} ({time.perf_counter()-t0:.2f}s)"
    )


def test_criterion_03_figure3_window():
    t0 = time.perf_counter()
    _, _, values = factor_grid(0.001, 0.5, 0.01, 1.0, 600, 600)
    grid_max = float(values.max())
    interior_max = float(values[:, 23:].max())  # alpha >= ~0.020, off the spike
    ok = 1.04 <= grid_max <= 1.08
    detail = (
        f"grid max {grid_max:.6f} (window [1.04, 1.08]; max away from the "
        f"alpha->0 spike {interior_max:.6f}) ({time.perf_counter()-t0:.2f}s)"
    )
    assert _report(3, ok, detail), (
        "the exact factor exceeds the stated window on this grid; the window "
        "matches the plotted contour range, which does not resolve the "
        "alpha -> 0 spike (see module docstring)"
    )


def test_criterion_04_two_percent_band():
    t0 = time.perf_counter()
    _, _, values = factor_grid(0.0, 1.0, 1.0, 4.0, 400, 400)
    dev = float(np.abs(values - 1.0).max())
    ok = dev <= 0.02
    assert _report(
        4, ok, f"max |factor - 1| = {dev:.6f} ({time.perf_counter()-t0:.2f}s)"
    )


def test_criterion_05_region_law():
    t0 = time.perf_counter()
    alphas = np.arange(1, 1000) * 1e-3
    worst_fwd = math.inf
    for p in (0.25, 0.5, 0.75, 2.0, 2.5, 3.0, 4.0, 7.0, 12.0):
        q = 2.0 / p
        worst_fwd = min(
            worst_fwd, min(constant_factor(float(a), p, q) for a in alphas)
        )
    worst_rev = -math.inf
    for p in (-5.0, -2.0, -0.5, 1.2, 1.5, 1.9):
        q = 2.0 / p
        worst_rev = max(
            worst_rev, max(constant_factor(float(a), p, q) for a in alphas)
        )
    ok = worst_fwd >= 1.0 - 1e-10 and worst_rev <= 1.0 + 1e-10
    assert _report(
        5,
        ok,
        f"forward min {worst_fwd:.15f}, reverse max {worst_rev:.15f} "
        f"({time.perf_counter()-t0:.2f}s)",
    )


_CAMPAIGN = {}


def _campaign():
    if not _CAMPAIGN:
        t0 = time.perf_counter()
        _CAMPAIGN["summary"] = verify_campaign(seed=0, trials=2000)
        _CAMPAIGN["elapsed"] = time.perf_counter() - t0
    return _CAMPAIGN["summary"], _CAMPAIGN["elapsed"]


def test_criterion_06_main_campaign():
    summary, elapsed = _campaign()
    fails = summary["per_region_failures"]
    ok = (
        fails["forward"] == 0
        and fails["reverse"] == 0
        and fails["equality"] == 0
        and summary["instances_checked"] >= 2000 * 10
    )
    assert _report(
        6,
        ok,
        f"{summary['instances_checked']} instances, failures {fails}, "
        f"max violation {summary['max_violation']:.2e} ({elapsed:.2f}s)",
    )


def test_criterion_07_dominance():
    summary, elapsed = _campaign()
    ok = summary["per_region_failures"]["dominance"] == 0
    assert _report(
        7,
        ok,
        f"dominance failures {summary['per_region_failures']['dominance']} "
        f"(within campaign, {elapsed:.2f}s)",
    )


def test_criterion_08_sharpness():
    t0 = time.perf_counter()
    ok = True
    details = []
    for p, r in [(3.0, 1.1), (5.0, 1.5), (-2.0, 0.9), (0.5, 0.9)]:
        probe = sharpness_probe(p, r)
        slope_ok = abs(probe.slope_measured - probe.slope_predicted) <= 0.01 * abs(
            probe.slope_predicted
        )
        ok = ok and probe.witness_s is not None and slope_ok
        none_probe = sharpness_probe(p, 1.0)
        ok = ok and none_probe.witness_s is None
        details.append(f"({p},{r}): slope {probe.slope_measured:+.4f}")
    assert _report(
        8, ok, "; ".join(details) + f" ({time.perf_counter()-t0:.2f}s)"
    )


def test_criterion_09_chain_audit():
    t0 = time.perf_counter()
    cs = (-3.0, -1.0, -0.2, 0.05, 0.2, 0.35, 0.45, 0.55, 0.7, 0.9, 1.3, 2.0, 3.5, 8.0)
    mismatches = []
    for c in cs:
        rep = audit_chain(ChainContext.from_c(c), 10_000)
        if not (rep.all_match and rep.fraction_ok):
            mismatches.append(c)

    endpoint_ok = True
    for c in cs:
        ctx = ChainContext.from_c(c)
        endpoint_ok &= abs(chain_eval("v", ctx, 1.0)) <= 1e-10
        endpoint_ok &= abs(chain_eval("v_prime", ctx, 1.0)) <= 1e-10
        endpoint_ok &= abs(chain_eval("v_dprime", ctx, 1.0)) <= 1e-10
        want = 2.0 * c * (1.0 - 2.0 * c) * (c - 1.0) ** 2
        endpoint_ok &= abs(chain_eval("v_tprime", ctx, 1.0) - want) <= 1e-8 * abs(want)
        endpoint_ok &= chain_eval("h", ctx, 1.0) == 0.0
        endpoint_ok &= abs(chain_eval("w", ctx, 1.0) - (c - 1.0)) <= 1e-12 * max(
            1.0, abs(c - 1.0)
        )

    ctx2 = ChainContext.from_c(2.0)
    fact_ok = True
    for t in np.linspace(1e-3, 1.0, 1000):
        t = float(t)
        factored = (t - 1.0) * (5.0 * t * t - 16.0 * t + 8.0)
        fact_ok &= abs(chain_eval("q_factor", ctx2, t) - factored) <= 1e-12

    ok = not mismatches and endpoint_ok and fact_ok
    assert _report(
        9,
        ok,
        f"patterns matched for all {len(cs)} c values; endpoints "
        f"{'ok' if endpoint_ok else 'BAD'}; c=2 factorization "
        f"{'ok' if fact_ok else 'BAD'} ({time.perf_counter()-t0:.2f}s)",
    )


def test_criterion_10_curvature_signs():
    t0 = time.perf_counter()
    xs = np.linspace(0.01, 5.0, 200)
    ok = True
    for p in (2.5, 3.0, 7.0):
        ok = ok and all(curvature(float(x), p) > 0.0 for x in xs)
    for p in (-2.0, 0.5, 1.5):
        ok = ok and all(curvature(float(x), p) < 0.0 for x in xs)
    assert _report(
        10,
        ok,
        f"convex for p in {{2.5,3,7}}, concave for p in {{-2,0.5,1.5}} "
        f"({time.perf_counter()-t0:.2f}s)",
    )


def test_criterion_11_scalar_lemma():
    t0 = time.perf_counter()
    alphas = np.linspace(0.0, 10.0, 1001)
    scale = lambda t: (1.0 + alphas) ** (1.0 + t)

    def psi_vec(t):
        return (1.0 + alphas) ** (1.0 + t) - (1.0 + alphas ** 2) ** t - 2.0 ** t * alphas

    ok = True
    for t in np.linspace(0.0, 1.0, 101):
        t = float(t)
        ok = ok and bool(np.all(psi_vec(t) >= -1e-12 * scale(t)))
    for t in np.linspace(1.0, 3.0, 101)[1:]:
        t = float(t)
        ok = ok and bool(np.all(psi_vec(t) <= 1e-12 * scale(t)))
    # vectorized formula agrees with the scalar operation
    for t in (0.25, 0.75, 1.5):
        for a in (0.0, 0.5, 2.0, 10.0):
            ok = ok and abs(
                psi(t, a) - float(psi_vec(t)[np.searchsorted(alphas, a)])
            ) <= 1e-12 * (1.0 + a) ** (1.0 + t)

    a4 = np.linspace(0.0, 1.0, 10_000)
    gap = (1.0 + a4) ** 1.5 - math.sqrt(2.0) * a4 - np.sqrt(1.0 + a4 ** 2)
    ok = ok and bool(np.all(gap >= -1e-12))
    ok = ok and abs(gap[0]) <= 1e-10 and abs(gap[-1]) <= 1e-10
    assert _report(
        11,
        ok,
        f"scalar lemma grids clean; sqrt bound min gap {float(gap.min()):.2e} "
        f"({time.perf_counter()-t0:.2f}s)",
    )


def test_criterion_12_schatten_campaign():
    t0 = time.perf_counter()
    summary = schatten_campaign(seed=0, trials=500)
    ok = summary["passed"] and summary["instances_checked"] == 500 * 4 * 5
    assert _report(
        12,
        ok,
        f"{summary['instances_checked']} trials, failures {summary['failures']}, "
        f"max violation {summary['max_violation']:.2e} "
        f"({time.perf_counter()-t0:.2f}s)",
    )


def test_criterion_13_determinism(tmp_path):
    t0 = time.perf_counter()
    outs = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        config = parse_config(["verify", "--seed", "0", "--out", str(out)])
        assert run(config) == 0
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    assert _report(
        13, ok, f"two verify runs byte-identical ({time.perf_counter()-t0:.2f}s)"
    )
