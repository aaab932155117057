"""Command-line front end.

Subcommands: ``contour`` (dense factor grid as CSV), ``verify`` (randomized
two-region campaign), ``audit`` (derivative-chain sign patterns), ``sharpness``
(coupling-power probe), ``schatten`` (trace-bound trials), and ``means``
(mean-chain and power-mean form checks).  Exit code 0 means every check
passed, 1 means a mathematical check failed, 2 means a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import campaigns
from .audit import ChainContext, ChainReport, audit_chain
from .errors import SharpLpError
from .means import agm_chain, power_mean, sharpness_probe
from .precision import active_mode

# c values swept by default in `audit`; they cover every claim range of the
# derivative chain on both sides of the special points 0, 1/2, 1.
DEFAULT_C_GRID = (
    -3.0, -1.0, -0.2, 0.05, 0.2, 0.35, 0.45, 0.55, 0.7, 0.9, 1.3, 2.0, 3.5, 8.0,
)

_SPECIAL_PS = (0.0, 1.0, 2.0)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandConfig:
    command: str
    format: str
    out_path: str | None
    options: dict[str, Any]


def _check_p_value(p: float) -> float:
    """Reject p within 1e-9 of {0, 1, 2} unless exactly on an identity point."""
    for s in _SPECIAL_PS:
        if p == s:
            if s == 0.0:
                raise UsageError("p = 0 is not admissible")
            return p
        if abs(p - s) <= 1e-9:
            raise UsageError(
                f"p = {p!r} is within 1e-9 of {s} but not exactly equal; "
                "use the exact special value or move away from it"
            )
    return p


def _parse_float_list(raw: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad numeric list {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharplp",
        description="Verification toolkit for the sharpened p-th power triangle bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    contour = sub.add_parser("contour", help="dense grid of the constant-ratio factor")
    contour.add_argument("--alpha-min", type=float, default=0.5)
    contour.add_argument("--alpha-max", type=float, default=1.0)
    contour.add_argument("--p-min", type=float, default=2.0)
    contour.add_argument("--p-max", type=float, default=4.0)
    contour.add_argument("--na", type=int, default=400, dest="n_alpha")
    contour.add_argument("--np", type=int, default=400, dest="n_p")

    verify = sub.add_parser("verify", help="randomized two-region campaign")
    verify.add_argument("--p-list", type=str, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=campaigns.DEFAULT_TRIALS)
    verify.add_argument("--points", type=int, default=campaigns.MAX_POINTS)

    audit = sub.add_parser("audit", help="derivative-chain sign-pattern audit")
    audit.add_argument("--c", type=float, default=None)
    audit.add_argument("--c-grid", type=str, default=None)
    audit.add_argument("--points", type=int, default=10_000)

    sharp = sub.add_parser("sharpness", help="coupling-power sharpness probe")
    sharp.add_argument("--p-list", type=str, default="3.0")
    sharp.add_argument("--r", type=float, default=1.1)

    schatten = sub.add_parser("schatten", help="trace-bound trial campaign")
    schatten.add_argument("--p-list", type=str, default=None)
    schatten.add_argument("--dim", type=int, default=None)
    schatten.add_argument("--trials", type=int, default=campaigns.SCHATTEN_TRIALS)
    schatten.add_argument("--seed", type=int, default=0)

    means = sub.add_parser("means", help="mean-chain ordering and power-mean form")
    means.add_argument("--p-list", type=str, default="3.0")
    means.add_argument("--trials", type=int, default=100)
    means.add_argument("--seed", type=int, default=0)

    for p in (contour, verify, audit, sharp, schatten, means):
        p.add_argument("--out", type=str, default=None)
        p.add_argument(
            "--format", type=str, choices=("csv", "json"), default=None
        )
    return parser


def parse_config(argv: Sequence[str] | None = None) -> CommandConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    options = {
        k: v for k, v in vars(ns).items() if k not in ("command", "out", "format")
    }
    fmt = ns.format or ("csv" if ns.command == "contour" else "json")
    return CommandConfig(
        command=ns.command, format=fmt, out_path=ns.out, options=options
    )


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj: Any) -> str:
    # high-precision mode can leave mpmath scalars in summaries
    return json.dumps(obj, indent=2, default=float) + "\n"


def _pattern_to_dict(entry) -> dict[str, Any]:
    return {
        "observed": {
            "overall": entry.observed.overall.value,
            "crossings": [
                {
                    "bracket_lo": c.bracket_lo,
                    "bracket_hi": c.bracket_hi,
                    "sign_before": c.sign_before,
                    "sign_after": c.sign_after,
                }
                for c in entry.observed.crossings
            ],
        },
        "expected": entry.expected.value,
        "match": entry.match,
    }


def _chain_report_to_dict(report: ChainReport) -> dict[str, Any]:
    return {
        "c": report.c,
        "patterns": {k: _pattern_to_dict(v) for k, v in report.patterns.items()},
        "extras": {k: _pattern_to_dict(v) for k, v in report.extras.items()},
        "fraction_min": report.fraction_min,
        "fraction_ok": report.fraction_ok,
        "all_match": report.all_match,
    }


def _run_contour(config: CommandConfig) -> int:
    o = config.options
    if o["n_alpha"] < 2 or o["n_p"] < 2:
        raise UsageError("grid counts must be at least 2")
    if not o["alpha_min"] < o["alpha_max"] or not o["p_min"] < o["p_max"]:
        raise UsageError("ranges must be ordered (min < max)")
    if not (0.0 <= o["alpha_min"] and o["alpha_max"] <= 1.0):
        raise UsageError("alpha range must lie within [0, 1]")
    for p in np.linspace(o["p_min"], o["p_max"], o["n_p"]):
        _check_p_value(float(p))
    alphas, ps, values = campaigns.factor_grid(
        o["alpha_min"], o["alpha_max"], o["p_min"], o["p_max"],
        o["n_alpha"], o["n_p"],
    )
    if config.format == "csv":
        lines = ["alpha,p,value"]
        for i, p in enumerate(ps):
            for j, a in enumerate(alphas):
                lines.append(f"{a:.17g},{p:.17g},{values[i, j]:.17g}")
        _write_output("\n".join(lines) + "\n", config.out_path)
    else:
        rows = [
            [float(a), float(p), float(values[i, j])]
            for i, p in enumerate(ps)
            for j, a in enumerate(alphas)
        ]
        _write_output(
            _json_text({"header": ["alpha", "p", "value"], "rows": rows}),
            config.out_path,
        )
    return 0


def _run_verify(config: CommandConfig) -> int:
    o = config.options
    if o["trials"] < 1:
        raise UsageError("--trials must be positive")
    if o["p_list"] is None:
        forward, reverse = campaigns.FORWARD_PS, campaigns.REVERSE_PS
    else:
        ps = [_check_p_value(p) for p in _parse_float_list(o["p_list"])]
        forward = [p for p in ps if 0.0 < p <= 1.0 or p >= 2.0]
        reverse = [p for p in ps if p < 0.0 or 1.0 < p < 2.0]
    summary = campaigns.verify_campaign(
        seed=o["seed"],
        trials=o["trials"],
        forward_ps=tuple(forward),
        reverse_ps=tuple(reverse),
        max_points=o["points"],
    )
    summary["precision_mode"] = active_mode()
    _write_output(_json_text(summary), config.out_path)
    return 0 if summary["passed"] else 1


def _run_audit(config: CommandConfig) -> int:
    o = config.options
    if o["points"] < 1000:
        raise UsageError("--points must be at least 1000")
    if o["c"] is not None and o["c_grid"] is not None:
        raise UsageError("give either --c or --c-grid, not both")
    if o["c"] is not None:
        cs = [o["c"]]
    elif o["c_grid"] is not None:
        cs = _parse_float_list(o["c_grid"])
    else:
        cs = list(DEFAULT_C_GRID)
    for c in cs:
        if c in (0.0, 0.5, 1.0):
            raise UsageError(f"c = {c} is excluded from the pattern claims")
    reports = [audit_chain(ChainContext.from_c(c), o["points"]) for c in cs]
    payload = [_chain_report_to_dict(r) for r in reports]
    _write_output(_json_text(payload), config.out_path)
    return 0 if all(r.all_match and r.fraction_ok for r in reports) else 1


def _run_sharpness(config: CommandConfig) -> int:
    o = config.options
    results = []
    all_ok = True
    for p in _parse_float_list(o["p_list"]):
        r = o["r"]
        probe = sharpness_probe(p, r)
        witness_expected = (
            (p > 2.0 and r > 1.0)
            or (p < 0.0 and r < 1.0)
            or (0.0 < p < 2.0 and p != 1.0 and r < 1.0)
        )
        slope_ok = (
            abs(probe.slope_measured - probe.slope_predicted)
            <= 0.01 * max(abs(probe.slope_predicted), 1e-6)
        )
        ok = slope_ok and (probe.witness_s is not None) == witness_expected
        all_ok = all_ok and ok
        results.append(
            {
                "p": p,
                "r": r,
                "slope_predicted": probe.slope_predicted,
                "slope_measured": probe.slope_measured,
                "witness_s": probe.witness_s,
                "witness_expected": witness_expected,
                "passed": ok,
            }
        )
    _write_output(_json_text(results), config.out_path)
    return 0 if all_ok else 1


def _run_schatten(config: CommandConfig) -> int:
    o = config.options
    if o["trials"] < 1:
        raise UsageError("--trials must be positive")
    ps = (
        campaigns.SCHATTEN_PS
        if o["p_list"] is None
        else tuple(_parse_float_list(o["p_list"]))
    )
    dims = campaigns.SCHATTEN_DIMS if o["dim"] is None else (o["dim"],)
    summary = campaigns.schatten_campaign(
        seed=o["seed"], trials=o["trials"], ps=ps, dims=dims
    )
    _write_output(_json_text(summary), config.out_path)
    return 0 if summary["passed"] else 1


def _run_means(config: CommandConfig) -> int:
    o = config.options
    rng = np.random.default_rng(o["seed"])
    ps = [_check_p_value(p) for p in _parse_float_list(o["p_list"])]
    failures = 0
    max_gap = 0.0
    example = None
    example_sides = None
    for p in ps:
        for _ in range(o["trials"]):
            x, y = 2.0 * (1.0 - rng.random(2))
            if p > 2.0:
                chain = agm_chain(x, y, p)
                terms = chain.terms
                ordered = all(
                    terms[i] >= terms[i + 1] - 1e-12 for i in range(3)
                ) and terms[3] >= -1e-12
                if not ordered:
                    failures += 1
                if example is None:
                    example = {
                        "x": x, "y": y, "p": p,
                        "A": chain.A, "G": chain.G,
                        "Mp": chain.Mp, "Mp_dual": chain.Mp_dual,
                        "terms": list(terms),
                    }
            # power-mean form: M_1^p vs ((M_p + M_-p)/2)^(p-1) M_p
            m1 = power_mean(x, y, 1.0)
            mp_ = power_mean(x, y, p)
            mmp = power_mean(x, y, -p)
            lhs = m1 ** p
            rhs = ((mp_ + mmp) / 2.0) ** (p - 1.0) * mp_
            if example_sides is None:
                example_sides = {"x": x, "y": y, "p": p, "lhs": lhs, "rhs": rhs}
            gap = (lhs - rhs) / max(abs(lhs), abs(rhs))
            forward = 0.0 < p <= 1.0 or p >= 2.0
            v = gap if forward else -gap
            max_gap = max(max_gap, v)
            if v > 1e-9:
                failures += 1
    summary = {
        "seed": o["seed"],
        "trials": o["trials"],
        "ps": ps,
        "failures": failures,
        "max_violation": max_gap,
        "example_chain": example,
        "example_mean_sides": example_sides,
        "passed": failures == 0,
    }
    _write_output(_json_text(summary), config.out_path)
    return 0 if summary["passed"] else 1


_RUNNERS = {
    "contour": _run_contour,
    "verify": _run_verify,
    "audit": _run_audit,
    "sharpness": _run_sharpness,
    "schatten": _run_schatten,
    "means": _run_means,
}


def run(config: CommandConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        active_mode()  # validate the precision switch before any work
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.command != "contour" and config.format == "csv":
            raise UsageError(f"{config.command} output is JSON only")
        return _RUNNERS[config.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SharpLpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> None:
    config = parse_config(argv)
    raise SystemExit(run(config))


if __name__ == "__main__":
    main()
