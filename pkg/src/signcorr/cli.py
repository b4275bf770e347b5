"""Command-line interface: verify | sweep | series | mc | optimize.

Reports are machine readable (JSON by default, CSV for sweep, or plain text)
and byte-identical across reruns with the same flags. Exit codes: 0 pass or
success, 1 computed-but-failing verification, 2 usage error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .mc import estimate_phi_i, estimate_phi_t, hermite5, identity1, rotation3
from .optimize import grid_scan, maximize_eta, worker_count
from .phi import (
    METHODS,
    THRESHOLD,
    RotationFamily,
    phi_i_bessel,
    phi_real_t,
    verify_theorem,
)
from .quad import NonConvergenceError
from .series import alternation_check, conditional_bound, mehler_coefficients, revert_odd_series

_FORMATS = ("json", "csv", "text")
_MC_REFERENCE_TOL = 1e-9
_MC_REFERENCE_TOL_T = 1e-8


class _UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items())
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, (list, tuple)):
        return ", ".join(_text_value(x) for x in v)
    return str(v)


def _as_text(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            for sk, sv in v.items():
                lines.append(f"{k}.{sk} = {_text_value(sv)}")
        else:
            lines.append(f"{k} = {_text_value(v)}")
    return "\n".join(lines)


def _render_report(report: dict, fmt: str) -> str:
    if fmt == "csv":
        raise _UsageError("csv output is only available for the sweep command")
    if fmt == "json":
        return _json_value(report)
    return _as_text(report)


def _resolve_format(flag: str | None) -> str:
    fmt = flag or os.environ.get("SIGNCORR_FORMAT", "json")
    if fmt not in _FORMATS:
        raise _UsageError(
            f"unknown output format {fmt!r}, expected one of {_FORMATS}"
        )
    return fmt


def _finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise _UsageError(f"--{name} must be finite, got {value}")
    return value


def _cmd_verify(args, fmt: str):
    eta = _finite("eta", args.eta)
    report = verify_theorem(RotationFamily(eta), args.method, args.tol)
    payload = {
        "command": "verify",
        "inputs": {"eta": eta, "method": args.method, "tol": args.tol},
        "value": report.phi_i_value,
        "error_estimate": report.error_estimate,
        "threshold": report.threshold,
        "margin": report.margin,
        "pass": report.passed,
        "version": __version__,
    }
    return (0 if report.passed else 1), _render_report(payload, fmt)


def _cmd_sweep(args, fmt: str):
    lo, hi = _finite("lo", args.lo), _finite("hi", args.hi)
    if lo > hi:
        raise _UsageError(f"--lo must not exceed --hi, got [{lo}, {hi}]")
    if args.steps < 0:
        raise _UsageError(f"--steps must be >= 0, got {args.steps}")
    scan = grid_scan(lo, hi, args.steps, args.tol)
    if fmt == "csv":
        lines = ["eta,value,error_estimate"]
        lines += [f"{_fmt(e)},{_fmt(v)},{_fmt(err)}" for e, v, err in scan.points]
        return 0, "\n".join(lines)
    if fmt == "json":
        rows = [
            {"eta": e, "value": v, "error_estimate": err}
            for e, v, err in scan.points
        ]
        return 0, _json_value(rows)
    lines = [
        f"eta = {_fmt(e)}  value = {_fmt(v)}  error_estimate = {_fmt(err)}"
        for e, v, err in scan.points
    ]
    lines.append(f"best_eta = {_fmt(scan.best_eta)}")
    lines.append(f"best_value = {_fmt(scan.best_value)}")
    return 0, "\n".join(lines)


def _cmd_series(args, fmt: str):
    eta = _finite("eta", args.eta)
    family = RotationFamily(eta)
    direct = mehler_coefficients(family, args.order, args.tol)
    inverse = revert_odd_series(direct)
    verdict = alternation_check(inverse)
    vq = phi_i_bessel(family, args.tol)
    payload = {
        "command": "series",
        "inputs": {"eta": eta, "order": args.order, "tol": args.tol},
        "value": vq.value,
        "error_estimate": vq.error_estimate,
        "direct_coefficients": list(direct.coeffs),
        "inverse_coefficients": list(inverse.coeffs),
        "signs": list(verdict.signs),
        "alternating": verdict.alternating,
    }
    if verdict.first_violation is not None:
        payload["first_violation"] = verdict.first_violation
    payload["conditional_bound"] = conditional_bound(vq.value)
    payload["version"] = __version__
    return 0, _render_report(payload, fmt)


def _mc_family(args):
    if args.family == "identity1":
        if args.eta is not None or args.epsilon is not None:
            raise _UsageError("identity1 takes no --eta or --epsilon")
        return identity1(), {}
    if args.family == "rotation3":
        if args.eta is None:
            raise _UsageError("rotation3 requires --eta")
        if args.epsilon is not None:
            raise _UsageError("rotation3 takes --eta, not --epsilon")
        return rotation3(_finite("eta", args.eta)), {"eta": args.eta}
    if args.epsilon is None:
        raise _UsageError("hermite5 requires --epsilon")
    if args.eta is not None:
        raise _UsageError("hermite5 takes --epsilon, not --eta")
    return hermite5(_finite("epsilon", args.epsilon)), {"epsilon": args.epsilon}


def _mc_reference(args) -> float | None:
    if args.family == "hermite5":
        return None
    if args.target == "phi-i":
        if args.family == "identity1":
            return THRESHOLD
        return phi_i_bessel(RotationFamily(args.eta), _MC_REFERENCE_TOL).value
    if args.family == "identity1":
        return 2.0 / math.pi * math.asin(args.t)
    return phi_real_t(RotationFamily(args.eta), args.t, _MC_REFERENCE_TOL_T).value


def _cmd_mc(args, fmt: str):
    family, params = _mc_family(args)
    inputs = {"family": args.family, **params, "target": args.target}
    if args.target == "phi-t":
        if args.t is None:
            raise _UsageError("--target phi-t requires --t")
        if not abs(args.t) <= 1:
            raise _UsageError(f"--t must satisfy |t| <= 1, got {args.t}")
        inputs["t"] = args.t
        est = estimate_phi_t(family, args.t, args.samples, args.seed)
    else:
        if args.t is not None:
            raise _UsageError("--t is only meaningful with --target phi-t")
        est = estimate_phi_i(family, args.samples, args.seed)
    payload = {
        "command": "mc",
        "inputs": inputs,
        "value": est.mean,
        "stderr": est.stderr,
        "samples": est.samples,
        "seed": est.seed,
    }
    reference = _mc_reference(args)
    if reference is not None:
        payload["reference"] = reference
        if est.stderr > 0:
            payload["z_score"] = (est.mean - reference) / est.stderr
    payload["version"] = __version__
    return 0, _render_report(payload, fmt)


def _cmd_optimize(args, fmt: str):
    lo, hi = _finite("lo", args.lo), _finite("hi", args.hi)
    if not lo < hi:
        raise _UsageError(f"need --lo < --hi, got [{lo}, {hi}]")
    res = maximize_eta(lo, hi, args.xtol, args.tol)
    payload = {
        "command": "optimize",
        "inputs": {"lo": lo, "hi": hi, "xtol": args.xtol, "tol": args.tol},
        "eta_star": res.eta_star,
        "value": res.value_star,
        "error_estimate": res.error_estimate,
        "unimodal": res.unimodal,
        "version": __version__,
    }
    return 0, _render_report(payload, fmt)


_HANDLERS = {
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "series": _cmd_series,
    "mc": _cmd_mc,
    "optimize": _cmd_optimize,
}


def _positive_float(raw: str) -> float:
    value = float(raw)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {raw}")
    return value


def _non_negative_int(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {raw}")
    return value


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {raw}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signcorr",
        description="Verify, sweep, expand, cross-validate, and optimize the "
        "sign-correlation functional of the rotation family.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=_FORMATS, default=None,
                       help="output format (default: SIGNCORR_FORMAT or json)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write the report to PATH instead of stdout")

    p = sub.add_parser("verify", help="check Phi(i)/i clears the threshold")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--method", choices=METHODS, default="bessel")
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    common(p)

    p = sub.add_parser("sweep", help="tabulate Phi(i)/i on an eta grid")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=_non_negative_int, default=50)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    common(p)

    p = sub.add_parser("series", help="Taylor coefficients, reversion, alternation")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--order", type=_positive_int, default=11)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    common(p)

    p = sub.add_parser("mc", help="seeded Monte Carlo estimate")
    p.add_argument("--family", choices=("identity1", "rotation3", "hermite5"),
                   required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--target", choices=("phi-i", "phi-t"), default="phi-i")
    p.add_argument("--samples", type=_positive_int, default=10**6)
    p.add_argument("--seed", type=_non_negative_int, required=True)
    common(p)

    p = sub.add_parser("optimize", help="maximize Phi(i)/i over eta")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--xtol", type=_positive_float, default=1e-4)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    common(p)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        worker_count()
        fmt = _resolve_format(args.format)
        code, text = _HANDLERS[args.command](args, fmt)
    except (_UsageError, ValueError) as exc:
        print(f"signcorr: error: {exc}", file=sys.stderr)
        return 2
    except NonConvergenceError as exc:
        print(f"signcorr: non-convergence: {exc}", file=sys.stderr)
        return 3
    if args.out is None:
        sys.stdout.write(text + "\n")
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")
    return code
