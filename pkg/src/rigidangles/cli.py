"""Command-line front end.

Exit codes: 0 success (or conformal), 1 not conformal, 2 bad input,
3 mathematically undefined request. Nothing is printed on stdout for codes
2 and 3; the error goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .core import DEFAULT_TOL, AngleKind, ScalarField, angle, inner, norm_oracle, polarize
from .errors import InputError, InternalInconsistency, RigidityError
from .metricfield import pointwise_conformality, theta0_field_check
from .problemfile import FIXTURE_ALIASES, FIXTURES, fixture_path, load
from .rigidity import (
    DEFAULT_SCAN_STEPS,
    WitnessPair,
    check_conformal,
    equivalence_suite,
    find_orthogonality_witness,
    same_fixed_angle,
)

POLARIZE_RTOL = 1e-10


# ---------------------------------------------------------------- formatting

def _num(v):
    """JSON-ready form of a scalar: float, or [re, im] for a genuinely complex value."""
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _vec(a):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return [[float(z.real), float(z.imag)] for z in a]
    return [float(t) for t in a]


def dumps(obj, indent=0) -> str:
    """Deterministic JSON: sorted keys, floats with 17 significant digits."""
    pad, inner_pad = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner_pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in sorted(obj.items())]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner_pad + dumps(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(obj)


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".10g")
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_full(t) for t in v) + "]"
    return str(v)


def _fmt_full(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_full(t) for t in v) + "]"
    return format(v, ".17g") if isinstance(v, float) else str(v)


def _text(doc: dict, prefix: str = "") -> list[str]:
    lines = []
    for k in doc:
        v = doc[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            lines.extend(_text(v, key + "."))
        else:
            lines.append(f"{key}={_fmt(v)}")
    return lines


# ---------------------------------------------------------------- arguments

_THETA_RE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_angle(text: str) -> float:
    """Radians, written as a float or as ``pi/4``, ``2pi/3``, ``2*pi/3``."""
    m = _THETA_RE.match(text)
    try:
        if m:
            num = float(m.group(1)) if m.group(1) not in ("", "+") else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            return num * math.pi / den
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _witness_doc(w: WitnessPair) -> dict:
    doc = {
        "kind": w.kind.value,
        "x": _vec(w.x),
        "y": _vec(w.y),
        "angle_in_1": float(w.angle_in_1),
        "angle_in_2": float(w.angle_in_2),
        "inner_in_1": _num(w.inner_in_1),
        "inner_in_2": _num(w.inner_in_2),
    }
    if w.theta0 is not None:
        doc["theta0"] = float(w.theta0)
    return doc


def _tol(args):
    return DEFAULT_TOL if args.tol is None else replace(DEFAULT_TOL, conf=args.tol)


# ---------------------------------------------------------------- commands

def _load(file: str):
    """A problem file path, or the name of a shipped fixture."""
    if not Path(file).exists() and (file in FIXTURES or file in FIXTURE_ALIASES):
        return load(fixture_path(file))
    return load(file)


def cmd_angle(args):
    prob = _load(args.file)
    g = prob.form(args.form)
    x, y = prob.vector(args.x), prob.vector(args.y)
    kinds = list(AngleKind) if args.kind == "all" else [AngleKind(args.kind)]
    if args.kind == "all" and g.field is ScalarField.REAL:
        kinds.remove(AngleKind.KAHLER)
    doc = {}
    for kind in kinds:
        a = angle(g, x, y, kind, tol=_tol(args))
        entry = {"cos_value": _num(a.cos_value)}
        if a.theta is not None:
            entry["theta"] = a.theta
        if a.pseudo_arg is not None:
            entry["pseudo_arg"] = a.pseudo_arg
        doc[kind.value] = entry
    if len(kinds) == 1:
        doc = {"kind": kinds[0].value, **doc[kinds[0].value]}
    return doc, 0


def cmd_check_conformal(args):
    prob = _load(args.file)
    g1, g2 = prob.form(args.g1), prob.form(args.g2)
    tol = _tol(args)
    v = check_conformal(g1, g2, tol)
    doc = {
        "verdict": "conformal" if v.conformal else "not-conformal",
        "residual": v.residual,
        "spectral_spread": v.spectral_spread,
    }
    if v.conformal:
        doc["factor_c"] = v.factor_c
    else:
        doc["witness"] = _witness_doc(v.witness)
    thetas = args.theta0 or []
    if thetas:
        doc["fixed_angle"] = {}
        for th in thetas:
            same, w = same_fixed_angle(g1, g2, th, args.scan_steps, tol)
            entry = {"theta0": th, "same": same}
            if w is not None:
                entry["witness"] = _witness_doc(w)
            doc["fixed_angle"][f"{th:.10g}"] = entry
    kwargs = {"theta0s": thetas} if thetas else {}
    rep = equivalence_suite(g1, g2, trials=args.trials, rng_seed=args.seed, tol=tol, **kwargs)
    doc["suite"] = {name: ("n/a" if ok is None else ("pass" if ok else "fail")) for name, ok in rep.items.items()}
    doc["suite"]["consistent"] = rep.consistent
    return doc, 0 if v.conformal else 1


def cmd_polarize(args):
    prob = _load(args.file)
    g = prob.form(args.form)
    x, y = prob.vector(args.x), prob.vector(args.y)
    value = polarize(g.field, norm_oracle(g), x, y)
    direct = inner(g, x, y)
    scale = max(abs(direct), float(np.sqrt(np.real(inner(g, x, x)) * np.real(inner(g, y, y)))), np.finfo(float).tiny)
    discrepancy = abs(value - direct) / scale
    if discrepancy > POLARIZE_RTOL:
        raise InternalInconsistency(f"polarized value differs from <x, y> by {discrepancy:.3e} (relative)")
    return {"value": _num(value), "direct": _num(direct), "discrepancy": discrepancy}, 0


def cmd_witness(args):
    prob = _load(args.file)
    g1, g2 = prob.form(args.g1), prob.form(args.g2)
    tol = _tol(args)
    doc = {"orthogonality": _witness_doc(find_orthogonality_witness(g1, g2, tol))}
    for th in args.theta0 or []:
        _, w = same_fixed_angle(g1, g2, th, args.scan_steps, tol)
        doc[f"fixed_angle_{th:.10g}"] = _witness_doc(w)
    return doc, 0


def cmd_metric_field(args):
    prob = _load(args.file)
    tol = _tol(args)
    sample = prob.metric_sample(tol)
    res = pointwise_conformality(sample, tol)
    rows = []
    for p, f, r, ok in zip(sample.points, res.factors, res.residuals, res.conformal):
        rows.append({"point": _vec(p), "factor": float(f), "residual": float(r), "conformal": bool(ok)})
    doc = {"verdict": res.verdict.value, "convention": res.convention, "points": rows}
    if res.failing_point is not None:
        doc["failing_point"] = [float(t) for t in res.failing_point]
        doc["failing_index"] = res.failing_index
    for th in args.theta0 or []:
        same = theta0_field_check(sample, th, args.scan_steps, tol)
        for row, s in zip(rows, same):
            row[f"same_angle_{th:.10g}"] = bool(s)
    return doc, 0 if bool(res.conformal.all()) else 1


def _render_metric_text(doc) -> list[str]:
    lines = [f"verdict={doc['verdict']}", f"convention={doc['convention']}"]
    if "failing_point" in doc:
        lines.append(f"failing_point={_fmt(doc['failing_point'])}")
        lines.append(f"failing_index={doc['failing_index']}")
    for row in doc["points"]:
        extra = " ".join(f"{k}={_fmt(v)}" for k, v in row.items() if k.startswith("same_angle_"))
        lines.append(f"point={_fmt(row['point'])} f={_fmt(row['factor'])} residual={row['residual']:.3e} "
                     f"conformal={_fmt(row['conformal'])}" + (f" {extra}" if extra else ""))
    return lines


# ---------------------------------------------------------------- entry point

def _global_flags(parser, suppress=False):
    # accepted before or after the subcommand; the subcommand copy must not clobber an earlier value
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False),
                        help="emit a JSON document instead of key=value lines")
    parser.add_argument("--tol", type=float, default=d(None), help="relative conformality tolerance (default 1e-8)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    parser.add_argument("--scan-steps", type=int, default=d(DEFAULT_SCAN_STEPS), dest="scan_steps")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(argparse.ArgumentParser(add_help=False), suppress=True)

    ap = argparse.ArgumentParser(prog="rigidangles", description="Angles, polarization and conformality of inner products.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(ap)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angle", parents=[common], help="angle between two vectors")
    p.add_argument("file")
    p.add_argument("--form", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--kind", default="euclidean", choices=[k.value for k in AngleKind] + ["all"])
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("check-conformal", parents=[common], help="decide conformality of two forms")
    p.add_argument("file")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--theta0", type=parse_angle, action="append")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_check_conformal)

    p = sub.add_parser("polarize", parents=[common], help="recover <x, y> from the norm of a form")
    p.add_argument("file")
    p.add_argument("--form", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("witness", parents=[common], help="vectors separating two non-conformal forms")
    p.add_argument("file")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--theta0", type=parse_angle, action="append")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("metric-field", parents=[common], help="pointwise conformality on a sampled grid")
    p.add_argument("file")
    p.add_argument("--theta0", type=parse_angle, action="append")
    p.set_defaults(func=cmd_metric_field)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.scan_steps < 1 or (getattr(args, "trials", 1) or 0) < 1:
            raise InputError("--scan-steps and --trials must be positive")
        doc, code = args.func(args)
    except RigidityError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        print(dumps(doc))
    elif args.command == "metric-field":
        print("\n".join(_render_metric_text(doc)))
    else:
        print("\n".join(_text(doc)))
    return code


if __name__ == "__main__":
    sys.exit(main())
