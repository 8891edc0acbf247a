"""Command-line front end.

    planecc classify METRIC
    planecc riemann METRIC --at t,x,y,z
    planecc check METRIC --vector FIELD [--expect STATUS]
    planecc case METRIC
    planecc verify-paper

Exit status: 0 on success, 1 when a requested verification fails or a claim
is not confirmed, 2 on bad input.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .casebook import classify_case, verify_paper
from .collineations import VectorField, check_vector_field
from .config import AnalysisConfig
from .curvclass import BIVECTOR_LABELS, classify, riemann_matrix_at
from .geometry import MetricError, PlaneSymmetricMetric, calibrate_closed_forms, riemann_closed_form
from .symexpr import COORDINATES, Domain, EvaluationError, Hyperplane, ParseError, evaluate, parse

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# --- input files ------------------------------------------------------------

_LINE = re.compile(r"^\s*(?:(param|domain|exclude)\s+)?([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*?)\s*$")
_INTERVAL = re.compile(r"^\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\]$")


def _lines(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _number(text: str, where: str) -> float:
    try:
        return float(evaluate(parse(text), {}))
    except (ParseError, EvaluationError, ValueError) as exc:
        raise InputError(f"{where}: not a number: {text!r}") from exc


def _expression(text: str, params, where: str):
    try:
        return parse(text, params)
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from exc


def parse_metric_file(path) -> PlaneSymmetricMetric:
    params: dict[str, float] = {}
    funcs: dict[str, object] = {}
    intervals: dict[str, tuple[float, float]] = {}
    excluded = []
    for n, line in _lines(path):
        where = f"{path}:{n}"
        m = _LINE.match(line)
        if not m:
            raise InputError(f"{where}: expected 'name = value'")
        kind, name, value = m.groups()
        if kind == "param":
            if name in params:
                raise InputError(f"{where}: parameter {name} declared twice")
            params[name] = _number(value, where)
        elif kind == "domain":
            if name not in COORDINATES:
                raise InputError(f"{where}: unknown coordinate {name!r}")
            iv = _INTERVAL.match(value)
            if not iv:
                raise InputError(f"{where}: expected an interval [lo, hi]")
            intervals[name] = (_number(iv.group(1), where), _number(iv.group(2), where))
        elif kind == "exclude":
            if name not in COORDINATES:
                raise InputError(f"{where}: unknown coordinate {name!r}")
            excluded.append(Hyperplane.coordinate(name, _number(value, where)))
        elif name in ("A", "B", "C"):
            if name in funcs:
                raise InputError(f"{where}: {name} given twice")
            funcs[name] = _expression(value, params, where)
        else:
            raise InputError(f"{where}: unknown entry {name!r}")
    missing = [k for k in "ABC" if k not in funcs]
    if missing:
        raise InputError(f"{path}: missing {', '.join(missing)}")
    try:
        dom = Domain.box(excluded=excluded, **intervals)
        return PlaneSymmetricMetric(funcs["A"], funcs["B"], funcs["C"], params=params, domain=dom, name=Path(path).stem)
    except (MetricError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_vector_file(path) -> VectorField:
    params: dict[str, float] = {}
    comps = {}
    for n, line in _lines(path):
        where = f"{path}:{n}"
        m = _LINE.match(line)
        if not m or m.group(1) in ("domain", "exclude"):
            raise InputError(f"{where}: expected 'Xi = expression'")
        kind, name, value = m.groups()
        if kind == "param":
            params[name] = _number(value, where)
            continue
        if name not in ("X0", "X1", "X2", "X3"):
            raise InputError(f"{where}: unknown component {name!r}")
        if name in comps:
            raise InputError(f"{where}: {name} given twice")
        e = _expression(value, params, where)
        if params:
            from .symexpr import Const, substitute

            e = substitute(e, {k: Const(v) for k, v in params.items()})
        comps[name] = e
    return VectorField(tuple(comps.get(f"X{i}", parse("0")) for i in range(4)), name=Path(path).stem)


# --- output -----------------------------------------------------------------

def _json_value(v, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if not math.isfinite(f):
            return "null"
        if f == 0:
            return "0.0"
        text = format(f, ".17g")
        return text if any(ch in text for ch in ".en") else text + ".0"
    if isinstance(v, str):
        return _json_string(v)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{_json_string(str(k))}: {_json_value(x, indent, level + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [pad + _json_value(x, indent, level + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(v, np.ndarray):
        return _json_value(v.tolist(), indent, level)
    return _json_string(str(v))


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def emit_report(report: dict, fmt: str = "json") -> str:
    """Serialise deterministically: keys keep insertion order, floats carry 17 significant digits."""
    if fmt == "json":
        return _json_value(report, 2, 0) + "\n"
    if fmt == "text":
        return "\n".join(_text_lines(report)) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".6g")
    if v is None:
        return "none"
    return str(v)


def _text_lines(d: dict, prefix: str = ""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _text_lines(v, f"{prefix}{k}.")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                yield from _text_lines(item, f"{prefix}{k}[{i}].")
        elif isinstance(v, list):
            yield f"{prefix}{k}: [" + ", ".join(_fmt(x) for x in v) + "]"
        else:
            yield f"{prefix}{k}: {_fmt(v)}"


# --- commands ---------------------------------------------------------------

def _cmd_classify(args, cfg):
    M = parse_metric_file(args.metric)
    cl = classify(M, cfg=cfg)
    match = classify_case(M, cfg, rank=cl.rank)
    result = {"analysis": "classify", "metric": M.describe(), "rank": cl.rank, "class": cl.curvature_class,
              "kernel_dim": cl.kernel_dim, "case": match.label}
    result.update({"details": cl.as_dict()})
    text = [f"metric: {M.describe()}", f"rank: {cl.rank}", f"class: {cl.curvature_class}",
            f"kernel_dim: {cl.kernel_dim}", f"case: {match.label}",
            "rank_histogram: " + ", ".join(f"{k}:{v}" for k, v in sorted(cl.histogram.items()))]
    text += [f"warning: {w}" for w in cl.warnings]
    return result, text, EXIT_OK


def _cmd_riemann(args, cfg):
    M = parse_metric_file(args.metric)
    try:
        coords = [float(v) for v in args.at.split(",")]
    except ValueError as exc:
        raise InputError(f"--at expects four numbers t,x,y,z, got {args.at!r}") from exc
    if len(coords) != 4:
        raise InputError(f"--at expects four numbers t,x,y,z, got {args.at!r}")
    p = dict(zip(COORDINATES, coords))
    try:
        W = riemann_matrix_at(M, p)
    except ArithmeticError as exc:
        raise InputError(str(exc)) from exc
    cal = calibrate_closed_forms(seed=cfg.seed)
    alphas = riemann_closed_form(M, cal).as_dict()
    values = {}
    for k, e in alphas.items():
        try:
            values[k] = evaluate(e, p)
        except EvaluationError:
            values[k] = None
    result = {"analysis": "riemann", "metric": M.describe(), "point": p,
              "bivectors": list(BIVECTOR_LABELS), "matrix": W.tolist(),
              "closed_forms": {k: str(e) for k, e in alphas.items()}, "values": values,
              "corrections": list(cal.corrections)}
    text = [f"metric: {M.describe()}", "point: " + ", ".join(f"{k}={v:g}" for k, v in p.items()),
            "bivectors: " + " ".join(BIVECTOR_LABELS)]
    text += ["  " + " ".join(f"{x: .6g}" for x in row) for row in W]
    text += [f"{k} = {alphas[k]}  ({_fmt(values[k])})" for k in alphas]
    text += [f"correction: {c}" for c in cal.corrections]
    return result, text, EXIT_OK


def _cmd_check(args, cfg):
    M = parse_metric_file(args.metric)
    X = parse_vector_file(args.vector)
    r = check_vector_field(M, X, cfg, crosscheck=True)
    result = {"analysis": "check", "metric": M.describe()}
    result.update(r.as_dict())
    code = EXIT_OK
    if args.expect:
        result["expected"] = args.expect
        result["verdict"] = "AGREE" if r.status == args.expect else "DISAGREE"
        code = EXIT_OK if r.status == args.expect else EXIT_FAIL
    text = [f"metric: {M.describe()}", f"field: {X}", f"killing: {_fmt(r.is_killing)}",
            f"homothety_constant: {_fmt(r.homothety_constant)}", f"affine: {_fmt(r.is_affine)}",
            f"cc: {_fmt(r.is_cc)}", f"proper_cc: {_fmt(r.is_proper_cc)}", f"status: {r.status}",
            f"residual.lie_riemann: {r.cc.residual:.3e}", f"residual.covariant_lie_metric: {r.affine.residual:.3e}"]
    if args.expect:
        text.append(f"expected: {args.expect} -> {result['verdict']}")
    text += [f"warning: {w}" for w in r.warnings]
    return result, text, code


def _cmd_case(args, cfg):
    M = parse_metric_file(args.metric)
    match = classify_case(M, cfg)
    result = {"analysis": "case", "metric": M.describe()}
    result.update(match.as_dict())
    text = [f"metric: {M.describe()}", f"case: {match.label}",
            "families: " + ", ".join(str(f) for f in match.families), f"rank: {match.rank}"]
    text += [f"{k}: {v}" for k, v in match.conditions.as_dict().items()]
    for case, fails in sorted(match.diagnostics.items()):
        text += [f"nearest case {case}: {f}" for f in fails]
    return result, text, EXIT_OK


def _cmd_verify(args, cfg):
    report = verify_paper(cfg)
    result = {"analysis": "verify-paper"}
    result.update(report.as_dict())
    text = [f"correction: {c}" for c in report.corrections]
    for f in report.fixtures:
        text.append(f"{f.fixture}: rank {f.rank}, class {f.curvature_class}, case {f.case_match.label}")
        text += [f"  advisory: {a}" for a in f.advisories]
    for c in report.claims:
        line = f"{c.verdict}: {c.fixture}: {c.claim} (expected {_fmt(c.expected)}, computed {_fmt(c.computed)})"
        if c.verdict != "AGREE" and c.residual is not None:
            line += f" residual {c.residual:.3e}"
        text.append(line)
    summary = result["summary"]
    text.append(f"claims: {summary['claims']}, agree: {summary['agree']}, disagree: {summary['disagree']}")
    return result, text, EXIT_OK if report.agreed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=32, help="probe points per zero test (default 32)")
    common.add_argument("--tol", type=float, default=1e-9, help="zero-test epsilon (default 1e-9)")
    common.add_argument("--rank-tol", type=float, default=1e-10, help="relative singular value cutoff (default 1e-10)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")

    p = argparse.ArgumentParser(prog="planecc", description="Curvature and collineation analysis of plane-symmetric metrics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("classify", parents=[common], help="rank, curvature class and case of a metric")
    s.add_argument("metric")
    s = sub.add_parser("riemann", parents=[common], help="6x6 curvature matrix at a point")
    s.add_argument("metric")
    s.add_argument("--at", required=True, metavar="t,x,y,z")
    s = sub.add_parser("check", parents=[common], help="symmetry status of a vector field")
    s.add_argument("metric")
    s.add_argument("--vector", required=True)
    s.add_argument("--expect", choices=["killing", "homothetic", "affine", "proper_cc", "not_cc"])
    s = sub.add_parser("case", parents=[common], help="match a metric against the case table")
    s.add_argument("metric")
    sub.add_parser("verify-paper", parents=[common], help="re-derive the published claims on the built-in fixtures")
    return p


_COMMANDS = {
    "classify": _cmd_classify,
    "riemann": _cmd_riemann,
    "check": _cmd_check,
    "case": _cmd_case,
    "verify-paper": _cmd_verify,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = AnalysisConfig(samples=args.samples, tol=args.tol, rank_tol=args.rank_tol, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result, text, code = _COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {
        "version": __version__,
        "seed": cfg.seed,
        "tolerances": cfg.as_dict(),
        "analyses": [result],
    }
    if args.json == "-":
        stdout.write(emit_report(report))
    else:
        stdout.write("\n".join(text) + "\n")
        if args.json:
            Path(args.json).write_text(emit_report(report), encoding="utf-8")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
