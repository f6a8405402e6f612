"""Command-line front end: solve, verify, sweep and decompose.

Exit codes: 0 success, 1 verification mismatch, 2 t outside the series
radius with no fallback, 3 numeric failure, 64 usage error.
"""

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields, replace

from .closed_forms import cubic_roots, quadratic_roots, quintic_small_root
from .config import SolverConfig
from .decomposition import (
    all_roots_decomposition,
    argument_label,
    argument_scale,
    class_parameters,
)
from .errors import OutsideRadiusError, TrinomialError
from .lagrange_series import all_roots_series, convergence_radius, series_root
from .oracle import match_roots, oracle_roots
from .problem import RootSet, TrinomialProblem
from .special_functions import gamma_ratio_term

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_OUTSIDE_RADIUS = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

METHODS = ("series", "decomposition", "closed-form", "oracle", "auto")
CLOSED_FORM_DEGREES = (2, 3, 5)
CSV_HEADER = (
    "t_re", "t_im", "method", "root_index", "root_re", "root_im",
    "residual", "terms_used", "converged",
)

# JSON document written by ``solve --format json``
SOLVE_SCHEMA = {
    "type": "object",
    "required": ["metadata", "roots"],
    "additionalProperties": False,
    "properties": {
        "metadata": {
            "type": "object",
            "required": ["degree", "t", "method", "radius", "terms_used"],
            "additionalProperties": False,
            "properties": {
                "degree": {"type": "integer", "minimum": 2},
                "t": {
                    "type": "object",
                    "required": ["re", "im"],
                    "additionalProperties": False,
                    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
                },
                "method": {"enum": ["series", "decomposition", "closed-form", "oracle"]},
                "radius": {"type": "number"},
                "terms_used": {"type": "integer", "minimum": 0},
            },
        },
        "roots": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["re", "im", "residual", "provenance"],
                "additionalProperties": False,
                "properties": {
                    "re": {"type": "number"},
                    "im": {"type": "number"},
                    "residual": {"type": "number", "minimum": 0},
                    "provenance": {"type": "string"},
                },
            },
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- formatting

def fmt17(x: float) -> str:
    return format(x, ".17g")


def fmt12(x: float) -> str:
    return format(x, ".12g")


def dump_json(obj, indent=0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dump_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dump_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = fmt17(obj)
        # keep integral values floats so parsing restores the same double
        return text if any(c in text for c in ".en") else text + ".0"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _complex_text(z: complex, fmt=fmt12) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{fmt(z.real)} {sign} {fmt(abs(z.imag))}i"


# ---------------------------------------------------------------- solving

@dataclass(frozen=True)
class Solution:
    roots: RootSet
    method: str

    @property
    def terms_used(self) -> int:
        return sum(self.roots.terms_used)


def _closed_form(problem: TrinomialProblem, config: SolverConfig) -> RootSet:
    N = problem.degree
    if N == 2:
        return quadratic_roots(problem.t)
    if N == 3:
        return cubic_roots(problem.t)
    if N == 5:
        # four roots from the series branches, the small one from the 4F3 form
        branches = [series_root(problem, j, config) for j in range(N - 1)]
        small = quintic_small_root(problem.t, config)
        return RootSet.build(
            problem,
            [r.value for r in branches] + [small.value],
            [f"series-branch-{j}" for j in range(N - 1)] + ["closed-form"],
            [r.terms_used for r in branches] + [small.terms_used],
        )
    raise UsageError(f"no closed form for degree {N} (available: 2, 3, 5)")


def solve(problem: TrinomialProblem, method: str, config: SolverConfig, fallback=False) -> Solution:
    """Solve with ``method``; OutsideRadiusError propagates unless ``fallback``."""
    if method == "auto":
        method = "closed-form" if problem.degree in (2, 3) else "series"
        fallback = True
    try:
        if method == "series":
            roots = all_roots_series(problem, config)
        elif method == "decomposition":
            roots = all_roots_decomposition(problem, config)
        elif method == "closed-form":
            roots = _closed_form(problem, config)
        elif method == "oracle":
            roots = oracle_roots(problem)
        else:
            raise UsageError(f"unknown method {method!r}")
    except OutsideRadiusError:
        if not fallback:
            raise
        return Solution(oracle_roots(problem), "oracle")
    return Solution(roots, method)


def solution_document(solution: Solution) -> dict:
    rs = solution.roots
    return {
        "metadata": {
            "degree": rs.degree,
            "t": {"re": rs.t.real, "im": rs.t.imag},
            "method": solution.method,
            "radius": convergence_radius(rs.degree),
            "terms_used": solution.terms_used,
        },
        "roots": [
            {"re": x.real, "im": x.imag, "residual": r, "provenance": p}
            for x, r, p in zip(rs.roots, rs.residuals, rs.provenance)
        ],
    }


def _csv_rows(t, method, roots=None, terms=None, converged=True, indices=None):
    if roots is None:
        return [[fmt17(t.real), fmt17(t.imag), method, "", "", "", "", "0", "false"]]
    rows = []
    for k, (x, res) in enumerate(roots):
        rows.append([
            fmt17(t.real), fmt17(t.imag), method,
            str(indices[k] if indices else k), fmt17(x.real), fmt17(x.imag),
            fmt17(res), str(terms[k] if terms else 0), "true" if converged else "false",
        ])
    return rows


def _solution_rows(solution: Solution):
    rs = solution.roots
    return _csv_rows(rs.t, solution.method, list(zip(rs.roots, rs.residuals)), rs.terms_used)


def render_solution(solution: Solution, output_format: str) -> str:
    if output_format == "json":
        return dump_json(solution_document(solution)) + "\n"
    if output_format == "csv":
        return _csv_text([CSV_HEADER] + _solution_rows(solution))
    rs = solution.roots
    radius = convergence_radius(rs.degree)
    lines = [
        f"x^{rs.degree} - x + t = 0 with t = {_complex_text(rs.t)}",
        f"method {solution.method}, terms used {solution.terms_used}, "
        f"radius {fmt12(radius)}, |t|/radius {fmt12(abs(rs.t) / radius)}",
    ]
    for k, (x, r, p, m) in enumerate(zip(rs.roots, rs.residuals, rs.provenance, rs.multiplicity)):
        note = f"  (multiplicity {m})" if m > 1 else ""
        lines.append(f"x[{k}] = {_complex_text(x)}  residual {fmt12(r)}  [{p}]{note}")
    return "\n".join(lines) + "\n"


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- commands

def cmd_solve(args, config, out, err) -> int:
    problem = TrinomialProblem(args.degree, complex(args.t, args.t_im))
    try:
        solution = solve(problem, args.method, config, fallback=args.fallback)
    except OutsideRadiusError as exc:
        err.write(f"outside radius: {exc}\n")
        return EXIT_OUTSIDE_RADIUS
    except TrinomialError as exc:
        err.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    out.write(render_solution(solution, args.format))
    if solution.roots.max_residual > config.residual_tol:
        err.write(
            f"residual {solution.roots.max_residual:.3g} exceeds {config.residual_tol:g}\n"
        )
        return EXIT_NUMERIC
    return EXIT_OK


def _verify_methods(N, requested):
    for method in requested:
        if method == "closed-form" and N not in CLOSED_FORM_DEGREES:
            continue
        yield method


def cmd_verify(args, config, out, err) -> int:
    skip_outside = args.allow_skip or args.allow_oracle_only
    records = []
    for N in args.degrees:
        for t in args.t_grid:
            problem = TrinomialProblem(N, t)
            try:
                reference = oracle_roots(problem)
            except TrinomialError as exc:
                records.append(dict(degree=N, t=problem.t, method="oracle", status="error",
                                    distance=math.inf, detail=str(exc)))
                continue
            for method in _verify_methods(N, args.methods):
                record = dict(degree=N, t=problem.t, method=method)
                try:
                    roots = solve(problem, method, config).roots
                except OutsideRadiusError as exc:
                    record.update(status="skipped" if skip_outside else "outside-radius",
                                  distance=math.nan, detail=str(exc))
                except TrinomialError as exc:
                    record.update(status="error", distance=math.inf, detail=str(exc))
                else:
                    distance = match_roots(roots, reference).max_distance
                    ok = distance <= config.residual_tol
                    record.update(status="ok" if ok else "mismatch", distance=distance, detail="")
                records.append(record)

    failures = [r for r in records if r["status"] in ("mismatch", "error")]
    outside = [r for r in records if r["status"] == "outside-radius"]
    _write_verify(records, args.format, out)
    if failures:
        worst = max(failures, key=lambda r: r["distance"])
        err.write(
            f"{len(failures)} case(s) failed; worst: N={worst['degree']} "
            f"t={_complex_text(worst['t'])} method={worst['method']} "
            f"distance={worst['distance']:.3g} {worst['detail']}\n"
        )
        return EXIT_MISMATCH
    if outside:
        err.write(f"{len(outside)} case(s) outside the series radius (use --allow-skip)\n")
        return EXIT_OUTSIDE_RADIUS
    return EXIT_OK


def _write_verify(records, output_format, out):
    if output_format == "json":
        doc = [
            {
                "degree": r["degree"],
                "t": {"re": r["t"].real, "im": r["t"].imag},
                "method": r["method"],
                "status": r["status"],
                "max_distance": None if not math.isfinite(r["distance"]) else r["distance"],
            }
            for r in records
        ]
        out.write(dump_json(doc) + "\n")
    elif output_format == "csv":
        rows = [("degree", "t_re", "t_im", "method", "status", "max_distance")]
        rows += [
            (r["degree"], fmt17(r["t"].real), fmt17(r["t"].imag), r["method"], r["status"],
             fmt17(r["distance"]) if math.isfinite(r["distance"]) else "")
            for r in records
        ]
        out.write(_csv_text(rows))
    else:
        for r in records:
            dist = fmt12(r["distance"]) if math.isfinite(r["distance"]) else "-"
            out.write(
                f"N={r['degree']} t={_complex_text(r['t'])} {r['method']:<13} "
                f"max_distance={dist} {r['status']}\n"
            )


def sweep_rows(degree, t_values, config):
    rows = []
    for t in t_values:
        problem = TrinomialProblem(degree, t)
        for method in ("series", "decomposition"):
            try:
                rows += _solution_rows(solve(problem, method, config))
            except TrinomialError:
                rows += _csv_rows(problem.t, method)
        if degree in (2, 3):
            rows += _solution_rows(solve(problem, "closed-form", config))
        elif degree == 5:
            try:
                small = quintic_small_root(problem.t, config)
            except TrinomialError:
                rows += _csv_rows(problem.t, "closed-form")
            else:
                rows += _csv_rows(problem.t, "closed-form",
                                  [(small.value, problem.residual(small.value))],
                                  [small.terms_used], small.converged, indices=[degree - 1])
        try:
            rows += _solution_rows(solve(problem, "oracle", config))
        except TrinomialError:
            rows += _csv_rows(problem.t, "oracle")
    return rows


def cmd_sweep(args, config, out, err) -> int:
    if args.steps == 1:
        t_values = [args.t_min]
    else:
        step = (args.t_max - args.t_min) / (args.steps - 1)
        t_values = [args.t_min + k * step for k in range(args.steps)]
    t_values = [complex(t, args.t_im) for t in t_values]
    out.write(_csv_text([CSV_HEADER] + sweep_rows(args.degree, t_values, config)))
    return EXIT_OK


def decomposition_document(N: int) -> dict:
    classes = []
    for q in range(N - 1):
        spec = class_parameters(N, q)
        classes.append({
            "q": q,
            "coefficient": f"-t/{N - 1} * (omega t)^{q} * c_{q}",
            "c": gamma_ratio_term(N, q),
            "upper": [str(a) for a in spec.upper],
            "lower": [str(b) for b in spec.lower],
            "label": spec.label(argument_label(N)),
        })
    small = class_parameters(N, 0)
    scale = argument_scale(N)
    return {
        "degree": N,
        "argument": argument_label(N),
        "argument_scale": {"numerator": scale.numerator, "denominator": scale.denominator},
        "classes": classes,
        "small_root": {"coefficient": "t", "label": small.label(argument_label(N))},
    }


def cmd_decompose(args, config, out, err) -> int:
    doc = decomposition_document(args.degree)
    if args.format == "json":
        out.write(dump_json(doc) + "\n")
        return EXIT_OK
    N = args.degree
    lines = [
        f"x^{N} - x + t = 0, root near omega^-1 with omega^{N - 1} = 1:",
        f"  x = omega^-1 + sum over q of coefficient_q * F_q(z),  z = {doc['argument']}",
    ]
    for c in doc["classes"]:
        lines.append(f"  q={c['q']}: {c['coefficient']}, c_{c['q']} = {fmt12(c['c'])}")
        lines.append(f"       {c['label']}")
    lines.append(f"root near t: x = t * {doc['small_root']['label']}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parsing

_CONFIG_KEYS = {f.name for f in fields(SolverConfig)}


def load_config_file(path) -> dict:
    """Read ``key = value`` lines; blank lines and ``#`` comments are ignored."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: expected one of {sorted(_CONFIG_KEYS)} = value")
            values[key] = int(value) if key == "max_terms" else float(value)
    return values


def build_config(args) -> SolverConfig:
    config = SolverConfig()
    if args.config:
        config = replace(config, **load_config_file(args.config))
    overrides = {
        key: getattr(args, key) for key in _CONFIG_KEYS if getattr(args, key) is not None
    }
    return replace(config, **overrides)


def _degree(text):
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("degree must be >= 2")
    return value


def _degree_range(text):
    lo, sep, hi = text.partition("-")
    lo = _degree(lo)
    hi = _degree(hi) if sep else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return list(range(lo, hi + 1))


def _complex_list(text):
    try:
        return [complex(item.replace(" ", "")) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse t values {text!r}")


def _method_list(text):
    methods = [m.strip() for m in text.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS[:-1]:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}")
    return methods


def _steps(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("steps must be >= 1")
    return value


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="series truncation tolerance (1e-12)")
    common.add_argument("--residual-tol", dest="residual_tol", type=float,
                        help="largest acceptable |x^N - x + t| (1e-9)")
    common.add_argument("--max-terms", dest="max_terms", type=int, help="series term cap (100000)")
    common.add_argument("--radius-margin", dest="radius_margin", type=float,
                        help="fraction of the radius the series refuses (0.02)")
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--config", help="key=value file with solver settings")

    parser = _Parser(prog="trinomial", description="Roots of x^N - x + t = 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="all roots for one t")
    p.add_argument("--degree", type=_degree, required=True)
    p.add_argument("--t", type=float, required=True, help="real part of t")
    p.add_argument("--t-im", dest="t_im", type=float, default=0.0, help="imaginary part of t")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--fallback", action="store_true",
                   help="use the oracle when t is outside the series radius")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="compare every method with the oracle")
    p.add_argument("--degrees", type=_degree_range, default=_degree_range("2-5"),
                   help="degree or range, e.g. 2-5")
    p.add_argument("--t-grid", dest="t_grid", type=_complex_list,
                   default=_complex_list("0.05,0.1,0.15"), help="comma-separated t values")
    p.add_argument("--methods", type=_method_list,
                   default=["series", "decomposition", "closed-form"])
    p.add_argument("--allow-skip", dest="allow_skip", action="store_true",
                   help="report t outside the series radius as skipped")
    p.add_argument("--allow-oracle-only", dest="allow_oracle_only", action="store_true",
                   help="same as --allow-skip")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="CSV rows over a range of real t")
    p.add_argument("--degree", type=_degree, required=True)
    p.add_argument("--t-min", dest="t_min", type=float, required=True)
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--t-im", dest="t_im", type=float, default=0.0)
    p.add_argument("--steps", type=_steps, required=True)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("decompose", parents=[common], help="hypergeometric form of each root")
    p.add_argument("--degree", type=_degree, required=True)
    p.set_defaults(handler=cmd_decompose)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, bad arguments exit with EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config = build_config(args)
        return args.handler(args, config, out, err)
    except (UsageError, ValueError, OSError) as exc:
        err.write(f"trinomial: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
