"""Command-line front end.

Every command produces one or more :class:`OutputRecord` objects and renders
them as JSON, CSV or text.  Exit codes: 0 success, 1 domain or usage error,
2 numerical non-convergence, 3 invariant failure.

Examples
--------
::

    poisson-green eval --dim 2 --p 0.2,0.1 --q 1.1,1.5 --L 10.7 --order 60
    poisson-green converge --dim 4 --p 0.5,0,0,0 --q 0,0,0,1 --orders 0:20
    poisson-green verify orthonormality --nmax 5
    poisson-green hydrogen --n 2 --l 1 --m 1 --p 0.1,0.2,0.3
    poisson-green coulomb --p 0.3,0,0 --q 0,0.2,0.1 --E -0.3 --method both
"""
from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import coulomb_green, green_kernels, hydrogen_momentum, verify
from .errors import DomainError, NonConvergenceError

__all__ = ["OutputRecord", "build_parser", "main", "render", "EXIT_OK", "EXIT_DOMAIN",
           "EXIT_NONCONVERGENCE", "EXIT_INVARIANT"]

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_NONCONVERGENCE = 2
EXIT_INVARIANT = 3


@dataclass
class OutputRecord:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    error: dict | None = None

    def to_dict(self):
        d = asdict(self)
        if d["error"] is None:
            del d["error"]
        return _jsonable(d)


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for non-convergence
    def error(self, message):
        raise UsageError(message)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def _vector(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"components must be finite, got {text!r}")
    return vals


def _order_range(text):
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 0 <= LO <= HI, got {text!r}")
    return lo, hi


# ---------------------------------------------------------------- commands

_EXPANSIONS = {
    2: (green_kernels.g2_closed, green_kernels.g2_expansion),
    3: (green_kernels.g3_closed, green_kernels.g3_expansion),
    4: (green_kernels.g4_closed, green_kernels.g4_expansion),
}


def _check_dim(args):
    for name in ("p", "q"):
        if len(getattr(args, name)) != args.dim:
            raise DomainError(f"--{name} needs {args.dim} components for --dim {args.dim}")


def _evaluate(args, order):
    closed_fn, exp_fn = _EXPANSIONS[args.dim]
    if args.dim == 2:
        closed = closed_fn(args.p, args.q, L=args.L)
        res = exp_fn(args.p, args.q, L=args.L, M=order)
    else:
        closed = closed_fn(args.p, args.q)
        res = exp_fn(args.p, args.q, order)
    return closed, res


def _geometry_inputs(args):
    d = {"dim": args.dim, "p": args.p, "q": args.q}
    if args.dim == 2:
        d["L"] = args.L
    return d


def cmd_eval(args):
    _check_dim(args)
    closed, res = _evaluate(args, args.order)
    out = {"closed": closed, "expansion": res.value, "tail_bound": res.tail_bound,
           "difference": abs(closed - res.value)}
    if args.dim == 2:
        mono = green_kernels.g2_expansion(args.p, args.q, L=args.L, M=0).value
        out["monopole"] = mono
        out["higher_orders"] = res.value - mono
    ratio = green_kernels.RadialPair.of(args.p, args.q).ratio
    return [OutputRecord("eval", {**_geometry_inputs(args), "order": args.order}, out,
                         {"order": res.order, "ratio": ratio})]


def cmd_converge(args):
    _check_dim(args)
    lo, hi = args.orders
    ratio = green_kernels.RadialPair.of(args.p, args.q).ratio
    records = []
    for order in range(lo, hi + 1):
        closed, res = _evaluate(args, order)
        records.append(OutputRecord(
            "converge", {**_geometry_inputs(args), "order": order},
            {"closed": closed, "expansion": res.value, "error": abs(closed - res.value),
             "tail_bound": res.tail_bound},
            {"order": order, "ratio": ratio}))
    return records


def cmd_verify(args):
    kwargs = {k: getattr(args, k, None) for k in ("nmax", "lmax", "eps", "n", "Z", "pairs", "seed")}
    allowed = inspect.signature(verify.SUITES[args.suite]).parameters
    report = verify.run_suite(args.suite, **{k: v for k, v in kwargs.items() if k in allowed})
    rec = OutputRecord("verify", {"suite": args.suite, **{k: v for k, v in kwargs.items()
                                                          if v is not None and k in allowed}},
                       {"max_residual": report.max_residual, "tolerance": report.tolerance},
                       {"passed": report.passed, **report.details})
    return [rec]


def cmd_hydrogen(args):
    if len(args.p) != 3:
        raise DomainError("--p needs 3 components")
    state = hydrogen_momentum.BoundStateIndex(args.n, args.l, args.m)
    psi = hydrogen_momentum.psi_momentum(state, np.array(args.p), args.Z)
    out = {"psi_re": psi.real, "psi_im": psi.imag}
    meta = {"representations": ["explicit"]}
    if args.Z == 1:
        alt = hydrogen_momentum.psi_via_ynlm(state, np.array(args.p), 1)
        out.update(psi_ynlm_re=alt.real, psi_ynlm_im=alt.imag,
                   representation_difference=abs(psi - alt))
        meta["representations"] = ["explicit", "ynlm"]
    return [OutputRecord("hydrogen", {"n": args.n, "l": args.l, "m": args.m, "p": args.p,
                                      "Z": args.Z}, out, meta)]


def cmd_coulomb(args):
    for name in ("p", "q"):
        if len(getattr(args, name)) != 3:
            raise DomainError(f"--{name} needs 3 components")
    params = coulomb_green.CoulombParams(E=args.E, Z=args.Z, mass=args.mass)
    methods = ["quadrature", "series"] if args.method == "both" else [args.method]
    out, meta = {}, {"nu": params.nu, "X": params.X}
    reports = []
    for method in methods:
        if method == "quadrature":
            rep = coulomb_green.coulomb_g_quadrature(args.p, args.q, params)
        else:
            rep = coulomb_green.coulomb_g_series(args.p, args.q, params)
        reports.append(rep)
        out[f"G_{method}"] = rep.value
        out[f"est_error_{method}"] = rep.est_error
        meta[f"{method}_method"] = rep.method
        meta[f"{method}_terms_or_nodes"] = rep.terms_or_nodes
    if len(reports) == 2:
        out["difference"] = abs(reports[0].value - reports[1].value)
        meta["agree_within_estimates"] = (
            out["difference"] <= reports[0].est_error + reports[1].est_error)
    inputs = {"p": args.p, "q": args.q, "E": args.E, "Z": args.Z, "mass": args.mass,
              "method": args.method}
    return [OutputRecord("coulomb", inputs, out, meta)]


# ---------------------------------------------------------------- rendering

def _fmt(value, digits=None):
    # digits=None gives the shortest round-trip representation
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value) if digits is None else format(value, f".{digits}g")
    if isinstance(value, list):
        return ",".join(_fmt(v, digits) for v in value)
    return str(value)


def _flatten(rec):
    d = rec.to_dict()
    flat = {"command": d["command"]}
    for section in ("inputs", "outputs", "metadata"):
        for k, v in d[section].items():
            flat[f"{section}.{k}"] = v
    if "error" in d:
        flat["error.type"] = d["error"]["type"]
        flat["error.message"] = d["error"]["message"]
    return flat


def render(records, fmt):
    """Serialize records; ``json`` uses round-trip float repr, ``text`` 6 digits."""
    if fmt == "json":
        payload = records[0].to_dict() if len(records) == 1 else [r.to_dict() for r in records]
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    rows = [_flatten(r) for r in records]
    if fmt == "csv":
        header = list(dict.fromkeys(k for row in rows for k in row))
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
        return buf.getvalue()
    lines = []
    for i, row in enumerate(rows):
        if i:
            lines.append("")
        width = max(len(k) for k in row)
        lines.extend(f"{k:<{width}}  {_fmt(v, 6)}" for k, v in row.items())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser():
    def output_options(suppress):
        # subcommands must not reset options given before the command name
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        group = argparse.ArgumentParser(add_help=False)
        group.add_argument("--format", choices=["json", "csv", "text"], default=default("text"))
        group.add_argument("--out", metavar="PATH", default=default(None),
                           help="write output to PATH instead of stdout")
        group.add_argument("--timing", action="store_true", default=default(False),
                           help="add elapsed seconds to metadata (breaks byte-identical output)")
        return group

    common = output_options(suppress=True)
    parser = _Parser(prog="poisson-green", description=__doc__.split("\n")[0],
                     parents=[output_options(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    geom = argparse.ArgumentParser(add_help=False)
    geom.add_argument("--dim", type=int, choices=[2, 3, 4], required=True)
    geom.add_argument("--p", type=_vector, required=True, help="first point, comma-separated")
    geom.add_argument("--q", type=_vector, required=True, help="second point, comma-separated")
    geom.add_argument("--L", type=float, default=1.0, help="2D length scale")

    p = sub.add_parser("eval", parents=[common, geom], help="closed form vs expansion")
    p.add_argument("--order", type=int, default=40, help="truncation order")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("converge", parents=[common, geom], help="error against truncation order")
    p.add_argument("--orders", type=_order_range, default=(0, 40), help="LO:HI inclusive")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--nmax", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--Z", type=int)
    p.add_argument("--pairs", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hydrogen", parents=[common], help="momentum-space wavefunction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=_vector, required=True)
    p.add_argument("--Z", type=int, default=1)
    p.set_defaults(func=cmd_hydrogen)

    p = sub.add_parser("coulomb", parents=[common], help="Coulomb Green function")
    p.add_argument("--p", type=_vector, required=True)
    p.add_argument("--q", type=_vector, required=True)
    p.add_argument("--E", type=float, required=True, help="negative energy (atomic units)")
    p.add_argument("--Z", type=int, default=1)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--method", choices=["quadrature", "series", "both"], default="both")
    p.set_defaults(func=cmd_coulomb)
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    fmt, out_path, command = "text", None, "unknown"
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        fmt, out_path, command = args.format, args.out, args.command
        records = args.func(args)
    except (DomainError, NonConvergenceError) as exc:
        code = EXIT_NONCONVERGENCE if isinstance(exc, NonConvergenceError) else EXIT_DOMAIN
        rec = OutputRecord(command, error={"type": type(exc).__name__, "message": str(exc),
                                           "exit_code": code})
        text = render([rec], fmt)
        if fmt == "text":
            sys.stderr.write(text)
        else:
            _emit(text, out_path)
        return code
    if args.timing:
        elapsed = time.perf_counter() - start
        for rec in records:
            rec.metadata["elapsed_s"] = elapsed
    _emit(render(records, fmt), out_path)
    if command == "verify" and not all(r.metadata.get("passed", True) for r in records):
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
