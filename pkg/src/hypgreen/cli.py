"""Command-line driver: Green's function tables, verification, bound tables.

Subcommands:

  green         emit (rho, green, bound, gap) rows for one (n, k)
  verify        run the named identity checks and report residuals
  lambda-table  emit the Hardy-term coefficient lower bounds

Output is CSV (default) or JSON; floating values are printed with 17
significant digits and a '.' decimal point, so identical invocations
produce byte-identical output.  Exit codes: 0 success, 1 verification
failure, 2 usage or parameter error.  An optional config file in
key=value format supplies defaults; command-line flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .green import gjms_green, gjms_green_bound, gjms_green_gap
from .mazya import hardy_bound_rows
from .verify import CHECK_NAMES, run_checks

_USAGE_ERROR = 2
_VERIFY_ERROR = 1


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _emit(rows, header, fmt, out_path, config, residuals=None, passed=True):
    """Write rows as CSV or schema'd JSON to out_path (default stdout)."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([c if isinstance(c, str) else _fmt(c) for c in row])
        text = buf.getvalue()
    else:
        payload = {
            "config": config,
            "rows": [dict(zip(header, row)) for row in rows],
            "residuals": residuals or {},
            "pass": bool(passed),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rho_grid(args) -> np.ndarray:
    if args.rho_min <= 0 or args.rho_max <= args.rho_min or args.rho_count < 1:
        raise ValueError("rho grid requires 0 < rho-min < rho-max and count >= 1")
    if args.rho_spacing == "geometric":
        return np.geomspace(args.rho_min, args.rho_max, args.rho_count)
    return np.linspace(args.rho_min, args.rho_max, args.rho_count)


def _cmd_green(args) -> int:
    if args.n is None or args.k is None:
        raise ValueError("green requires --n and --k (flags or config file)")
    rho = _rho_grid(args)
    green = np.atleast_1d(gjms_green(args.n, args.k, rho))
    bound = np.atleast_1d(gjms_green_bound(args.n, args.k, rho))
    gap = np.atleast_1d(gjms_green_gap(args.n, args.k, rho))
    rows = [(r, g, b, d) for r, g, b, d in zip(rho, green, bound, gap)]
    config = {
        "command": "green", "n": args.n, "k": args.k,
        "rho_min": args.rho_min, "rho_max": args.rho_max,
        "rho_count": args.rho_count, "rho_spacing": args.rho_spacing,
    }
    _emit(rows, ["rho", "green", "bound", "gap"], args.format, args.out, config)
    return 0


def _cmd_verify(args) -> int:
    only = None
    if args.only:
        only = [name for chunk in args.only for name in chunk.split(",") if name]
    results = run_checks(only=only, tol=args.tol)
    rows = [(r.name, "pass" if r.passed else "FAIL", r.residual, r.tol) for r in results]
    residuals = {r.name: r.residual for r in results}
    all_pass = all(r.passed for r in results)
    config = {"command": "verify", "only": only, "tol": args.tol}
    _emit(rows, ["check", "status", "max_residual", "tol"], args.format, args.out,
          config, residuals=residuals, passed=all_pass)
    for r in results:
        if not r.passed:
            print(f"FAIL {r.name}: residual {r.residual:.3e} exceeds tol {r.tol:.3e}",
                  file=sys.stderr)
    return 0 if all_pass else _VERIFY_ERROR


def _cmd_lambda_table(args) -> int:
    if not 2 <= args.k_min <= args.k_max:
        raise ValueError("requires 2 <= k-min <= k-max")
    rows = hardy_bound_rows(args.k_min, args.k_max)
    config = {"command": "lambda-table", "k_min": args.k_min, "k_max": args.k_max}
    _emit(rows, ["n", "k", "lower_bound", "neg_hardy_coeff", "closed_form", "status"],
          args.format, args.out, config)
    return 0


def _add_common(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--config", default=None,
                        help="key=value file supplying defaults for any flag")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypgreen",
        description="Green's functions of GJMS/product operators on hyperbolic space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_green = sub.add_parser("green", help="tabulate a GJMS Green's function and its bound")
    p_green.add_argument("--n", type=int, default=None)
    p_green.add_argument("--k", type=int, default=None)
    p_green.add_argument("--rho-min", type=float, default=1e-2)
    p_green.add_argument("--rho-max", type=float, default=20.0)
    p_green.add_argument("--rho-count", type=int, default=40)
    p_green.add_argument("--rho-spacing", choices=("geometric", "linear"),
                         default="geometric")
    _add_common(p_green)
    p_green.set_defaults(func=_cmd_green)

    p_verify = sub.add_parser("verify", help="run the identity-check battery")
    p_verify.add_argument("--only", action="append", default=None,
                          metavar="NAME[,NAME...]",
                          help=f"subset of checks; known: {', '.join(CHECK_NAMES)}")
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override every check tolerance")
    _add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser("lambda-table",
                             help="tabulate Hardy-term coefficient lower bounds")
    p_table.add_argument("--k-min", type=int, default=2)
    p_table.add_argument("--k-max", type=int, default=5)
    _add_common(p_table)
    p_table.set_defaults(func=_cmd_lambda_table)
    return parser


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


_CONFIG_TYPES = {
    "n": int, "k": int, "rho_min": float, "rho_max": float, "rho_count": int,
    "rho_spacing": str, "format": str, "out": str, "tol": float,
    "only": str, "k_min": int, "k_max": int,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        # Apply config-file defaults before parsing so flags override them.
        if "--config" in argv:
            cfg_path = argv[argv.index("--config") + 1]
            raw = _load_config_file(cfg_path)
            defaults = {}
            for key, value in raw.items():
                if key not in _CONFIG_TYPES:
                    raise ValueError(f"unknown config key {key!r}")
                caster = _CONFIG_TYPES[key]
                defaults[key] = [value] if key == "only" else caster(value)
            for action in parser._subparsers._group_actions[0].choices.values():
                action.set_defaults(**{
                    k: v for k, v in defaults.items()
                    if any(a.dest == k for a in action._actions)
                })
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
