"""``fdcell`` command-line front end.

Exit codes: 0 success, 2 invalid arguments, 3 unwritable output,
4 planner infeasible or enumeration cap hit, 5 decode shortfall.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import formulas as fm
from . import lp
from .errors import EnumerationCapError, FeasibilityError, RegimeError
from .network import NetworkConfig, SelfInterference

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNWRITABLE = 3
EXIT_INFEASIBLE = 4
EXIT_SHORTFALL = 5

_FORMULAS = (
    ("fd_lower", fm.dof_fd_achievable),
    ("fd_upper", fm.dof_fd_upper),
    ("hd", fm.dof_hd),
    ("no_bs2bs", fm.dof_no_bs2bs),
    ("self_interference", fm.dof_self_interference),
)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _config(args):
    try:
        return NetworkConfig(args.k, args.m, args.n)
    except (TypeError, ValueError) as exc:
        raise CliError(str(exc), EXIT_INVALID) from None


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_UNWRITABLE) from None


def _dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def dof_values(config):
    """Name -> :class:`DofValue` for every closed form."""
    return {name: fn(config) for name, fn in _FORMULAS}


def cmd_dof(args):
    config = _config(args)
    values = dof_values(config)
    tight = values["fd_lower"].value == values["fd_upper"].value
    if args.format == "json":
        out = {"config": config.as_dict(), "tight": tight}
        out.update({name: v.as_dict() for name, v in values.items()})
        _write(_dumps(out), None)
        return EXIT_OK
    lines = [f"K={config.K} M={config.M} N={config.N}"]
    for name, v in values.items():
        lines.append(f"{name:<18} {str(v.value):>10} {float(v.value):>12.6f}  {v.regime}")
    if tight:
        lines.append("tight: achievable sum DoF meets the upper bound")
    _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def parse_range(text):
    """``start:end[:step]`` inclusive, step >= 1."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise CliError(f"range {text!r} is not start:end[:step]", EXIT_INVALID)
    try:
        start, end = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise CliError(f"range {text!r} has non-integer bounds", EXIT_INVALID) from None
    if step < 1 or end < start:
        raise CliError(f"range {text!r} is empty or has step < 1", EXIT_INVALID)
    return list(range(start, end + 1, step))


def sweep_rows(var, values, fixed):
    """Rows of the sweep CSV as dicts (fractions kept exact)."""
    rows = []
    for x in values:
        params = dict(fixed)
        params[var] = x
        config = NetworkConfig(params["K"], params["M"], params["N"])
        vals = dof_values(config)
        rows.append({"config": config, "values": vals})
    return rows


SWEEP_HEADER = ["K", "M", "N"] + [n for n, _ in _FORMULAS] + ["regime"] + [
    f"{n}_exact" for n, _ in _FORMULAS
]


def render_sweep(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        c, vals = row["config"], row["values"]
        writer.writerow(
            [c.K, c.M, c.N]
            + [f"{float(v.value):.6f}" for v in vals.values()]
            + [vals["fd_lower"].regime]
            + [fm.fraction_str(v.value) for v in vals.values()]
        )
    return buf.getvalue()


def cmd_sweep(args):
    fixed = {"K": args.k, "M": args.m, "N": args.n}
    missing = [k for k, v in fixed.items() if v is None and k != args.var]
    if missing:
        raise CliError(f"sweep over {args.var} needs fixed values for {', '.join(missing)}", EXIT_INVALID)
    values = parse_range(args.range)
    try:
        rows = sweep_rows(args.var, values, fixed)
    except (TypeError, ValueError) as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    _write(render_sweep(rows), args.out)
    return EXIT_OK


_LP_SCHEMES = {"1": lp.Scheme.SCHEME1, "2": lp.Scheme.SCHEME2, "nobs": lp.Scheme.NO_BS2BS}


def cmd_lp(args):
    config = _config(args)
    try:
        sol = lp.solve_scheme(config, _LP_SCHEMES[args.scheme])
    except RegimeError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    _write(_dumps(sol.as_dict()), None)
    return EXIT_OK


def cmd_verify(args):
    from . import verify
    from .scheme1 import dump_beams

    config = _config(args)
    for name in ("t", "tdl"):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise CliError(f"--{name} must be >= 1", EXIT_INVALID)
    if not args.rel_tol > 0:
        raise CliError("--rel-tol must be positive", EXIT_INVALID)
    si = SelfInterference.PRESENT if args.self_interference else SelfInterference.SUPPRESSED

    try:
        if args.scheme == "1":
            report, beams, _ = verify.run_scheme1(
                config, args.t, args.tdl, seed=args.seed, rel_tol=args.rel_tol, mode=si,
                cap=args.enum_cap, return_beams=True,
            )
        else:
            report, beams, _ = verify.run_scheme2(
                config, args.t, args.mode, seed=args.seed, rel_tol=args.rel_tol, si_mode=si,
                cap=args.enum_cap, return_beams=True,
            )
    except (EnumerationCapError, FeasibilityError, RegimeError) as exc:
        failure = {
            "scheme": f"scheme{args.scheme}",
            "config": config.as_dict(),
            "t": args.t,
            "tdl": args.tdl,
            "seed": args.seed,
            "error": str(exc),
        }
        if args.out:
            _write(_dumps(failure), args.out)
        print(f"fdcell: planning failed: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    text = _dumps(report.as_dict())
    _write(text, args.out)
    if args.out:
        achieved, limit, _ = verify.achieved_dof(report)
        print(f"achieved {achieved} (limit {limit}), {report.total_decodable}/{report.total_planned} streams")
    if args.dump_beams:
        _write(_dumps(dump_beams(beams)), args.dump_beams)
    return EXIT_OK if report.complete else EXIT_SHORTFALL


def _cell_args(p, required=True):
    p.add_argument("--k", type=int, required=required, help="number of cells")
    p.add_argument("--m", type=int, required=required, help="antennas per BS")
    p.add_argument("--n", type=int, required=required, help="UL (and DL) users per cell")


def build_parser():
    parser = argparse.ArgumentParser(prog="fdcell", description="Sum-DoF tools for full-duplex cellular networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dof", help="closed-form sum DoF of one configuration")
    _cell_args(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_dof)

    p = sub.add_parser("sweep", help="CSV of closed forms over one parameter")
    p.add_argument("--var", choices=("K", "M", "N"), required=True)
    p.add_argument("--range", required=True, help="start:end[:step], inclusive")
    _cell_args(p, required=False)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lp", help="solve a scheme's (lambda1, lambda2) program")
    p.add_argument("--scheme", choices=tuple(_LP_SCHEMES), required=True)
    _cell_args(p)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("verify", help="build beams on random channels and check decodability")
    p.add_argument("--scheme", choices=("1", "2"), required=True)
    _cell_args(p)
    p.add_argument("--t", type=int, required=True, help="UL exponent cap T")
    p.add_argument("--tdl", type=int, help="DL exponent cap (scheme 1; omit for UL only)")
    p.add_argument("--mode", choices=("paper", "conservative"), default="conservative",
                   help="scheme-2 planning budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--self-interference", action="store_true",
                   help="keep BS self-interference channels")
    p.add_argument("--enum-cap", type=int, help="enumeration cap (default $FDCELL_ENUM_CAP or 10^6)")
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.add_argument("--dump-beams", help="write a beam debug dump to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"fdcell: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
