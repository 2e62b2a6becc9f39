"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments or domain
error, 3 output path not writable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import equilibria as eq
from . import stability, verify
from .errors import DomainError
from .kinematics import E_MAX, PhysicalParams

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

MACLAURIN_COLUMNS = ["e", "Omega2_over_piRhoG", "S1_over_R", "S2_over_R", "verdict"]
TRANSVERSAL_COLUMNS = ["e", "omega2_over_piRhoG", "phi_over_R", "trU_over_R",
                       "detU_e10_over_R2", "verdict"]


class _UsageError(Exception):
    pass


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise _UsageError(f"{name}={raw!r} is not a number") from None


def _params(args) -> PhysicalParams:
    rho = args.rho if args.rho is not None else _env_float("ELLIPSOID_RHO", 1.0)
    grav = args.grav if args.grav is not None else _env_float("ELLIPSOID_GRAV", 1.0)
    return PhysicalParams(rho, grav)


def _vec(v) -> str:
    return "(" + ", ".join(repr(float(x)) for x in v) + ")"


def _fmt(x) -> str:
    return format(float(x), ".17g")


# family

def format_state(state: eq.EquilibriumState, params: PhysicalParams) -> str:
    fam = state.family
    sph = state.sph
    lines = [f"family = {fam.value}", f"e = {state.e!r}",
             f"axes (a1, a2, a3) = {_vec(np.diag(state.F))}"]
    if fam is eq.Family.MACLAURIN:
        lines.append(f"Omega^2/(pi rho G) = {eq.maclaurin_omega2(state.e)!r}")
        lines.append(f"Omega = {state.rate!r}")
    elif fam.is_transversal:
        lines.append(f"omega^2/(pi rho G) = {eq.transversal_omega2(state.e, fam.sign)!r}")
        lines.append(f"omega = {state.rate!r}")
        lines.append(f"f = {state.f!r}")
    lines.append(f"xi_L = {_vec(state.xi.xi_L)}")
    lines.append(f"xi_R = {_vec(state.xi.xi_R)}")
    lines.append(f"lambda = {state.lam!r}")
    if not np.any(state.mu.as_vector()):
        lines.append("mu = (0, 0)")
    else:
        lines.append(f"mu = (j, c) = ({_vec(state.mu.j)}, {_vec(state.mu.c)})")
    for key, value in state.isotropy.items():
        lines.append(f"{key} = {value}")
    lines.append(f"shape = {sph.kind.value}")
    return "\n".join(lines)


def cmd_family(args) -> int:
    params = _params(args)
    fam = eq.Family.parse(args.name)
    state = eq.build(fam, args.e if fam is not eq.Family.SPHERICAL else 0.0, params)
    print(format_state(state, params))
    return EXIT_OK


# stability

def format_report(rep: stability.StabilityReport) -> str:
    d = rep.to_dict()
    lines = [f"family = {d['family']}", f"e = {d['e']!r}", f"verdict = {d['verdict']}"]
    for key in ("s1", "s2", "phi", "trU", "detU"):
        if d[key] is not None:
            lines.append(f"{key} = {d[key]!r}  ({d['r_units'][key]!r} in R units)")
    if rep.U is not None:
        lines.append(f"U = {rep.U.tolist()!r}")
    lines.append(f"arnold eigenvalues = {d['arnold_eigenvalues']!r}")
    lines.append(f"hessian eigenvalues = {d['hessian_eigenvalues']!r}")
    lines.append(f"hessian margin = {d['hessian_margin']!r}")
    lines.append(f"correction included = {d['correction_included']}")
    if d["lh_eigenvalues"] is not None:
        for ev in d["lh_eigenvalues"]:
            lines.append(f"{ev['label']} = {complex(ev['re'], ev['im'])!r}"
                         f" (multiplicity {ev['multiplicity']})")
    return "\n".join(lines)


def cmd_stability(args) -> int:
    params = _params(args)
    fam = eq.Family.parse(args.name)
    rep = stability.stability_report(fam, args.e if fam is not eq.Family.SPHERICAL else 0.0,
                                     params)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(format_report(rep))
    return EXIT_OK


# scan

def scan_row(family: eq.Family, e: float) -> list:
    """One scan row; every column is independent of rho and G."""
    unit = PhysicalParams()
    rep = stability.stability_report(family, e, unit)
    R = unit.R
    if family is eq.Family.MACLAURIN:
        return [e, eq.maclaurin_omega2(e), rep.s1 / R, rep.s2 / R, rep.verdict.value]
    return [e, eq.transversal_omega2(e, family.sign), rep.phi / R, rep.trU / R,
            e ** 10 * rep.detU / R ** 2, rep.verdict.value]


def scan_grid(e_min: float, e_max: float, steps: int) -> list[float]:
    if steps < 2:
        raise DomainError("steps must be at least 2")
    if not (0 < e_min < e_max <= E_MAX):
        raise DomainError(f"need 0 < e_min < e_max <= {E_MAX}")
    return [round(float(x), 12) for x in np.linspace(e_min, e_max, steps)]


def run_scan(family, e_min: float, e_max: float, steps: int, jobs: int = 1) -> tuple[list, list]:
    family = eq.Family.parse(family)
    if family is eq.Family.SPHERICAL:
        raise DomainError("the spherical family has no eccentricity to scan")
    grid = scan_grid(e_min, e_max, steps)
    cols = MACLAURIN_COLUMNS if family is eq.Family.MACLAURIN else TRANSVERSAL_COLUMNS
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(scan_row, [family] * len(grid), grid))
    else:
        rows = [scan_row(family, e) for e in grid]
    return cols, rows


def to_csv(cols, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([x if isinstance(x, str) else _fmt(x) for x in row])
    return buf.getvalue()


def to_json(family, cols, rows) -> str:
    return json.dumps({"family": eq.Family.parse(family).value, "columns": cols,
                       "rows": [dict(zip(cols, r)) for r in rows]}, indent=2)


def to_svg(family, cols, rows, width=360, height=240) -> str:
    """One small line plot per numeric column against e."""
    series = cols[1:-1]
    pad = 40
    total_h = height * len(series)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{width}" height="{total_h}">']
    es = [r[0] for r in rows]
    x0, x1 = min(es), max(es)
    for k, name in enumerate(series):
        ys = [r[k + 1] for r in rows]
        lo, hi = min(ys + [0.0]), max(ys + [0.0])
        if hi == lo:
            hi = lo + 1.0
        top = k * height

        def px(x):
            return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

        def py(y):
            return top + height - pad - (y - lo) / (hi - lo) * (height - 2 * pad)

        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(es, ys))
        out.append(f'<g><rect x="{pad}" y="{top + pad}" width="{width - 2 * pad}" '
                   f'height="{height - 2 * pad}" fill="none" stroke="#999"/>')
        out.append(f'<line x1="{pad}" y1="{py(0.0):.2f}" x2="{width - pad}" y2="{py(0.0):.2f}" '
                   f'stroke="#ccc"/>')
        out.append(f'<polyline fill="none" stroke="#1f4e9a" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{pad}" y="{top + pad - 8}" font-size="12">{name} vs e</text>')
        out.append(f'<text x="{pad}" y="{top + height - pad + 14}" font-size="10">{x0:.3g}</text>')
        out.append(f'<text x="{width - pad}" y="{top + height - pad + 14}" font-size="10" '
                   f'text-anchor="end">{x1:.3g}</text>')
        out.append(f'<text x="{pad - 4}" y="{py(hi):.2f}" font-size="10" '
                   f'text-anchor="end">{hi:.3g}</text>')
        out.append(f'<text x="{pad - 4}" y="{py(lo):.2f}" font-size="10" '
                   f'text-anchor="end">{lo:.3g}</text></g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_scan(args) -> int:
    _params(args)   # validates the unit flags; scan columns are dimensionless
    cols, rows = run_scan(args.name, args.e_min, args.e_max, args.steps, args.jobs)
    if args.format == "csv":
        text = to_csv(cols, rows)
    elif args.format == "json":
        text = to_json(args.name, cols, rows) + "\n"
    else:
        text = to_svg(args.name, cols, rows)
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# find-e0

def cmd_find_e0(args) -> int:
    if not args.tol > 0:
        raise DomainError("tolerance must be positive")
    r = stability.find_e0(_params(args), tol=args.tol)
    print(f"e0 = {r.e0:.6f}  ({r.e0!r})")
    print(f"c/a = {r.axis_ratio:.6f}  ({r.axis_ratio!r})")
    print(f"bracket = [{r.lo!r}, {r.hi!r}]")
    print(f"bracket width = {r.width:.3e}")
    print(f"iterations = {r.iterations}")
    return EXIT_OK


# verify

def cmd_verify(args) -> int:
    only = None
    if args.only:
        only = [s for chunk in args.only for s in chunk.split(",") if s]
    try:
        checks, elapsed = verify.run(only, perturb=args.inject_perturbation,
                                     params=_params(args))
    except KeyError as exc:
        raise _UsageError(exc.args[0]) from None
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.suite:<10} {c.name:<{width}}  {c.detail}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed in {elapsed:.1f} s")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="riemann-spheroids",
                                description="Equilibria and stability of self-gravitating "
                                            "fluid spheroids.")
    p.add_argument("--rho", type=float, default=None,
                   help="density (default $ELLIPSOID_RHO or 1)")
    p.add_argument("--grav", type=float, default=None,
                   help="gravitational constant (default $ELLIPSOID_GRAV or 1)")
    sub = p.add_subparsers(dest="command", required=True)
    names = [f.value for f in eq.Family]

    s = sub.add_parser("family", help="solve a symmetric equilibrium")
    s.add_argument("name", choices=names)
    s.add_argument("--e", type=float, default=0.5)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("stability", help="stability report for an equilibrium")
    s.add_argument("name", choices=names)
    s.add_argument("--e", type=float, default=0.5)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stability)

    s = sub.add_parser("scan", help="tabulate a family over an eccentricity grid")
    s.add_argument("name", choices=names)
    s.add_argument("--e-min", type=float, default=0.05)
    s.add_argument("--e-max", type=float, default=0.95)
    s.add_argument("--steps", type=int, default=19)
    s.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    s.add_argument("--output", default=None, help="output file (default stdout)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("find-e0", help="critical MacLaurin eccentricity")
    s.add_argument("--tol", type=float, default=1e-15)
    s.set_defaults(func=cmd_find_e0)

    s = sub.add_parser("verify", help="run the oracle suites")
    s.add_argument("--only", action="append", metavar="SUITE",
                   help=f"suite(s) to run: {', '.join(verify.SUITES)}")
    s.add_argument("--inject-perturbation", nargs="?", type=float, const=1.01, default=1.0,
                   metavar="FACTOR", help="scale computed values (negative control)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_DOMAIN if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (DomainError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
