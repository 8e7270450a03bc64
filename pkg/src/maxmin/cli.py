"""Command-line front end.

Exit codes: 0 success, 1 domain error (e.g. no solution), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import io
from .apps import load_fixture, solve_geolocation, solve_quadratic_energy
from .errors import MatrixParseError, MaxminError
from .linalg import DEFAULT_TOL, ToleranceConfig, null_space
from .solver import existence_check, solve
from .suppvec import supporting_vectors

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    tol_override: Optional[float] = None
    json_path: Optional[str] = None
    scatter_path: Optional[str] = None
    fixture_flag: bool = False

    def __post_init__(self):
        if self.tol_override is not None and not self.tol_override > 0:
            raise UsageError(f"--tol must be strictly positive, got {self.tol_override}")

    def tolerances(self) -> ToleranceConfig:
        if self.tol_override is None:
            return DEFAULT_TOL
        try:
            return replace(DEFAULT_TOL, range_membership_tol=self.tol_override)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _vec(x) -> str:
    return "[" + ", ".join(io.format_number(v) for v in np.asarray(x).ravel()) + "]"


def _print_solution(sol, out):
    print(f"optimal_value: {io.format_number(sol.optimal_value)}", file=out)
    print(f"case_used: {sol.case_used}", file=out)
    if sol.selected_indices:
        print(f"selected_indices: {sol.selected_indices}", file=out)
    for x in sol.solutions:
        print(f"x0: {_vec(x)}", file=out)


def cmd_check(args, cfg, out):
    A, B = io.read_matrix(args.A), io.read_matrix(args.B)
    tol = cfg.tolerances()
    ok = existence_check(A, B, tol)
    print(f"solvable: {'true' if ok else 'false'}", file=out)
    print(f"dim_ker_A: {null_space(A, tol).shape[1]}", file=out)
    print(f"dim_ker_B: {null_space(B, tol).shape[1]}", file=out)
    return EXIT_OK


def cmd_solve(args, cfg, out):
    sol = solve(io.read_matrix(args.A), io.read_matrix(args.B), cfg.tolerances())
    _print_solution(sol, out)
    if cfg.json_path:
        io.write_json(cfg.json_path, sol.to_dict())
    return EXIT_OK


def cmd_suppvec(args, cfg, out):
    tol = cfg.tolerances()
    res = supporting_vectors([io.read_matrix(p) for p in args.matrices], tol)
    print(f"lambda_max: {io.format_number(res.lambda_max)}", file=out)
    print(f"used_special_case: {'true' if res.used_special_case else 'false'}", file=out)
    for j in range(res.basis.shape[1]):
        print(f"v: {_vec(res.basis[:, j])}", file=out)
    if cfg.json_path:
        io.write_json(cfg.json_path, {**res.to_dict(), "tolerances": tol.as_dict()})
    return EXIT_OK


def cmd_energy(args, cfg, out):
    sol = solve_quadratic_energy(io.read_matrix(args.E1), io.read_matrix(args.E2), io.read_matrix(args.L), cfg.tolerances())
    _print_solution(sol, out)
    if cfg.json_path:
        io.write_json(cfg.json_path, sol.to_dict())
    return EXIT_OK


def cmd_geoloc(args, cfg, out):
    if cfg.fixture_flag == (args.data is not None):
        raise UsageError("geoloc needs exactly one of <data.csv> or --fixture")
    data = load_fixture() if cfg.fixture_flag else io.read_geo_csv(args.data)
    report = solve_geolocation(data, cfg.tolerances())
    print(f"weights: {_vec(report.weights)}", file=out)
    print("rank,site,ax,bx,score", file=out)
    by_name = {s.name: s for s in report.sites}
    for i, name in enumerate(report.ranking, start=1):
        s = by_name[name]
        print(f"{i},{name},{s.ax:.6f},{s.bx:.6f},{s.score:.6f}", file=out)
    if cfg.json_path:
        io.write_json(cfg.json_path, report.to_dict())
    if cfg.scatter_path:
        io.write_scatter(cfg.scatter_path, report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxmin", description="Exact solutions of max ||Ax|| subject to ||Bx|| <= 1.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test whether ker(B) is contained in ker(A)")
    c.add_argument("A")
    c.add_argument("B")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="solve max ||Ax|| s.t. ||Bx|| <= 1")
    s.add_argument("A")
    s.add_argument("B")
    s.add_argument("--tol", type=float, help="range-membership tolerance (default 1e-10)")
    s.add_argument("--json", dest="json_path")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("suppvec", help="supporting vectors of one or more matrices")
    v.add_argument("matrices", nargs="+")
    v.add_argument("--json", dest="json_path")
    v.set_defaults(func=cmd_suppvec)

    e = sub.add_parser("energy", help="max ||E1 psi|| s.t. ||E2 psi||^2 + psi'L psi <= 1")
    e.add_argument("E1")
    e.add_argument("E2")
    e.add_argument("L")
    e.add_argument("--json", dest="json_path")
    e.set_defaults(func=cmd_energy)

    g = sub.add_parser("geoloc", help="score sites from winter/summer climate data")
    g.add_argument("data", nargs="?")
    g.add_argument("--fixture", action="store_true", help="use the packaged 16-site table")
    g.add_argument("--json", dest="json_path")
    g.add_argument("--scatter", dest="scatter_path", help="write site,ax,bx,score rows")
    g.set_defaults(func=cmd_geoloc)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CliConfig(
            tol_override=getattr(args, "tol", None),
            json_path=getattr(args, "json_path", None),
            scatter_path=getattr(args, "scatter_path", None),
            fixture_flag=getattr(args, "fixture", False),
        )
        return args.func(args, cfg, out)
    except (UsageError, MatrixParseError, OSError) as exc:
        print(f"ERROR: usage: {exc}", file=err)
        parser.print_usage(err)
        return EXIT_USAGE
    except MaxminError as exc:
        print(f"ERROR: {exc.code}: {exc}", file=err)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
