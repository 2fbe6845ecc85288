"""
Command-line entry point.

Exit status: 0 on success (or an all-pass suite), 1 on a mathematical failure
(axiom violations, incompatible grids, failed checks), 2 on usage or IO errors.
"""
import argparse
import sys
import time
from dataclasses import replace
from typing import Callable, List, Optional, Sequence

import numpy as np
import pandas as pd

from star_src.algebra.eset import ESETStructure, load_structure, validate
from star_src.algebra.twist import structure_diagnostics
from star_src.constants import *
from star_src.entity.config_entity import GridSpec, StarParams, SuiteConfig
from star_src.exception import (GridFormatError, StarParamsError, StarQuantError,
                                StructureLoadError, StructureShapeError,
                                SuiteConfigError, UnknownCheckError)
from star_src.geometry.phase import phase_S
from star_src.geometry.points import Point
from star_src.harness.fixtures import bump, gaussian, sample
from star_src.harness.suite import format_summary, run_suite
from star_src.logger import get_logger
from star_src.star.deformed import star_hbar
from star_src.star.weyl import weyl_product_fft, weyl_product_quad
from star_src.transform.fourier import partial_fourier, partial_fourier_inv
from star_src.transform.grid import PhaseSpaceGrid
from star_src.transform.intertwiner import T_hbar, tau_hbar
from star_src.utils.grid_io import read_grid, write_grid
from star_src.visualization.export import dump_csv

logger = get_logger(__name__, log_filename=CLI_LOG_FILENAME)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (StructureLoadError, StructureShapeError, GridFormatError, StarParamsError,
                SuiteConfigError, UnknownCheckError)


class UsageError(Exception):
    pass


def parse_floats(text: str) -> List[float]:
    try:
        return [float(token) for token in text.split()]
    except ValueError as e:
        raise UsageError(f"Could not parse numbers from '{text}'.") from e


def parse_points(text: str, n_a: int, n_l: int, count: int = 3) -> List[Point]:
    """'a l;a l;a l' with space-separated coordinates and semicolon-separated points."""
    chunks = [chunk for chunk in text.split(";") if chunk.strip()]
    if len(chunks) != count:
        raise UsageError(f"Expected {count} points, got {len(chunks)}.")
    points = []
    for chunk in chunks:
        values = parse_floats(chunk)
        if len(values) != n_a + n_l:
            raise UsageError(f"Point '{chunk.strip()}' has {len(values)} coordinates, expected {n_a + n_l}.")
        points.append(Point.from_array(values, n_a))
    return points


def parse_hbar_list(text: str) -> List[float]:
    try:
        values = [float(token) for token in text.replace(",", " ").split()]
    except ValueError as e:
        raise UsageError(f"Could not parse hbar list '{text}'.") from e
    if not values or any(h <= 0 for h in values):
        raise UsageError(f"hbar list must hold positive values, got '{text}'.")
    return values


def _check_hbar(flag: float, grids: Sequence[PhaseSpaceGrid]) -> None:
    for grid in grids:
        if not np.isclose(grid.hbar, flag, rtol=1e-12, atol=0):
            logger.warning("Grid metadata carries hbar=%g, using --hbar %g.", grid.hbar, flag)


def _finish(result: PhaseSpaceGrid, args: argparse.Namespace) -> None:
    write_grid(result, args.out)
    if args.dump_csv:
        dump_csv(result, args.dump_csv)


# -- subcommands --------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    e = load_structure(args.eset)
    violations = validate(e)
    if violations:
        for line in violations:
            print(line)
        return EXIT_FAILURE
    diagnostics = structure_diagnostics(e)
    print(f"{e.name}: valid (orientation {diagnostics['orientation']:+d}, "
          f"min jacobian {diagnostics['min_jacobian']:.6g}, hyperbolic {diagnostics['hyperbolic']})")
    return EXIT_OK


def cmd_phase(args: argparse.Namespace) -> int:
    e = load_structure(args.eset)
    x1, x2, x3 = parse_points(args.points, e.n_a, e.n_l)
    print(f"{phase_S(e, x1, x2, x3):#.15g}")
    return EXIT_OK


def cmd_star(args: argparse.Namespace) -> int:
    e = load_structure(args.eset)
    params = StarParams(hbar=args.hbar, method=args.method, interpolation=args.interp,
                        oversample=args.oversample)
    u, v = read_grid(args.u), read_grid(args.v)
    _check_hbar(args.hbar, (u, v))
    start = time.perf_counter()
    result = star_hbar(e, u, v, params)
    seconds = time.perf_counter() - start
    result = result.with_data(result.data, hbar=args.hbar)
    _finish(result, args)
    print(f"hbar={args.hbar:g} method={args.method} interp={args.interp} oversample={args.oversample} "
          f"counts={'x'.join(map(str, result.counts))} seconds={seconds:.2f}")
    return EXIT_OK


def cmd_weyl(args: argparse.Namespace) -> int:
    if args.stride < 1 or args.stride & (args.stride - 1):
        raise UsageError(f"--stride must be a power of two, got {args.stride}.")
    u, v = read_grid(args.u), read_grid(args.v)
    _check_hbar(args.hbar, (u, v))
    u, v = u.subsample(args.stride), v.subsample(args.stride)
    product = weyl_product_fft if args.path == "fft" else weyl_product_quad
    start = time.perf_counter()
    result = product(u, v, args.hbar)
    seconds = time.perf_counter() - start
    result = result.with_data(result.data, hbar=args.hbar)
    _finish(result, args)
    print(f"hbar={args.hbar:g} path={args.path} counts={'x'.join(map(str, result.counts))} seconds={seconds:.2f}")
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    e = load_structure(args.eset)
    overrides = {"seed": args.seed}
    if args.hbar_list:
        overrides["hbar_list"] = parse_hbar_list(args.hbar_list)
    if args.checks:
        overrides["checks"] = [name for item in args.checks for name in item.split(",") if name]
    config = SuiteConfig.from_yaml(args.config, **overrides)
    if args.grid:
        config = replace(config, grid=replace(config.grid, points_per_axis=args.grid))
    report = run_suite(e, config, progress=args.progress)
    if args.report:
        report.write(args.report)
    print(format_summary(report, args.report))
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_gen(args: argparse.Namespace) -> int:
    center = parse_floats(args.center)
    if not center or len(center) % 2:
        raise UsageError(f"--center needs 2n coordinates 'a l', got {len(center)}.")
    n = len(center) // 2
    if args.kind == "gaussian":
        func = gaussian(center[:n], center[n:], args.width, args.width)
    else:
        func = bump(center[:n], center[n:], radius=args.width)
    grid = sample(func, n, GridSpec(args.grid, args.extent, args.a_extent), args.hbar)
    write_grid(grid, args.out)
    print(f"kind={args.kind} n={n} counts={'x'.join(map(str, grid.counts))} hbar={args.hbar:g}")
    return EXIT_OK


def _timed(func: Callable[[], object], repeat: int) -> float:
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def cmd_bench(args: argparse.Namespace) -> int:
    rows = []
    try:
        e = load_structure(args.eset)
    except StarQuantError as err:
        print(f"bench: {err}")
        return EXIT_OK
    n = e.n_a
    params = StarParams(hbar=args.hbar)
    for points in args.sizes:
        spec = GridSpec(points, DEFAULT_EXTENT)
        u = sample(gaussian([0.0] * n, [0.0] * n, 1.0, 1.0), n, spec, args.hbar)
        v = sample(gaussian([0.3] * n, [-0.2] * n, 1.0, 1.0), n, spec, args.hbar)
        jobs = {
            "fourier_roundtrip": lambda: partial_fourier_inv(partial_fourier(u)),
            "T_tau": lambda: tau_hbar(e, T_hbar(e, u, args.hbar), args.hbar),
            "weyl_fft": lambda: weyl_product_fft(u, v, args.hbar),
            "star_conjugation": lambda: star_hbar(e, u, v, params),
        }
        if points <= args.kernel_limit:
            jobs["star_kernel"] = lambda: star_hbar(e, u, v, replace(params, method="kernel"))
        for name, job in jobs.items():
            try:
                seconds = _timed(job, args.repeat)
            except Exception as err:
                logger.warning("bench %s at %d failed: %s", name, points, err)
                seconds = float("nan")
            rows.append({"points": points, "operation": name, "seconds": seconds})
    print(pd.DataFrame(rows, columns=["points", "operation", "seconds"]).to_string(index=False))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="output SSQG file")
    parser.add_argument("--dump-csv", dest="dump_csv", default=None, help="also write 'a,l,re,im' rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wkb-star", description="WKB star products on elementary solvable symmetric spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the ESET axioms of a structure file")
    p.add_argument("--eset", required=True)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("phase", help="evaluate the three-point phase S")
    p.add_argument("--eset", required=True)
    p.add_argument("--points", required=True, help="'a l;a l;a l'")
    p.set_defaults(handler=cmd_phase)

    p = sub.add_parser("star", help="deformed product of two SSQG grids")
    p.add_argument("--eset", required=True)
    p.add_argument("--hbar", type=float, required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--method", choices=STAR_METHODS, default=DEFAULT_METHOD)
    p.add_argument("--interp", choices=INTERPOLATIONS, default=DEFAULT_INTERPOLATION)
    p.add_argument("--oversample", type=int, default=DEFAULT_OVERSAMPLE)
    _add_output(p)
    p.set_defaults(handler=cmd_star)

    p = sub.add_parser("weyl", help="Weyl product of two SSQG grids")
    p.add_argument("--hbar", type=float, required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--path", choices=("fft", "quad"), default="fft")
    p.add_argument("--stride", type=int, default=1, help="subsample inputs by this power of two")
    _add_output(p)
    p.set_defaults(handler=cmd_weyl)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("--eset", required=True)
    p.add_argument("--config", default=SUITE_CONFIG_FILEPATH)
    p.add_argument("--hbar-list", dest="hbar_list", default=None, help="comma-separated hbar values")
    p.add_argument("--grid", type=int, default=None, help="points per axis")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--report", default=None)
    p.add_argument("--checks", nargs="+", default=None)
    p.add_argument("--progress", action="store_true")
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("gen", help="sample an analytic fixture into an SSQG grid")
    p.add_argument("--kind", choices=("gaussian", "bump"), required=True)
    p.add_argument("--center", required=True, help="'a l'")
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS)
    p.add_argument("--extent", type=float, default=DEFAULT_EXTENT)
    p.add_argument("--a-extent", dest="a_extent", type=float, default=None)
    p.add_argument("--hbar", type=float, default=DEFAULT_HBAR)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", help="print timings of transforms and products")
    p.add_argument("--eset", default=EXAMPLE_STRUCTURE_FILEPATH)
    p.add_argument("--sizes", type=int, nargs="+", default=[32, 64])
    p.add_argument("--hbar", type=float, default=DEFAULT_HBAR)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--kernel-limit", dest="kernel_limit", type=int, default=32)
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        return args.handler(args)
    except UsageError as err:
        print(f"{parser.prog} {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except USAGE_ERRORS as err:
        print(f"{parser.prog} {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE
    except StarQuantError as err:
        print(f"{parser.prog} {args.command}: {err}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as err:
        print(f"{parser.prog} {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
