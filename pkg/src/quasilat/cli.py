"""Command line entry point.

Subcommands mirror the library layers: gen / density / approx for point
sets, gabor for spectral diagnostics, padic for the non-archimedean model
sets, run for scenario files. Exit code 0 on success, 1 when a scenario
verdict or expectation fails, 2 for usage and validation errors.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .approxcheck import delone_report, find_cover_set, verify_cover
from .density import FolnerBoxes, density_scan
from .errors import QuasilatError, ScenarioValidationError
from .gabor import (GaborSystem, GridSpec, biorthogonal_dual,
                    completeness_residual, frame_bounds, gaussian_window,
                    hermite_basis, hap_residual, riesz_bounds,
                    uniform_min_delta)
from .padic import PAdicModelSet, padic_cover_set, padic_density
from .pointset import load_pointset, regenerate, save_pointset, sumset_truncated
from .scenarios import (builtin_scenario_names, builtin_scenario_path,
                        build_point_source, parse_scenario, run_scenario,
                        _json_default)


def _emit(payload, out_path):
    text = json.dumps(payload, indent=1, sort_keys=True, default=_json_default)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _add_gen(sub):
    p = sub.add_parser("gen", help="generate a point set and write it to CSV")
    p.add_argument("--kind", required=True,
                   choices=["lattice", "fibonacci", "fibonacci_product",
                            "symmetrized_sparse"])
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--basis", help="row-major lattice basis entries, comma separated")
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--q", type=float, default=4.0)
    p.add_argument("--out", required=True)


def _add_density(sub):
    p = sub.add_parser("density", help="Beurling density scan over box sequences")
    p.add_argument("--points", required=True, help="point CSV path")
    p.add_argument("--radii", required=True, help="comma separated box radii")
    p.add_argument("--translate-step", type=float)
    p.add_argument("--scan-region", type=float)
    p.add_argument("--out")


def _add_approx(sub):
    p = sub.add_parser("approx", help="Delone stats and finite-cover search")
    p.add_argument("--base", required=True, help="point CSV for the base set")
    p.add_argument("--sumset", help="point CSV for the sumset; default: base+base")
    p.add_argument("--sumset-radius", type=float,
                   help="truncation for the internally built base+base sumset")
    p.add_argument("--coverage-tol", type=float, default=1e-6)
    p.add_argument("--region", type=float, help="verified region radius override")
    p.add_argument("--delone-margin", type=float, default=2.0)
    p.add_argument("--out")


def _add_gabor(sub):
    p = sub.add_parser("gabor", help="coherent system diagnostics")
    gsub = p.add_subparsers(dest="gabor_cmd", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", required=True, help="time-frequency node CSV")
    common.add_argument("--grid-T", type=float, required=True, dest="grid_T")
    common.add_argument("--grid-dt", type=float, default=0.01)
    common.add_argument("--out")

    fp = gsub.add_parser("frame-bounds", parents=[common])
    fp.add_argument("--hermite-N", type=int, default=40, dest="hermite_N")
    fp.add_argument("--hermite-step", type=int, default=10)

    rp = gsub.add_parser("riesz", parents=[common])
    rp.add_argument("--edge-margin", type=float, default=2.0)

    dp = gsub.add_parser("dual", parents=[common])
    dp.add_argument("--edge-margin", type=float, default=0.0)

    hp = gsub.add_parser("hap", parents=[common])
    hp.add_argument("--K", type=float, default=6.0)
    hp.add_argument("--x-grid", type=int, default=5)
    hp.add_argument("--x-extent", type=float, default=1.0)

    cp = gsub.add_parser("complete", parents=[common])
    cp.add_argument("--probes", type=int, default=10)


def _add_padic(sub):
    p = sub.add_parser("padic", help="p-adic model set density and covers")
    psub = p.add_subparsers(dest="padic_cmd", required=True)
    for name in ("density", "cover"):
        q = psub.add_parser(name)
        q.add_argument("-p", type=int, required=True)
        q.add_argument("-w", required=True, help="window radius, e.g. 1 or 1/2")
        q.add_argument("-n", type=int, required=True, help="max denominator exponent")
        q.add_argument("--out")
        if name == "cover":
            q.add_argument("--max-size", type=int)


def _add_run(sub):
    p = sub.add_parser("run", help="run scenario files or builtin presets")
    p.add_argument("targets", nargs="*",
                   help="scenario cfg paths or builtin names; 'all' for every builtin")
    p.add_argument("--list", action="store_true", help="list builtin scenarios")
    p.add_argument("--parallel", action="store_true",
                   help="run scenarios in worker processes (QUASILAT_THREADS caps the pool)")
    p.add_argument("--out-dir", help="write one JSON report per scenario here")


def _cmd_gen(args):
    cfg = {"kind": args.kind}
    if args.kind == "lattice":
        if not args.basis:
            raise ScenarioValidationError("gen --kind lattice requires --basis")
        cfg["basis"] = args.basis
        if args.dim:
            cfg["dim"] = args.dim
    elif args.kind in ("fibonacci", "fibonacci_product"):
        cfg["window"] = args.window
        cfg["beta"] = args.beta
    else:
        cfg["q"] = args.q
    ps = regenerate(build_point_source(cfg, args.radius))
    save_pointset(ps, args.out)
    print(f"wrote {len(ps)} points to {args.out}")
    return 0


def _cmd_density(args):
    ps = load_pointset(args.points)
    boxes = FolnerBoxes(ps.dim, tuple(_floats(args.radii)))
    rep = density_scan(ps, boxes, translate_step=args.translate_step,
                       scan_region_radius=args.scan_region)
    _emit(rep.to_dict(), args.out)
    return 0


def _cmd_approx(args):
    base = load_pointset(args.base)
    if args.sumset:
        sumset = load_pointset(args.sumset)
    else:
        radius = args.sumset_radius
        if radius is None:
            radius = base.truncation_radius / 2.0
        sumset = sumset_truncated(base, base, radius)
    cover = find_cover_set(sumset, base, coverage_tol=args.coverage_tol,
                           verified_region_radius=args.region)
    ok = verify_cover(sumset, base, cover.defect_set, args.coverage_tol,
                      cover.verified_region_radius)
    payload = cover.to_dict()
    payload["reverified"] = ok
    payload["delone"] = delone_report(base, args.delone_margin).to_dict()
    _emit(payload, args.out)
    return 0 if ok else 1


def _gabor_system(args):
    pts = load_pointset(args.points)
    grid = GridSpec(args.grid_T, args.grid_dt)
    return GaborSystem(gaussian_window(grid), pts), grid


def _cmd_gabor(args):
    sys_, grid = _gabor_system(args)
    if args.gabor_cmd == "frame-bounds":
        fb = frame_bounds(sys_, args.hermite_N, n_step=args.hermite_step)
        _emit(fb.to_dict(), args.out)
    elif args.gabor_cmd == "riesz":
        rb = riesz_bounds(sys_, edge_margin=args.edge_margin)
        _emit(rb.to_dict(), args.out)
    elif args.gabor_cmd == "dual":
        pts = sys_.points
        if args.edge_margin > 0:
            sys_ = GaborSystem(sys_.window,
                               pts.restrict(pts.truncation_radius - args.edge_margin))
        dual = biorthogonal_dual(sys_)
        delta = uniform_min_delta(sys_)
        _emit({"B_sup": dual.B_sup, "biorth_residual": dual.biorth_residual,
               "delta": delta,
               "delta_times_max_dual_norm": delta * math.sqrt(dual.B_sup)},
              args.out)
    elif args.gabor_cmd == "hap":
        axis = np.linspace(-args.x_extent, args.x_extent, args.x_grid)
        res = [[float(hap_residual(sys_, sys_.window, (a, b), args.K))
                for b in axis] for a in axis]
        _emit({"x_axis": axis.tolist(), "residuals": res,
               "max_residual": float(np.max(res))}, args.out)
    else:
        probes = hermite_basis(grid, args.probes)
        _emit({"probe_count": args.probes,
               "max_residual": completeness_residual(sys_, probes)}, args.out)
    return 0


def _cmd_padic(args):
    ms = PAdicModelSet.build(args.p, args.w, args.n)
    if args.padic_cmd == "density":
        _emit(padic_density(ms).to_dict(), args.out)
    else:
        cover = padic_cover_set(ms, max_cover_size=args.max_size)
        _emit(cover.to_dict(), args.out)
    return 0


def _run_one(path):
    report = run_scenario(parse_scenario(path))
    return report


def _cmd_run(args):
    if args.list:
        for name in builtin_scenario_names():
            print(name)
        return 0
    if not args.targets:
        raise ScenarioValidationError("run needs scenario paths, builtin names, or 'all'")
    paths = []
    for target in args.targets:
        if target == "all":
            paths.extend(builtin_scenario_path(n) for n in builtin_scenario_names())
        elif os.path.exists(target):
            paths.append(target)
        else:
            paths.append(builtin_scenario_path(target))

    reports = []
    if args.parallel and len(paths) > 1:
        import concurrent.futures
        cap = os.environ.get("QUASILAT_THREADS")
        workers = min(len(paths), int(cap) if cap else (os.cpu_count() or 1))
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, paths))
    else:
        reports = [_run_one(p) for p in paths]

    all_passed = True
    for report in reports:
        for line in report.verdict_lines():
            print(line)
        all_passed = all_passed and report.passed
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            name = report.scenario["name"]
            with open(os.path.join(args.out_dir, f"{name}.json"), "w") as fh:
                fh.write(report.to_json() + "\n")
    print("ALL PASS" if all_passed else "FAILURES PRESENT")
    return 0 if all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quasilat",
        description="approximate lattices, Beurling densities, Gabor diagnostics")
    parser.add_argument("--version", action="version",
                        version=f"quasilat {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)
    _add_gen(sub)
    _add_density(sub)
    _add_approx(sub)
    _add_gabor(sub)
    _add_padic(sub)
    _add_run(sub)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"gen": _cmd_gen, "density": _cmd_density, "approx": _cmd_approx,
                "gabor": _cmd_gabor, "padic": _cmd_padic, "run": _cmd_run}
    try:
        return handlers[args.cmd](args)
    except ScenarioValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuasilatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
