"""Command-line front end.

Subcommands: ``wm`` (per-type minima and the overall winner), ``decomp``
(decomposable-mosaic bounds), ``tile`` (tiling simulation), ``verify``
(numeric verification suites), ``table1`` (per-type minima as CSV) and
``fig2`` (minima as functions of alpha4 at alpha6 = 1, CSV).  Reports go
to stdout as JSON with a top-level schema tag; progress notes go to
stderr.  Exit status is 0 exactly when every residual check passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import decomposable, simplex, tetra, tiling, weights, zonotope
from .zonotope import WeightPair

_SHAPES = ("cube", "hexprism", "rhombic", "elongated", "truncocta")


def _canonical_shape(name: str) -> zonotope.Zonotope:
    """Unit-volume canonical body for each named shape."""
    if name == "cube":
        return zonotope.cube()
    if name == "hexprism":
        edge = (2.0 / (3.0 * np.sqrt(3.0))) ** (1.0 / 3.0)
        return zonotope.hexagonal_prism(edge, edge)
    if name == "rhombic":
        return zonotope.rhombic_dodecahedron(np.sqrt(3.0) / 2.0 ** (4.0 / 3.0))
    if name == "elongated":
        z = zonotope.elongated_rhombic_dodecahedron(0.6)
        return zonotope.build_zonotope(
            [zonotope.Segment(s.direction / z.volume() ** (1.0 / 3.0), s.generator_index)
             for s in z.segments]
        )
    if name == "truncocta":
        return zonotope.truncated_octahedron(2.0 ** (-7.0 / 6.0))
    if name.startswith("file:"):
        path = name[5:]
        try:
            with open(path, encoding="utf-8") as fh:
                return zonotope.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise SystemExit(f"cannot load shape from {path!r}: {exc}") from exc
    raise SystemExit(f"unknown shape {name!r}; choose from {_SHAPES} or file:<path>")


def _py(obj):
    """Recursively convert numpy scalars/arrays for json.dumps."""
    if isinstance(obj, dict):
        return {k: _py(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_py(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_py(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _residual(name: str, value: float, tolerance: float) -> dict:
    return {
        "name": name,
        "value": float(value),
        "tolerance": float(tolerance),
        "pass": bool(abs(value) <= tolerance),
    }


def _emit(command: str, inputs: dict, outputs: dict, residuals: list[dict]) -> int:
    doc = {
        "schema": "1",
        "command": command,
        "inputs": _py(inputs),
        "outputs": _py(outputs),
        "residuals": residuals,
    }
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0 if all(r["pass"] for r in residuals) else 1


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_wm(args: argparse.Namespace) -> int:
    m = WeightPair(args.alpha6, args.alpha4)
    types = [args.type] if args.type else [1, 2, 3, 4, 5]
    per_type = []
    residuals = []
    for i in types:
        tm = weights.type_minimum(i, m)
        entry = {
            "type": i,
            "value": tm.value,
            "is_exact": tm.is_exact,
            "optimal_shape": tm.optimal_shape,
        }
        if tm.note:
            entry["note"] = tm.note
        per_type.append(entry)
        z = weights.optimal_shape_zonotope(i, m)
        if z is not None:
            diff = zonotope.weighted_edge_functional(z, m) - tm.value
            residuals.append(_residual(f"type{i}_shape_consistency", diff, 1e-9))
    ans = weights.classify_optimal(m)
    outputs = {
        "per_type": per_type,
        "winner": ans.winner.value,
        "value": ans.value,
        "thresholds": {
            "cube_prism": weights.CUBE_PRISM_RATIO,
            "prism_octa": weights.PRISM_OCTA_RATIO,
        },
    }
    if args.sweep:
        _note(f"sweeping {args.sweep} random type-4 bodies")
        rep = weights.type4_sweep(m, args.sweep, seed=args.seed, jobs=args.jobs)
        outputs["sweep"] = {
            "samples": rep.samples,
            "min_observed": rep.min_observed,
            "bound": rep.bound,
        }
        shortfall = max(0.0, rep.bound - rep.min_observed)
        residuals.append(_residual("type4_sweep_above_bound", shortfall, 1e-9))
    return _emit(
        "wm",
        {"alpha6": args.alpha6, "alpha4": args.alpha4, "type": args.type, "sweep": args.sweep},
        outputs,
        residuals,
    )


def cmd_decomp(args: argparse.Namespace) -> int:
    value, spec = decomposable.minimize_density(args.dim)
    outputs = {
        "minimum": value,
        "spec": {
            "planars": [{"area": c.area, "e_hat": c.e_hat} for c in spec.planars],
            "segment": None if spec.segment is None else {"length": spec.segment.length},
        },
    }
    residuals = []
    if args.oracle:
        _note(f"running grid oracle with grid_n={args.oracle}")
        oracle = decomposable.brute_force_minimize(args.dim, args.oracle)
        outputs["oracle_value"] = oracle
        shortfall = max(0.0, value - oracle)
        residuals.append(_residual("oracle_at_or_above_minimum", shortfall, 1e-6))
    return _emit("decomp", {"dim": args.dim, "oracle": args.oracle}, outputs, residuals)


def _density_row(est: tiling.DensityEstimate) -> dict:
    return {
        "radius": est.radius,
        "skeleton_length": est.skeleton_length,
        "density": est.density,
        "target": est.target,
        "relative_error": est.relative_error,
        "cells": est.cells,
    }


def cmd_tile(args: argparse.Namespace) -> int:
    z = _canonical_shape(args.shape)
    _note(f"shape {args.shape}: volume={z.volume():.6f}, searching tiling lattice")
    try:
        lat = tiling.lattice_from_parallelohedron(z)
        report = tiling.validate_tiling(z, lat, seed=args.seed)
        _note(f"lattice validated: covering fraction {report.covering_fraction:.8f}")
        radii = args.series if args.series else [args.radius]
        rows = [tiling.skeleton_density(z, lat, r, jobs=args.jobs) for r in radii]
    except ValueError as exc:  # covers geometry errors and RadiusTooSmall
        raise SystemExit(f"tiling failed: {exc}") from exc
    if args.csv:
        writer = csv.writer(sys.stdout)
        writer.writerow(["radius", "skeleton_length", "density", "target", "relative_error", "cells"])
        for est in rows:
            writer.writerow(
                [est.radius, est.skeleton_length, est.density, est.target, est.relative_error, est.cells]
            )
        return 0 if rows[-1].relative_error <= 0.02 else 1
    residuals = [_residual("final_relative_error", rows[-1].relative_error, 0.02)]
    outputs = {
        "basis": lat.basis,
        "covering_fraction": report.covering_fraction,
        "rows": [_density_row(est) for est in rows],
    }
    return _emit(
        "tile",
        {"shape": args.shape, "radius": args.radius, "series": args.series},
        outputs,
        residuals,
    )


def _verify_tetra(args: argparse.Namespace) -> tuple[dict, list[dict]]:
    r1, r2 = tetra.batch_identity_residuals(args.samples, seed=args.seed)
    outputs = {"samples": args.samples, "poly_residual": r1, "sum_residual": r2}
    return outputs, [
        _residual("tetra_volume_polynomial", r1, 1e-9),
        _residual("tetra_weighted_sum", r2, 1e-9),
    ]


def _verify_simplex(args: argparse.Namespace) -> tuple[dict, list[dict]]:
    closed, _ = simplex.scaled_simplex_max(args.lam)
    brute = simplex.grid_simplex_max(args.lam, grid_n=args.grid)
    gap = closed - brute
    candidates = max(simplex.boundary_candidates(args.lam))
    outputs = {
        "lambda": args.lam,
        "grid_n": args.grid,
        "closed_form": closed,
        "brute_force": brute,
        "gap": gap,
    }
    return outputs, [
        _residual("simplex_gap", gap, 1e-5),
        _residual("boundary_below_interior", min(0.0, closed - candidates), 1e-15),
    ]


def _verify_isotropy(args: argparse.Namespace) -> tuple[dict, list[dict]]:
    rng = np.random.default_rng(args.seed)
    worst_it, worst_det, worst_res = 0, 0.0, 0.0
    n = max(10, args.samples // 100)
    for _ in range(n):
        while True:
            v = rng.normal(size=(4, 3))
            v[3] = -(v[0] + v[1] + v[2])
            if abs(np.linalg.det(v[:3])) >= 5e-2:
                break
        g = zonotope.validate_generators(v)
        b = zonotope.BetaVector(rng.uniform(0.2, 1.3, 6))
        fm = weights.FacetMeasure.from_zonotope(zonotope.build_from_parameters(g, b))
        res = weights.isotropic_position(fm, tol=1e-8)
        _, post = fm.transformed(res.matrix).isotropy_residual()
        worst_it = max(worst_it, res.iterations)
        worst_det = max(worst_det, abs(float(np.linalg.det(res.matrix)) - 1.0))
        worst_res = max(worst_res, post)
    outputs = {"bodies": n, "max_iterations": worst_it, "max_det_error": worst_det, "max_residual": worst_res}
    return outputs, [
        _residual("isotropy_residual", worst_res, 1e-8),
        _residual("isotropy_determinant", worst_det, 1e-12),
    ]


def _verify_tiling(args: argparse.Namespace) -> tuple[dict, list[dict]]:
    rows = []
    residuals = []
    for name in ("cube", "truncocta"):
        z = _canonical_shape(name)
        lat = tiling.lattice_from_parallelohedron(z)
        tiling.validate_tiling(z, lat, samples=200_000, seed=args.seed)
        est = tiling.skeleton_density(z, lat, args.radius, jobs=args.jobs)
        _note(f"{name}: density {est.density:.6f} vs {est.target:.6f}")
        rows.append({"shape": name, **_density_row(est)})
        residuals.append(_residual(f"{name}_relative_error", est.relative_error, 0.02))
        residuals.append(
            _residual(f"{name}_mode_agreement", est.skeleton_length - est.weighted_length, 1e-9)
        )
    return {"radius": args.radius, "rows": rows}, residuals


def cmd_verify(args: argparse.Namespace) -> int:
    suites = ("tetra", "simplex", "isotropy", "tiling") if args.lemma == "all" else (args.lemma,)
    outputs: dict = {}
    residuals: list[dict] = []
    runner = {
        "tetra": _verify_tetra,
        "simplex": _verify_simplex,
        "isotropy": _verify_isotropy,
        "tiling": _verify_tiling,
    }
    for suite in suites:
        _note(f"verifying: {suite}")
        out, res = runner[suite](args)
        outputs[suite] = out
        residuals.extend(res)
    return _emit(
        "verify",
        {"lemma": args.lemma, "samples": args.samples, "lambda": args.lam, "grid": args.grid},
        outputs,
        residuals,
    )


def cmd_table1(args: argparse.Namespace) -> int:
    m = WeightPair(args.alpha6, args.alpha4)
    writer = csv.writer(sys.stdout)
    writer.writerow(["type", "value", "is_exact", "shape", "parameters"])
    for i in range(1, 6):
        tm = weights.type_minimum(i, m)
        shape = tm.optimal_shape or {}
        params = {k: v for k, v in shape.items() if k != "shape"}
        writer.writerow(
            [i, repr(tm.value), tm.is_exact, shape.get("shape", ""), json.dumps(_py(params))]
        )
    return 0


def cmd_fig2(args: argparse.Namespace) -> int:
    grid = np.arange(args.start, args.stop + args.step / 2, args.step)
    header, rows = weights.figure_curves(grid, alpha6=1.0)
    writer = csv.writer(sys.stdout)
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mosaicdensity",
        description="Edge densities of convex mosaics: per-type minima, "
        "decomposable bounds, and lattice-tiling simulation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed for randomized routines")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for partitionable work")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "wm", help="per-type minima of the weighted edge functional", parents=[common]
    )
    p.add_argument("--alpha6", type=float, required=True, help="weight of 6-belt segments")
    p.add_argument("--alpha4", type=float, required=True, help="weight of 4-belt segments")
    p.add_argument("--type", type=int, choices=range(1, 6), help="restrict to one type")
    p.add_argument("--sweep", type=int, help="random type-4 bodies to sweep against the bound")
    p.set_defaults(func=cmd_wm)

    p = sub.add_parser(
        "decomp", help="minimum density bound for decomposable mosaics", parents=[common]
    )
    p.add_argument("--dim", type=int, required=True, help="ambient dimension (>= 2)")
    p.add_argument("--oracle", type=int, help="run the grid oracle with this resolution")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser(
        "tile", help="simulate a lattice tiling and measure edge density", parents=[common]
    )
    p.add_argument("--shape", required=True, help=f"one of {_SHAPES} or file:<json>")
    p.add_argument("--radius", type=float, default=20.0, help="measurement ball radius")
    p.add_argument(
        "--series",
        type=lambda s: [float(x) for x in s.split(",")],
        help="comma-separated ascending radii",
    )
    p.add_argument("--csv", action="store_true", help="emit CSV rows instead of JSON")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("verify", help="run numeric verification suites", parents=[common])
    p.add_argument(
        "--lemma",
        choices=("tetra", "simplex", "isotropy", "tiling", "all"),
        default="all",
    )
    p.add_argument("--samples", type=int, default=10_000, help="sample count for randomized suites")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="scale factor (simplex suite)")
    p.add_argument("--grid", type=int, default=60, help="grid resolution (simplex suite)")
    p.add_argument("--radius", type=float, default=20.0, help="ball radius (tiling suite)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "table1", help="CSV of per-type minima for one weight pair", parents=[common]
    )
    p.add_argument("--alpha6", type=float, required=True)
    p.add_argument("--alpha4", type=float, required=True)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser(
        "fig2", help="CSV curves of the minima vs alpha4 at alpha6 = 1", parents=[common]
    )
    p.add_argument("--start", type=float, default=0.05)
    p.add_argument("--stop", type=float, default=1.2)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_fig2)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
