"""Command-line driver: simulate, reconstruct, oracle and render."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import fileio
from .forward import (DEFAULT_NODES, FarFieldMatrix, MediumSpec, SolverError,
                      farfield_dirichlet_crack, farfield_dirichlet_obstacle,
                      farfield_medium, farfield_mixed_crack, mie_disk_farfield)
from .forward.medium import DEFAULT_CELLS
from .geometry import build_directions, build_grid, circle, parse_shape
from .indicators import (fm_field, mm_crack_field, mm_crack_min_field, mm_medium_field,
                         mm_mixed_shifting_field, mm_mixed_shrinking_field,
                         mm_obstacle_field, shifted_farfield)
from .operators import DEFAULT_DROP_TOL, DEFAULT_TOL

SCATTERERS = ("dirichlet-obstacle", "dirichlet-crack", "mixed-crack", "medium")
METHODS = ("mm-square", "mm-segment", "mm-circle-shift", "mm-circle-shrink", "fm")
ORACLE_THRESHOLD = 1e-6
EXIT_ORACLE = 2


def read_config(path) -> dict:
    """Flat ``key=value`` file; ``#`` starts a comment; keys use ``-`` or ``_``."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for num, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ValueError(f"{path}:{num}: expected key=value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _point(text: str):
    vals = [float(v) for v in str(text).split(",")]
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return tuple(vals)


def _floats(text: str):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _scene_kind(arcs, kind):
    if kind:
        return kind
    return "dirichlet-obstacle" if all(a.closed for a in arcs) else "dirichlet-crack"


def simulate(args) -> FarFieldMatrix:
    arcs = parse_shape(args.shape)
    dirs = build_directions(args.N)
    kind = _scene_kind(arcs, args.kind)
    if kind == "dirichlet-obstacle":
        F = farfield_dirichlet_obstacle(arcs, args.k, dirs, args.nodes)
    elif kind == "dirichlet-crack":
        F = farfield_dirichlet_crack(arcs, args.k, dirs, args.nodes)
    elif kind == "mixed-crack":
        F = farfield_mixed_crack(arcs, args.k, dirs, args.nodes, args.minus, args.plus)
    else:
        F = farfield_medium(MediumSpec(arcs, args.q, args.cells), args.k, dirs)
    F = FarFieldMatrix(dirs, F.k, F.entries, f"{kind}:{args.shape}")
    if args.noise > 0:
        rng = np.random.default_rng(args.seed)
        Z = rng.standard_normal((dirs.N, dirs.N)) + 1j * rng.standard_normal((dirs.N, dirs.N))
        E = F.entries + args.noise * np.linalg.norm(F.entries) * Z / np.linalg.norm(Z)
        F = FarFieldMatrix(dirs, F.k, E, f"{F.scene} noise={args.noise:g} seed={args.seed}")
    return F


def reconstruct(F: FarFieldMatrix, args):
    grid = build_grid(args.R, args.M)
    method = args.method
    if method == "mm-square":
        variant = args.variant
        if variant == "auto":
            variant = "medium" if F.scene.startswith("medium") else "obstacle"
        if variant == "medium":
            return mm_medium_field(F, grid, args.r, args.alpha, args.tol)
        return mm_obstacle_field(F, grid, args.r, args.tol)
    if method == "mm-segment":
        if args.etas:
            return mm_crack_min_field(F, grid, _floats(args.etas), args.r, args.tol)
        return mm_crack_field(F, grid, args.eta, args.r, args.tol)
    if method == "mm-circle-shift":
        return mm_mixed_shifting_field(F, grid, args.r, args.tol)
    if method == "mm-circle-shrink":
        return mm_mixed_shrinking_field(F, grid, args.p, args.tol)
    if args.shift_curve:
        (curve,) = parse_shape(args.shift_curve)
        F = shifted_farfield(F, curve, complex(args.shift.replace(" ", "")))
    return fm_field(F, grid, args.drop_tol)


def _add_config(p):
    p.add_argument("--config", help="key=value file; command-line flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scatterlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="compute a far-field matrix file")
    _add_config(p)
    p.add_argument("--shape", default="omega1",
                   help="builtin name or circle:cx,cy,r | arc:cx,cy,r,half_angle | "
                        "segment:cx,cy,angle,length")
    p.add_argument("--kind", choices=SCATTERERS, default=None,
                   help="scatterer class (default: obstacle for closed shapes, crack for open)")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--N", type=int, default=20)
    p.add_argument("--nodes", type=int, default=DEFAULT_NODES)
    p.add_argument("--cells", type=int, default=DEFAULT_CELLS, help="medium grid resolution")
    p.add_argument("--q", type=float, default=1.0, help="medium contrast")
    p.add_argument("--minus", choices=("dirichlet", "neumann"), default="dirichlet")
    p.add_argument("--plus", choices=("dirichlet", "neumann"), default="neumann")
    p.add_argument("--noise", type=float, default=0.0, help="relative Frobenius noise level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True)

    p = sub.add_parser("reconstruct", help="indicator field from a far-field file")
    _add_config(p)
    p.add_argument("farfield")
    p.add_argument("--method", choices=METHODS, default="mm-square")
    p.add_argument("--variant", choices=("auto", "obstacle", "medium"), default="auto",
                   help="sign convention of mm-square")
    p.add_argument("--r", type=float, default=0.1, help="probe size")
    p.add_argument("--eta", type=float, default=0.0, help="segment angle")
    p.add_argument("--etas", default="", help="comma list of angles; pointwise minimum")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--p", type=_point, default=(0.0, 0.0), help="shrinking-circle center x,y")
    p.add_argument("--shift-curve", default="", help="curve for the shifted fm operator")
    p.add_argument("--shift", default="0.01+0.01j", help="complex shift for --shift-curve")
    p.add_argument("--R", type=float, default=1.5)
    p.add_argument("--M", type=int, default=100)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--drop-tol", type=float, default=DEFAULT_DROP_TOL)
    p.add_argument("-o", "--out-prefix", required=True)

    p = sub.add_parser("oracle", help="compare the disk solver with the series solution")
    _add_config(p)
    p.add_argument("--radius", type=float, default=0.7)
    p.add_argument("--center", type=_point, default=(0.0, 0.0))
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--N", type=int, default=20)
    p.add_argument("--nodes", type=int, default=DEFAULT_NODES)

    p = sub.add_parser("render", help="re-render a field CSV as PGM")
    p.add_argument("csv")
    p.add_argument("-o", "--out", required=True)
    return parser


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        sub = parser._subparsers._group_actions[0].choices[args.command]
        cfg = read_config(args.config)
        known = {a.dest for a in sub._actions}
        unknown = sorted(set(cfg) - known)
        if unknown:
            parser.error(f"unknown config keys: {', '.join(unknown)}")
        # flags given on the command line override the file
        converted = {}
        for a in sub._actions:
            if a.dest in cfg:
                val = cfg[a.dest]
                converted[a.dest] = a.type(val) if a.type else val
        sub.set_defaults(**converted)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except (OSError, ValueError) as exc:
        print(f"scatterlab: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "simulate":
            fileio.write_farfield(args.out, simulate(args))
        elif args.command == "reconstruct":
            field = reconstruct(fileio.read_farfield(args.farfield), args)
            fileio.write_field_csv(args.out_prefix + ".csv", field)
            fileio.write_pgm(args.out_prefix + ".pgm", field.values)
        elif args.command == "oracle":
            dirs = build_directions(args.N)
            F = farfield_dirichlet_obstacle(circle(args.center, args.radius), args.k, dirs,
                                            args.nodes)
            d = dirs.directions
            ref = mie_disk_farfield(args.radius, args.center, args.k, d[:, None], d[None])
            err = float(np.max(np.abs(F.pattern - ref)))
            print(f"max |BIE - series| = {err:.3e}")
            if not err <= ORACLE_THRESHOLD:
                print(f"oracle mismatch above {ORACLE_THRESHOLD:g}", file=sys.stderr)
                return EXIT_ORACLE
        elif args.command == "render":
            fileio.write_pgm(args.out, fileio.read_field_csv(args.csv).values)
    except (OSError, ValueError, KeyError, SolverError) as exc:
        print(f"scatterlab {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
