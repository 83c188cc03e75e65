"""Command-line entry point: ``quasiproj eigen|orbit|window|project|verify``.

Errors go to stderr as one line ``TAG: message`` with the exit code of the
error class (2 config, 3 unsupported, 4 budget, 5 verification).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from .coxeter_core import Basis, GroupId, LatticeVector, cartan_matrix, group_order, weyl_orbit
from .errors import ConfigError, QuasiprojError, VerificationError
from .export import fmt
from .lattice_window import complement_axes, voronoi_vertices, window_radius
from .pipeline import CLOSURES, load_config, make_config, run_pipeline
from .spectral_frame import orthonormal_frame
from .verify import SUITES, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _axes(text: str) -> tuple[int, int]:
    v = _ints(text)
    if len(v) != 2:
        raise ConfigError(f"--axes needs two indices 'i,j', got {text!r}")
    return v


def _window(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"--window must be 'auto' or a number, got {text!r}") from None


def _par_axes(group: GroupId, plane, axes) -> tuple[int, int]:
    n = group.rank
    if axes is not None:
        i, j = _axes(axes)
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ConfigError(f"axes must be two distinct indices in 1..{n}")
        return (i - 1, j - 1)
    if not 1 <= plane <= n // 2:
        raise ConfigError(f"plane must be in 1..{n // 2} for {group}")
    return (plane - 1, n - plane)


def cmd_eigen(args) -> int:
    g = GroupId.parse(args.group)
    data = cartan_matrix(g)
    fr = orthonormal_frame(data)
    print(f"group={g} h={data.coxeter_number} exponents={','.join(map(str, data.exponents))}")
    for i, p in enumerate(fr.pairs):
        coeffs = " ".join(fmt(c) for c in fr.frame_vectors[i])
        print(f"x{i + 1} m={p.exponent} lambda={fmt(p.eigenvalue)} alpha_coeffs=[{coeffs}]")
    for k, (i, j) in enumerate(fr.plane_pairing):
        print(f"plane {k + 1}: x{i + 1},x{j + 1}")
    return 0


def cmd_orbit(args) -> int:
    g = GroupId.parse(args.group)
    coeffs = _ints(args.weight)
    v = LatticeVector(g, coeffs, Basis(args.basis))
    orb = weyl_orbit(v, scale=Fraction(args.scale))
    print(f"group={g} seed={','.join(map(str, coeffs))} basis={args.basis} size={len(orb)}")
    if args.order:
        print(f"group_order={group_order(g)}")
    if args.list:
        for p in orb.points:
            print(",".join(map(str, p)))
    return 0


def cmd_window(args) -> int:
    g = GroupId.parse(args.group)
    fr = orthonormal_frame(g)
    par = _par_axes(g, args.plane, args.axes)
    perp = complement_axes(fr.rank, par)
    vor = voronoi_vertices(g, args.lattice)
    w = window_radius(vor, fr, perp)
    print(f"group={g} lattice={args.lattice} vertices={vor.vertex_count}")
    print(f"parallel_axes={par[0] + 1},{par[1] + 1} perp_axes={','.join(str(i + 1) for i in perp)}")
    print(f"radius={w.radius:.12g} min_vertex_radius={w.min_radius:.12g}")
    return 0


_PROJECT_KEYS = ("group", "lattice", "range", "plane", "axes", "window", "csv", "json", "svg",
                 "closure", "max_order", "budget", "canvas", "point_radius")


def cmd_project(args) -> int:
    values = {k: getattr(args, k) for k in _PROJECT_KEYS}
    if values["axes"] is not None:
        values["axes"] = _axes(values["axes"])
    if values["window"] is not None:
        values["window"] = _window(values["window"])
    if args.edges:
        values["edges"] = True
    if args.config:
        if values["axes"] is not None:
            values["plane"] = None
        cfg = load_config(args.config, values)
    else:
        values["group"] = values["group"] or None
        if values["group"] is None:
            raise ConfigError("--group is required (or --config)")
        cfg = make_config(values)
    summary = run_pipeline(cfg)
    for line in summary.lines():
        print(line)
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    for c in checks:
        print(c.line())
    failed = [c.name for c in checks if not c.ok]
    print(f"summary: {len(checks) - len(failed)}/{len(checks)} passed")
    if failed:
        raise VerificationError(f"{len(failed)} check(s) failed: {'; '.join(failed)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quasiproj", description="Coxeter-plane cut-and-project quasicrystals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eigen", help="Cartan eigenvalues, exponents and the orthonormal frame")
    e.add_argument("--group", required=True)
    e.set_defaults(func=cmd_eigen)

    o = sub.add_parser("orbit", help="Weyl orbit of a weight")
    o.add_argument("--group", required=True)
    o.add_argument("--weight", required=True, help="comma-separated coefficients")
    o.add_argument("--basis", default="weight", choices=["weight", "root"])
    o.add_argument("--scale", default="1", help="rational scale such as 1/2")
    o.add_argument("--order", action="store_true", help="also print the group order")
    o.add_argument("--list", action="store_true", help="print every orbit point")
    o.set_defaults(func=cmd_orbit)

    w = sub.add_parser("window", help="window radius of the projected Voronoi cell")
    w.add_argument("--group", required=True)
    w.add_argument("--lattice", default="root", choices=["root", "weight"])
    w.add_argument("--plane", type=int, default=1, help="1-based plane index")
    w.add_argument("--axes", help="explicit 1-based parallel axes 'i,j'")
    w.set_defaults(func=cmd_window)

    pr = sub.add_parser("project", help="cut-and-project onto a Coxeter plane")
    pr.add_argument("--config", help="flat key = value file; flags override it")
    pr.add_argument("--group")
    pr.add_argument("--lattice", choices=["root", "weight"])
    pr.add_argument("--range", type=int)
    pr.add_argument("--plane", type=int, help="1-based plane index by exponent order")
    pr.add_argument("--axes", help="explicit 1-based parallel axes 'i,j'")
    pr.add_argument("--window", help="'auto' or an explicit radius")
    pr.add_argument("--csv")
    pr.add_argument("--json")
    pr.add_argument("--svg")
    pr.add_argument("--edges", action="store_true", help="compute minimal-distance edges")
    pr.add_argument("--closure", choices=CLOSURES)
    pr.add_argument("--max-order", dest="max_order", type=int)
    pr.add_argument("--budget", type=int)
    pr.add_argument("--canvas", type=int)
    pr.add_argument("--point-radius", dest="point_radius", type=float)
    pr.set_defaults(func=cmd_project)

    v = sub.add_parser("verify", help="run the built-in acceptance suites")
    v.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except QuasiprojError as exc:
        msg = " ".join(str(exc).split())
        print(f"{exc.tag}: {msg}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"CONFIG: {' '.join(str(exc).split())}", file=sys.stderr)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())
