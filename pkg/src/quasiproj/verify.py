"""Self-checks run by ``quasiproj verify``. Each suite yields named pass/fail checks."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .coxeter_core import GroupId, cartan_matrix, group_order, weyl_orbit
from .lattice_window import LatticeKind, voronoi_vertices
from .pipeline import RunConfig, run_pipeline
from .projector import minimal_edges, star_regularity
from .spectral_frame import coxeter_rotation_angles, eigensystem, exponent_eigenvalue, orthonormal_frame

TOL = 1e-9


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def spectrum_groups() -> list[GroupId]:
    out = [GroupId("A", n) for n in range(1, 9)]
    out += [GroupId("B", n) for n in range(2, 9)]
    out += [GroupId("C", n) for n in range(2, 9)]
    out += [GroupId("D", n) for n in range(4, 9)]
    out += [GroupId("E", 6), GroupId("F", 4), GroupId("G", 2)]
    return out


def suite_exponents() -> list[Check]:
    out = []
    for g in spectrum_groups():
        data = cartan_matrix(g)
        lam = np.linalg.eigvals(data.cartan_array().astype(float)).real
        want = [exponent_eigenvalue(m, data.coxeter_number) for m in data.exponents]
        err = float(np.abs(np.sort(lam) - np.array(want)).max())
        eigensystem(data)  # raises if the matching fails
        out.append(Check(f"exponents {g}", err < TOL, f"max |lambda - law| = {err:.2e}"))
    return out


ORDERS = {"F4": 1152, "B6": 46080, "E6": 51840, "G2": 12}


def suite_orders() -> list[Check]:
    out = []
    for g, want in ORDERS.items():
        got = group_order(g)
        out.append(Check(f"order {g}", got == want, f"{got} (expected {want})"))
    return out


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def suite_orbits() -> list[Check]:
    out = []
    b6 = [len(weyl_orbit(_unit(6, i), "B6")) for i in range(6)]
    out.append(Check("orbits B6 fundamental", b6 == [12, 60, 160, 240, 192, 64], str(b6)))
    e6 = [len(weyl_orbit(_unit(6, i), "E6")) for i in range(6)]
    out.append(Check("orbits E6 fundamental", e6 == [27, 216, 720, 216, 27, 72], str(e6)))
    for g, kind, want in (("F4", "root", 24), ("E6", "root", 54), ("E6", "weight", 720)):
        got = voronoi_vertices(g, kind).vertex_count
        out.append(Check(f"voronoi {g} {kind}", got == want, f"{got} vertices (expected {want})"))
    return out


FRAME_ANGLES = {"F4": (30, 150), "B6": (30, 90, 150), "E6": (30, 120, 150)}


def suite_frames() -> list[Check]:
    out = []
    for g, want in FRAME_ANGLES.items():
        fr = orthonormal_frame(g)
        err = float(np.abs(fr.gram() - np.eye(fr.rank)).max())
        out.append(Check(f"orthonormal {g}", err < TOL, f"max |gram - I| = {err:.2e}"))
        ang = np.degrees(coxeter_rotation_angles(fr, TOL))
        aerr = float(np.abs(ang - np.array(want)).max())
        out.append(Check(f"rotation {g}", aerr < TOL, f"angles {np.round(ang, 9).tolist()} deg"))
    return out


def _sym_check(name, cfg, order, mirror=True) -> Check:
    s = run_pipeline(cfg)
    ok = s.symmetry is not None and s.symmetry.order == order and s.symmetry.mirror == mirror
    return Check(name, ok, f"{s.count} points, {s.symmetry} (expected {'D' if mirror else 'C'}{order}), "
                           f"{s.wall_time:.2f}s")


def _star_check(name, cfg, degree) -> Check:
    s = run_pipeline(cfg)
    e = minimal_edges(s.points)
    rep = star_regularity(s.points, e, degree)
    ok = rep.regular and rep.max_angle_error <= 1e-4
    return Check(name, ok, f"{rep.interior} interior vertices, degrees {list(rep.degrees)} "
                           f"(expected {degree}), max angle error {rep.max_angle_error:.2e} deg")


def suite_symmetry() -> list[Check]:
    f4, b6, e6 = GroupId.parse("F4"), GroupId.parse("B6"), GroupId.parse("E6")
    root, weight = LatticeKind.ROOT, LatticeKind.WEIGHT
    return [
        _sym_check("symmetry F4 plane 1", RunConfig(f4, root, 3, 1), 12),
        _sym_check("symmetry F4 swapped planes", RunConfig(f4, root, 3, axes=(2, 3)), 12),
        _sym_check("symmetry B6 plane 1", RunConfig(b6, root, 2, 1), 12),
        _sym_check("symmetry B6 plane (x2,x5)", RunConfig(b6, root, 2, 2), 4),
        _star_check("square B6 plane (x2,x5)", RunConfig(b6, root, 2, 2), 4),
        _sym_check("symmetry E6 root plane 1", RunConfig(e6, root, 2, 1), 12),
        _star_check("honeycomb E6 weight plane (b2,b5)", RunConfig(e6, weight, 2, 2), 3),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "exponents": suite_exponents,
    "orbits": suite_orbits,
    "orders": suite_orders,
    "frames": suite_frames,
    "symmetry": suite_symmetry,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    return SUITES[name]()
