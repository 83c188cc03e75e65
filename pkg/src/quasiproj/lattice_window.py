"""Lattice enumeration, Voronoi-cell vertex orbits and ball windows."""

from __future__ import annotations

import enum
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coxeter_core import (
    Basis,
    GroupId,
    LatticeVector,
    Orbit,
    cartan_inverse,
    cartan_matrix,
    metric_tensor,
    weyl_orbit,
)
from .errors import BudgetExceededError, ConfigError, UnsupportedError
from .spectral_frame import SpectralFrame

DEFAULT_BUDGET = 4_000_000
BOUNDARY_TOL = 1e-9


class LatticeKind(enum.Enum):
    ROOT = "root"
    WEIGHT = "weight"

    @classmethod
    def parse(cls, text: str | LatticeKind) -> LatticeKind:
        if isinstance(text, LatticeKind):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise ConfigError(f"lattice must be 'root' or 'weight', got {text!r}") from None


@dataclass(frozen=True)
class VoronoiSpec:
    group: GroupId
    kind: LatticeKind
    orbits: tuple[Orbit, ...]

    @property
    def vertex_count(self) -> int:
        return sum(len(o) for o in self.orbits)

    def vertices(self) -> np.ndarray:
        """Scaled weight coordinates of every vertex, shape ``(vertex_count, rank)``."""
        return np.vstack([o.array() for o in self.orbits])


@dataclass(frozen=True)
class WindowSpec:
    perp_axes: tuple[int, ...]
    radius: float
    boundary_tol: float = BOUNDARY_TOL
    min_radius: float | None = None  # smallest vertex perp norm, for the spread report

    def __post_init__(self):
        if not self.perp_axes:
            raise ConfigError("window needs at least one perpendicular axis")
        if not self.radius > 0 or not np.isfinite(self.radius):
            raise ConfigError(f"window radius must be positive and finite, got {self.radius!r}")


def default_range(group: GroupId | str) -> int:
    """Box half-width that keeps the raw box near 15k points for ranks 4 and 6."""
    rank = GroupId.parse(group).rank
    return 3 if rank <= 4 else 2


def _check_budget(count: int, budget: int | None) -> None:
    if budget is not None and count > budget:
        raise BudgetExceededError(count, budget)


def lattice_array(group: GroupId | str, kind: LatticeKind | str, n: int,
                  budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """Weight coordinates of every box point, one row each, in lexicographic box order.

    Root kind enumerates ``b`` in ``[-n, n]^rank`` over the simple roots and
    converts with ``a = b C``; weight kind enumerates ``a`` directly.
    """
    g = GroupId.parse(group)
    kind = LatticeKind.parse(kind)
    if n < 0:
        raise ConfigError(f"range must be >= 0, got {n}")
    _check_budget((2 * n + 1) ** g.rank, budget)
    axis = np.arange(-n, n + 1, dtype=np.int64)
    box = np.stack(np.meshgrid(*([axis] * g.rank), indexing="ij"), axis=-1).reshape(-1, g.rank)
    if kind is LatticeKind.ROOT:
        return box @ cartan_matrix(g).cartan_array()
    return box


def enumerate_lattice(group: GroupId | str, kind: LatticeKind | str, n: int,
                      budget: int | None = DEFAULT_BUDGET) -> Iterator[LatticeVector]:
    """Stream the ``(2n+1)^rank`` box points as weight-basis vectors."""
    g = GroupId.parse(group)
    for row in lattice_array(g, kind, n, budget):
        yield LatticeVector(g, tuple(row), Basis.WEIGHT)


def root_lattice_in_weight_box(group: GroupId | str, n: int,
                               budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """Root-lattice points whose weight coordinates lie in ``[-n, n]^rank``.

    For B6 this is the cubic lattice written with an even last weight
    coordinate.
    """
    g = GroupId.parse(group)
    a = lattice_array(g, LatticeKind.WEIGHT, n, budget)
    inv = cartan_inverse(g)
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // np.gcd(den, x.denominator)
    scaled = np.array([[int(x * den) for x in row] for row in inv], dtype=np.int64)
    return a[np.all((a @ scaled) % den == 0, axis=1)]


def _orbits(group: GroupId, seeds: Sequence[Sequence[int]], scale: Fraction) -> tuple[Orbit, ...]:
    return tuple(weyl_orbit(s, group, scale) for s in seeds)


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def voronoi_vertices(group: GroupId | str, kind: LatticeKind | str) -> VoronoiSpec:
    """Vertex orbits of the Voronoi cell ``V(0)`` for the supported lattices.

    ========  ======  =================================================
    group     kind    vertex orbits
    ========  ======  =================================================
    A_n       root    union of all fundamental-weight orbits
    A_n       weight  ``1/(n+1) (1, ..., 1)``
    F4        either  ``1/2 (0, 0, 0, 1)`` (root and weight lattices coincide)
    B6        root    ``(0, 0, 0, 0, 0, 1)``, the 64 cube vertices
    E6        root    ``(1, 0, 0, 0, 0, 0)`` and ``(0, 0, 0, 0, 1, 0)``
    E6        weight  ``1/3 (0, 0, 1, 0, 0, 0)``
    ========  ======  =================================================
    """
    g = GroupId.parse(group)
    kind = LatticeKind.parse(kind)
    n = g.rank
    if g.family == "A":
        if kind is LatticeKind.ROOT:
            return VoronoiSpec(g, kind, _orbits(g, [_unit(n, i) for i in range(n)], Fraction(1)))
        return VoronoiSpec(g, kind, _orbits(g, [(1,) * n], Fraction(1, n + 1)))
    if str(g) == "F4":
        return VoronoiSpec(g, kind, _orbits(g, [(0, 0, 0, 1)], Fraction(1, 2)))
    if str(g) == "B6" and kind is LatticeKind.ROOT:
        return VoronoiSpec(g, kind, _orbits(g, [_unit(6, 5)], Fraction(1)))
    if str(g) == "E6":
        if kind is LatticeKind.ROOT:
            return VoronoiSpec(g, kind, _orbits(g, [_unit(6, 0), _unit(6, 4)], Fraction(1)))
        return VoronoiSpec(g, kind, _orbits(g, [_unit(6, 2)], Fraction(1, 3)))
    raise UnsupportedError(f"no Voronoi cell data for the {kind.value} lattice of {g}")


def complement_axes(rank: int, par_axes: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i in range(rank) if i not in set(par_axes))


def window_radius(voronoi: VoronoiSpec, frame: SpectralFrame, perp_axes: Sequence[int]) -> WindowSpec:
    """Circumscribed ball of the Voronoi cell projected onto ``perp_axes``.

    The radius is the largest perpendicular norm over all (scaled) vertices.
    """
    perp = tuple(int(i) for i in perp_axes)
    if not perp or any(not 0 <= i < frame.rank for i in perp):
        raise ConfigError(f"perpendicular axes {perp} out of range for rank {frame.rank}")
    if voronoi.group != frame.group:
        raise ConfigError(f"group mismatch: {voronoi.group} vs {frame.group}")
    if voronoi.vertex_count == 0:
        raise ConfigError("empty Voronoi vertex set")
    verts = voronoi.vertices()
    norms = np.linalg.norm((verts @ frame.weight_components)[:, perp], axis=1)
    r = float(norms.max())
    if r <= 0:
        raise ConfigError("Voronoi vertices have no perpendicular extent; window would be empty")
    return WindowSpec(perp, r, BOUNDARY_TOL, float(norms.min()))


def nearest_lattice_count(group: GroupId | str, kind: LatticeKind | str, point: np.ndarray,
                          n: int = 2, tol: float = 1e-9) -> tuple[float, int]:
    """Squared distance from ``point`` (weight coords) to the lattice and how many lattice points attain it.

    A Voronoi vertex of a rank-``r`` lattice is equidistant from at least
    ``r + 1`` nearest lattice points. Searches lattice points whose weight
    coordinates lie in the box of half-width ``n``; a box over root
    coefficients would be badly skewed around small weights.
    """
    g = GroupId.parse(group)
    metric = np.array(metric_tensor(g), dtype=float)
    if LatticeKind.parse(kind) is LatticeKind.ROOT:
        pts = root_lattice_in_weight_box(g, n, None)
    else:
        pts = lattice_array(g, LatticeKind.WEIGHT, n, None)
    d = pts - np.asarray(point, dtype=float)
    d2 = np.einsum("ij,jk,ik->i", d, metric, d)
    best = float(d2.min())
    return best, int((np.abs(d2 - best) < tol).sum())
