"""Frame components, cut-and-project filtering and planar point-set analysis."""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .coxeter_core import (
    Basis,
    GroupId,
    LatticeVector,
    dihedral_elements,
    to_weight,
)
from .errors import BudgetExceededError, ConfigError
from .lattice_window import WindowSpec
from .spectral_frame import CoxeterPlane, SpectralFrame

DEDUP_TOL = 1e-8
MATCH_TOL = 1e-6
EDGE_RTOL = 1e-6

_OFFSETS = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)]
_KEY_LIMIT = 2**31


@dataclass(frozen=True)
class ComponentVector:
    values: np.ndarray  # q_1 .. q_n in frame order

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class ProjectedPointSet:
    group: GroupId
    xy: np.ndarray = field(repr=False)       # (m, 2) parallel-plane coordinates
    sources: np.ndarray = field(repr=False)  # (m, rank) weight coordinates of the first-seen preimage
    dedup_tol: float = DEDUP_TOL

    def __len__(self):
        return len(self.xy)

    def __iter__(self) -> Iterator[tuple[float, float, LatticeVector]]:
        for (x, y), src in zip(self.xy, self.sources):
            yield float(x), float(y), LatticeVector(self.group, tuple(src), Basis.WEIGHT)


@dataclass(frozen=True)
class EdgeSet:
    edges: np.ndarray  # (k, 2) point indices, i < j, sorted
    edge_length: float

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class SymmetryReport:
    order: int
    mirror: bool

    def __str__(self):
        return f"{'D' if self.mirror else 'C'}{self.order}"


def components_array(a: np.ndarray, frame: SpectralFrame) -> np.ndarray:
    """Frame components of weight-coordinate rows: ``q_i = (q, x_i)``."""
    return np.asarray(a, dtype=float) @ frame.weight_components


def components(v: LatticeVector, frame: SpectralFrame) -> ComponentVector:
    if v.group != frame.group:
        raise ConfigError(f"group mismatch: {v.group} vs {frame.group}")
    return ComponentVector(components_array(np.array(to_weight(v).coeffs), frame))


def _as_weight_rows(points, group: GroupId) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return points.astype(np.int64).reshape(-1, group.rank)
    rows = []
    for v in points:
        if v.group != group:
            raise ConfigError(f"group mismatch: {v.group} vs {group}")
        rows.append(to_weight(v).coeffs)
    return np.array(rows, dtype=np.int64).reshape(-1, group.rank)


def dihedral_closure(a: np.ndarray, group: GroupId | str, budget: int | None = None) -> np.ndarray:
    """Union of the images of weight rows ``a`` under the dihedral group ``<R1, R2>``.

    The result is invariant under the Coxeter element and ``R1``, so its
    projection inherits the full dihedral symmetry instead of the box's.
    Rows come back in lexicographic order.
    """
    mats = dihedral_elements(group)
    a = np.asarray(a, dtype=np.int64)
    if budget is not None and len(a) * len(mats) > budget:
        raise BudgetExceededError(len(a) * len(mats), budget)
    return np.unique(np.vstack([a @ m for m in mats]), axis=0)


def _lex_order(rows: np.ndarray) -> np.ndarray:
    return np.lexsort(rows.T[::-1])


def cut_and_project(points: Iterable[LatticeVector] | np.ndarray, frame: SpectralFrame,
                    par_plane: CoxeterPlane | Sequence[int], window: WindowSpec,
                    dedup_tol: float = DEDUP_TOL) -> ProjectedPointSet:
    """Keep lattice points whose perpendicular components fall in the window ball.

    ``points`` is an iterable of lattice vectors or an integer array of
    weight coordinates. Survivors are ordered by their source coefficients,
    projected onto the two ``par_plane`` axes and deduplicated; the first
    source in that order is kept for each planar point.
    """
    par = tuple(par_plane.axes) if isinstance(par_plane, CoxeterPlane) else tuple(int(i) for i in par_plane)
    if len(par) != 2 or any(not 0 <= i < frame.rank for i in par) or par[0] == par[1]:
        raise ConfigError(f"parallel plane needs two distinct axes in range, got {par}")
    if set(par) & set(window.perp_axes):
        raise ConfigError(f"parallel axes {par} overlap perpendicular axes {window.perp_axes}")
    a = _as_weight_rows(points, frame.group)
    q = components_array(a, frame)
    perp = np.linalg.norm(q[:, list(window.perp_axes)], axis=1)
    keep = perp <= window.radius + window.boundary_tol
    a, q = a[keep], q[keep]
    order = _lex_order(a)
    a, xy = a[order], q[order][:, list(par)]
    first = dedup_indices(xy, dedup_tol)
    return ProjectedPointSet(frame.group, xy[first], a[first], dedup_tol)


class GridIndex:
    """Uniform-grid hash over 2D points with vectorised neighbour-cell lookups.

    ``cell`` must be at least the largest query distance; candidates come
    from the 3x3 block of cells around each query point.
    """

    def __init__(self, points: np.ndarray, cell: float):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.cell = float(cell)
        ij = self._cells(self.points)
        keys = self._keys(ij)
        self.order = np.argsort(keys, kind="stable")
        self.sorted_keys = keys[self.order]

    def _cells(self, p: np.ndarray) -> np.ndarray:
        ij = np.floor(p / self.cell)
        if ij.size and np.abs(ij).max() >= _KEY_LIMIT - 2:
            raise ValueError(f"grid cell {self.cell} too small for coordinate range")
        return ij.astype(np.int64)

    @staticmethod
    def _keys(ij: np.ndarray) -> np.ndarray:
        return (ij[:, 0] + _KEY_LIMIT) * (2 * _KEY_LIMIT) + (ij[:, 1] + _KEY_LIMIT)

    def candidates(self, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """All (query index, point index) pairs sharing a 3x3 cell neighbourhood."""
        queries = np.asarray(queries, dtype=float).reshape(-1, 2)
        qij = self._cells(queries)
        qs, ps = [], []
        for dx, dy in _OFFSETS:
            k = self._keys(qij + np.array([dx, dy]))
            lo = np.searchsorted(self.sorted_keys, k, side="left")
            hi = np.searchsorted(self.sorted_keys, k, side="right")
            cnt = hi - lo
            total = int(cnt.sum())
            if total == 0:
                continue
            qi = np.repeat(np.arange(len(queries)), cnt)
            start = np.repeat(lo - np.concatenate(([0], np.cumsum(cnt)[:-1])), cnt)
            qs.append(qi)
            ps.append(self.order[start + np.arange(total)])
        if not qs:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        return np.concatenate(qs), np.concatenate(ps)

    def within(self, queries: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        queries = np.asarray(queries, dtype=float).reshape(-1, 2)
        qi, pj = self.candidates(queries)
        d = np.hypot(*(queries[qi] - self.points[pj]).T)
        m = d <= r
        return qi[m], pj[m], d[m]


def dedup_indices(xy: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Indices of first occurrences, dropping later points within ``tol`` of an earlier kept one."""
    if len(xy) == 0:
        return np.empty(0, np.int64)
    grid = GridIndex(xy, max(tol * 4, 1e-7))
    qi, pj, _ = grid.within(xy, tol)
    earlier = pj < qi
    dup = np.zeros(len(xy), dtype=bool)
    # a point is dropped when it is close to any earlier point that itself survives;
    # processing in order handles chains without a per-point Python loop in the common case
    if earlier.any():
        cand = {}
        for q, p in zip(qi[earlier], pj[earlier]):
            cand.setdefault(int(q), []).append(int(p))
        for q in sorted(cand):
            if any(not dup[p] for p in cand[q]):
                dup[q] = True
    return np.flatnonzero(~dup)


def _centered(ps: ProjectedPointSet | np.ndarray) -> np.ndarray:
    xy = ps.xy if isinstance(ps, ProjectedPointSet) else np.asarray(ps, dtype=float).reshape(-1, 2)
    return xy - xy.mean(axis=0)


def _is_bijection(grid: GridIndex, image: np.ndarray, tol: float) -> bool:
    qi, pj, _ = grid.within(image, tol)
    n = len(image)
    return len(qi) == n and len(np.unique(qi)) == n and len(np.unique(pj)) == n


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _has_mirror(p: np.ndarray, grid: GridIndex, tol: float) -> bool:
    r = np.hypot(p[:, 0], p[:, 1])
    nz = r > tol
    if not nz.any():
        return True
    rmin = r[nz].min()
    ring = np.flatnonzero(nz & (np.abs(r - rmin) <= max(tol, 1e-9 * rmin)))
    ang = np.arctan2(p[ring, 1], p[ring, 0])
    t0 = ang.min()
    for t in np.sort(ang):
        phi = (t0 + t) / 2
        c, s = math.cos(2 * phi), math.sin(2 * phi)
        m = np.array([[c, s], [s, -c]])
        if _is_bijection(grid, p @ m.T, tol):
            return True
    return False


def detect_symmetry_order(ps: ProjectedPointSet | np.ndarray, max_order: int = 24,
                          tol: float = MATCH_TOL) -> SymmetryReport:
    """Largest ``k <= max_order`` whose rotation by ``2 pi / k`` about the centroid maps the set onto itself.

    Matching is bijective nearest-neighbour within ``tol``. The report also
    says whether some mirror line through the centroid preserves the set.
    """
    if max_order < 1:
        raise ConfigError("max_order must be >= 1")
    if len(ps) == 0:
        raise ConfigError("cannot detect symmetry of an empty point set")
    p = _centered(ps)
    grid = GridIndex(p, max(100 * tol, 1e-5))
    order = 1
    for k in range(max_order, 1, -1):
        if _is_bijection(grid, p @ _rotation(2 * math.pi / k).T, tol):
            order = k
            break
    return SymmetryReport(order, _has_mirror(p, grid, tol))


def _min_distance(xy: np.ndarray) -> float:
    span = np.ptp(xy, axis=0)
    area = max(span[0] * span[1], (span.max() ** 2) / len(xy), 1e-300)
    cell = math.sqrt(area / len(xy))
    if cell == 0:
        return 0.0
    while True:
        grid = GridIndex(xy, cell)
        qi, pj, d = grid.within(xy, cell)
        m = qi < pj
        if m.any():
            return float(d[m].min())
        cell *= 2


def minimal_edges(ps: ProjectedPointSet | np.ndarray, rtol: float = EDGE_RTOL) -> EdgeSet:
    """All point pairs at the minimal pairwise distance (relative tolerance ``rtol``)."""
    xy = ps.xy if isinstance(ps, ProjectedPointSet) else np.asarray(ps, dtype=float).reshape(-1, 2)
    if len(xy) < 2:
        raise ConfigError("minimal_edges needs at least two points")
    d0 = _min_distance(xy)
    reach = d0 * (1 + rtol)
    grid = GridIndex(xy, reach)
    qi, pj, _ = grid.within(xy, reach)
    m = qi < pj
    e = np.stack([qi[m], pj[m]], axis=1)
    e = e[_lex_order(e)] if len(e) else e.reshape(0, 2)
    return EdgeSet(e.astype(np.int64), d0)


def vertex_directions(ps: ProjectedPointSet | np.ndarray, edges: EdgeSet) -> list[np.ndarray]:
    """Sorted incident-edge angles in ``[-pi, pi)`` for every vertex."""
    xy = ps.xy if isinstance(ps, ProjectedPointSet) else np.asarray(ps, dtype=float)
    out: list[list[float]] = [[] for _ in range(len(xy))]
    for i, j in edges.edges:
        d = xy[j] - xy[i]
        out[i].append(math.atan2(d[1], d[0]))
        out[j].append(math.atan2(-d[1], -d[0]))
    return [np.sort(np.array(a)) for a in out]


def angular_gaps(directions: np.ndarray) -> np.ndarray:
    """Consecutive angles between incident edges around a vertex (summing to 2 pi)."""
    if len(directions) == 0:
        return np.array([2 * math.pi])
    return np.diff(np.concatenate([directions, [directions[0] + 2 * math.pi]]))


def interior_vertices(ps: ProjectedPointSet | np.ndarray, edges: EdgeSet,
                      tol: float = 1e-9) -> np.ndarray:
    """Vertices surrounded by their edges: every angular gap is below pi.

    Vertices on the rim of a finite patch have a gap of at least pi.
    """
    dirs = vertex_directions(ps, edges)
    return np.array([i for i, d in enumerate(dirs) if angular_gaps(d).max() < math.pi - tol], dtype=np.int64)


@dataclass(frozen=True)
class StarReport:
    interior: int             # vertices fully surrounded by edges
    wrong_degree: int         # interior vertices whose degree differs from the target
    max_angle_error: float    # degrees, worst deviation of a gap from 360/degree
    degrees: tuple[int, ...]  # distinct interior degrees seen

    @property
    def regular(self) -> bool:
        return self.interior > 0 and self.wrong_degree == 0


def star_regularity(ps: ProjectedPointSet | np.ndarray, edges: EdgeSet, degree: int) -> StarReport:
    """Compare every interior vertex star with a regular star of ``degree`` edges.

    Degree 4 at 90 degrees is the square lattice, degree 3 at 120 degrees the honeycomb.
    """
    dirs = vertex_directions(ps, edges)
    inner = interior_vertices(ps, edges)
    target = 360.0 / degree
    wrong, worst, seen = 0, 0.0, set()
    for i in inner:
        gaps = np.degrees(angular_gaps(dirs[i]))
        seen.add(len(dirs[i]))
        if len(dirs[i]) != degree:
            wrong += 1
        worst = max(worst, float(np.abs(gaps - target).max()))
    return StarReport(len(inner), wrong, worst, tuple(sorted(seen)))
