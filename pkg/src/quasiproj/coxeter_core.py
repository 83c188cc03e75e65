"""Exact Cartan data, reflections and Weyl orbits for crystallographic types.

Everything here is integer or ``fractions.Fraction`` arithmetic. Lattice
vectors are coefficient tuples over either the simple roots (root basis) or
the fundamental weights (weight basis); reflections act on weight
coordinates, where they are integer row updates.

Node numbering follows chain order with the short or branch node last:

* ``F4``: 1-2=>3-4, nodes 1, 2 long (norm 2), nodes 3, 4 short (norm 1).
* ``B_n``: chain ending in the short root ``alpha_n`` of norm 1.
* ``C_n``: chain ending in the long root ``alpha_n``; short roots norm 1.
* ``D_n``: chain 1..n-2, nodes n-1 and n both attached to n-2.
* ``E6``: chain 1-2-3-4-5, node 6 attached to node 3 (``E7``/``E8`` attach
  the last node to 3 and 5 respectively).
* ``G2``: long root first (norm 2), short root norm 2/3.

All node and coordinate indices in this module are 0-based.
"""

from __future__ import annotations

import enum
import json
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConfigError

FAMILIES = "ABCDEFG"


@dataclass(frozen=True, order=True)
class GroupId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ConfigError(f"rank must be a positive integer, got {self.rank!r}")
        ok = {
            "A": self.rank >= 1,
            "B": self.rank >= 2,
            "C": self.rank >= 2,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
            "F": self.rank == 4,
            "G": self.rank == 2,
        }[self.family]
        if not ok:
            raise ConfigError(f"rank {self.rank} is not admissible for family {self.family}")

    @classmethod
    def parse(cls, text: str | GroupId) -> GroupId:
        if isinstance(text, GroupId):
            return text
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(text))
        if not m:
            raise ConfigError(f"cannot parse group id {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


class Basis(enum.Enum):
    ROOT = "root"      # b_i over simple roots alpha_i
    WEIGHT = "weight"  # a_i over fundamental weights omega_i


@dataclass(frozen=True)
class RootSystemData:
    group: GroupId
    cartan: tuple[tuple[int, ...], ...]
    root_norms: tuple[Fraction, ...]
    exponents: tuple[int, ...]
    coxeter_number: int

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def simply_laced(self) -> bool:
        return len(set(self.root_norms)) == 1

    def cartan_array(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)


@dataclass(frozen=True)
class LatticeVector:
    group: GroupId
    coeffs: tuple[int, ...]
    basis: Basis = Basis.WEIGHT

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.group.rank:
            raise ConfigError(
                f"{self.group} vectors need {self.group.rank} coefficients, got {len(self.coeffs)}"
            )


@dataclass(frozen=True)
class Converted:
    """Result of a basis change; coefficients may be non-integral."""

    group: GroupId
    coeffs: tuple[Fraction, ...]
    basis: Basis
    integral: bool

    def as_lattice_vector(self) -> LatticeVector:
        if not self.integral:
            raise ValueError(f"{self.coeffs} is not integral in the {self.basis.value} basis")
        return LatticeVector(self.group, tuple(int(c) for c in self.coeffs), self.basis)


def _chain(n: int) -> list[list[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _chain_plus_branch(n: int, at: int) -> list[list[int]]:
    """Chain on nodes 0..n-2 with node n-1 attached to node ``at``."""
    c = [row + [0] for row in _chain(n - 1)] + [[0] * n]
    c[n - 1][n - 1] = 2
    c[at][n - 1] = c[n - 1][at] = -1
    return c


def _cartan_and_norms(g: GroupId) -> tuple[list[list[int]], list[Fraction]]:
    n = g.rank
    two, one = Fraction(2), Fraction(1)
    if g.family == "A":
        return _chain(n), [two] * n
    if g.family == "B":
        c = _chain(n)
        c[n - 2][n - 1] = -2
        return c, [two] * (n - 1) + [one]
    if g.family == "C":
        c = _chain(n)
        c[n - 1][n - 2] = -2
        return c, [one] * (n - 1) + [two]
    if g.family == "D":
        c = _chain_plus_branch(n, n - 3)
        return c, [two] * n
    if g.family == "E":
        c = _chain_plus_branch(n, {6: 2, 7: 2, 8: 4}[n])
        return c, [two] * n
    if g.family == "F":
        c = _chain(4)
        c[1][2] = -2
        return c, [two, two, one, one]
    # G2
    return [[2, -3], [-1, 2]], [two, Fraction(2, 3)]


def _exponents(g: GroupId) -> tuple[list[int], int]:
    n = g.rank
    if g.family == "A":
        return list(range(1, n + 1)), n + 1
    if g.family in "BC":
        return list(range(1, 2 * n, 2)), 2 * n
    if g.family == "D":
        return sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]), 2 * (n - 1)
    if g.family == "E":
        return {
            6: ([1, 4, 5, 7, 8, 11], 12),
            7: ([1, 5, 7, 9, 11, 13, 17], 18),
            8: ([1, 7, 11, 13, 17, 19, 23, 29], 30),
        }[n]
    if g.family == "F":
        return [1, 5, 7, 11], 12
    return [1, 5], 6


@lru_cache(maxsize=None)
def _cartan_matrix(group: GroupId) -> RootSystemData:
    c, norms = _cartan_and_norms(group)
    exps, h = _exponents(group)
    return RootSystemData(
        group=group,
        cartan=tuple(tuple(r) for r in c),
        root_norms=tuple(norms),
        exponents=tuple(exps),
        coxeter_number=h,
    )


def cartan_matrix(group: GroupId | str) -> RootSystemData:
    """Cartan matrix ``C_ij = 2(a_i, a_j)/(a_j, a_j)`` plus norms, exponents and h."""
    return _cartan_matrix(GroupId.parse(group))


def _as_data(data: RootSystemData | GroupId | str) -> RootSystemData:
    return data if isinstance(data, RootSystemData) else cartan_matrix(data)


def _rational_inverse(m: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _inverse_cached(group: GroupId) -> tuple[tuple[Fraction, ...], ...]:
    inv = _rational_inverse(_cartan_matrix(group).cartan)
    return tuple(tuple(r) for r in inv)


def cartan_inverse(data: RootSystemData | GroupId | str) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of the Cartan matrix; ``omega_i = sum_j (C^-1)_ij alpha_j``."""
    return _inverse_cached(_as_data(data).group)


@lru_cache(maxsize=None)
def _metric_cached(group: GroupId) -> tuple[tuple[Fraction, ...], ...]:
    data = _cartan_matrix(group)
    inv = _inverse_cached(group)
    n = data.rank
    return tuple(tuple(inv[i][j] * data.root_norms[j] / 2 for j in range(n)) for i in range(n))


def metric_tensor(data: RootSystemData | GroupId | str) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the fundamental weights, ``G_ij = (C^-1)_ij (a_j, a_j) / 2``."""
    return _metric_cached(_as_data(data).group)


def root_gram(data: RootSystemData | GroupId | str) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the simple roots, ``(a_i, a_j) = C_ij (a_j, a_j) / 2``."""
    data = _as_data(data)
    n = data.rank
    return tuple(
        tuple(Fraction(data.cartan[i][j]) * data.root_norms[j] / 2 for j in range(n)) for i in range(n)
    )


def _reflect(a: tuple[int, ...], i: int, crow: tuple[int, ...]) -> tuple[int, ...]:
    ai = a[i]
    if ai == 0:
        return a
    return tuple(x - ai * c for x, c in zip(a, crow))


def simple_reflection(v: LatticeVector, i: int) -> LatticeVector:
    """Reflect a weight-basis vector in the hyperplane orthogonal to ``alpha_i``.

    In weight coordinates ``r_i`` subtracts ``a_i`` times row ``i`` of the
    Cartan matrix.
    """
    if v.basis is not Basis.WEIGHT:
        raise ConfigError("simple_reflection acts on weight-basis vectors")
    data = cartan_matrix(v.group)
    if not 0 <= i < data.rank:
        raise ConfigError(f"node index {i} out of range for {v.group}")
    return LatticeVector(v.group, _reflect(v.coeffs, i, data.cartan[i]), Basis.WEIGHT)


@dataclass(frozen=True)
class Orbit:
    """Weyl orbit of integer weight coordinates, times a rational ``scale``."""

    group: GroupId
    points: tuple[tuple[int, ...], ...]
    scale: Fraction = Fraction(1)

    def __len__(self):
        return len(self.points)

    def array(self) -> np.ndarray:
        """Float coordinates with the scale applied, shape ``(len, rank)``."""
        return np.array(self.points, dtype=float).reshape(len(self.points), self.group.rank) * float(
            self.scale
        )

    def to_json(self) -> str:
        return json.dumps(
            {"group": str(self.group), "scale": str(self.scale), "points": [list(p) for p in self.points]},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> Orbit:
        d = json.loads(text)
        return cls(GroupId.parse(d["group"]), tuple(tuple(p) for p in d["points"]), Fraction(d["scale"]))


def weyl_orbit(seed: LatticeVector | Sequence[int], group: GroupId | str | None = None,
               scale: Fraction | int | str = 1) -> Orbit:
    """Breadth-first closure of ``seed`` under the simple reflections.

    ``scale`` is carried alongside so that scaled seeds such as
    ``1/3 (0,0,1,0,0,0)`` keep integer keys.
    """
    if isinstance(seed, LatticeVector):
        if seed.basis is not Basis.WEIGHT:
            seed = basis_convert(seed).as_lattice_vector()
        group, start = seed.group, seed.coeffs
    else:
        if group is None:
            raise ConfigError("group is required when seed is a plain sequence")
        group = GroupId.parse(group)
        start = LatticeVector(group, tuple(seed)).coeffs
    rows = cartan_matrix(group).cartan
    n = len(rows)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(n):
                if a[i] == 0:
                    continue
                b = _reflect(a, i, rows[i])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return Orbit(group, tuple(sorted(seen)), Fraction(scale))


def group_order(group: GroupId | str) -> int:
    """|W(G)| as the orbit size of the strictly dominant vector (1, 2, ..., n)."""
    g = GroupId.parse(group)
    return len(weyl_orbit(tuple(range(1, g.rank + 1)), g))


def basis_convert(v: LatticeVector) -> Converted:
    """Root -> weight is ``a = b C`` (always integral); weight -> root is ``b = a C^-1``."""
    data = cartan_matrix(v.group)
    n = data.rank
    if v.basis is Basis.ROOT:
        a = tuple(Fraction(sum(v.coeffs[i] * data.cartan[i][j] for i in range(n))) for j in range(n))
        return Converted(v.group, a, Basis.WEIGHT, True)
    inv = cartan_inverse(data)
    b = tuple(sum((v.coeffs[i] * inv[i][j] for i in range(n)), Fraction(0)) for j in range(n))
    return Converted(v.group, b, Basis.ROOT, all(x.denominator == 1 for x in b))


def to_weight(v: LatticeVector) -> LatticeVector:
    return v if v.basis is Basis.WEIGHT else basis_convert(v).as_lattice_vector()


def inner_product(u: LatticeVector, v: LatticeVector) -> Fraction:
    if u.group != v.group:
        raise ConfigError(f"group mismatch: {u.group} vs {v.group}")
    a, b = to_weight(u).coeffs, to_weight(v).coeffs
    g = metric_tensor(u.group)
    n = len(a)
    return sum((a[i] * g[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]), Fraction(0))


def bipartition(data: RootSystemData | GroupId | str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the Dynkin diagram nodes into two sets of mutually commuting reflections.

    The set containing node 0 comes first. Raises if the diagram has an odd
    cycle, which cannot happen for a valid finite-type diagram.
    """
    data = _as_data(data)
    n = data.rank
    color = [-1] * n
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and data.cartan[i][j] != 0:
                    if color[j] < 0:
                        color[j] = 1 - color[i]
                        stack.append(j)
                    elif color[j] == color[i]:
                        raise ConfigError(f"Dynkin diagram of {data.group} is not bipartite")
    return (
        tuple(i for i in range(n) if color[i] == 0),
        tuple(i for i in range(n) if color[i] == 1),
    )


def reflection_matrix(data: RootSystemData | GroupId | str, i: int) -> np.ndarray:
    """Integer matrix ``M`` with ``r_i(a) = a @ M`` for weight row vectors ``a``."""
    data = _as_data(data)
    m = np.eye(data.rank, dtype=np.int64)
    m[i, :] -= np.array(data.cartan[i], dtype=np.int64)
    return m


def coxeter_generators(data: RootSystemData | GroupId | str) -> tuple[np.ndarray, np.ndarray]:
    """Integer matrices of ``R1`` and ``R2`` (products over the two commuting node sets)."""
    data = _as_data(data)
    out = []
    for part in bipartition(data):
        m = np.eye(data.rank, dtype=np.int64)
        for i in part:
            m = m @ reflection_matrix(data, i)
        out.append(m)
    return out[0], out[1]


def dihedral_elements(data: RootSystemData | GroupId | str) -> list[np.ndarray]:
    """The 2h integer matrices of the dihedral group generated by ``R1`` and ``R2``."""
    data = _as_data(data)
    r1, r2 = coxeter_generators(data)
    c = r1 @ r2
    eye = np.eye(data.rank, dtype=np.int64)
    out = []
    p = eye
    for _ in range(data.coxeter_number):
        out.append(p)
        out.append(p @ r1)
        p = p @ c
    if not np.array_equal(p, eye):
        raise ConfigError(f"Coxeter element of {data.group} does not have order {data.coxeter_number}")
    return out


def lattice_vectors(group: GroupId | str, rows: Iterable[Sequence[int]],
                    basis: Basis = Basis.WEIGHT) -> list[LatticeVector]:
    g = GroupId.parse(group)
    return [LatticeVector(g, tuple(int(x) for x in r), basis) for r in rows]
