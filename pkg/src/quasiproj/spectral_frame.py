"""Eigensystem of the Cartan matrix, orthonormal frame and Coxeter planes.

The frame vectors ``x_i`` are stored as real coefficient rows over the
simple roots. Frame index ``i`` (0-based) carries the ``i``-th smallest
exponent, so plane ``k`` pairs axes ``k`` and ``n-1-k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coxeter_core import (
    GroupId,
    RootSystemData,
    cartan_matrix,
    coxeter_generators,
    root_gram,
)
from .errors import SpectralError

MATCH_TOL = 1e-6
CHECK_TOL = 1e-9


def exponent_eigenvalue(m: int, h: int) -> float:
    return 2.0 * (1.0 - math.cos(m * math.pi / h))


@dataclass(frozen=True)
class EigenPair:
    exponent: int
    eigenvalue: float
    eigenvector: np.ndarray = field(repr=False)  # X_{.i}, components over the simple roots


@dataclass(frozen=True)
class SpectralFrame:
    group: GroupId
    pairs: tuple[EigenPair, ...]
    frame_vectors: np.ndarray = field(repr=False)  # row i = coefficients of x_i over alpha_j
    plane_pairing: tuple[tuple[int, int], ...]
    unpaired: int | None = None
    degenerate: bool = False          # D_n, n even: eigenvalue 2 is doubly degenerate
    normalization_fallback: bool = False

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(p.exponent for p in self.pairs)

    @property
    def weight_components(self) -> np.ndarray:
        """Matrix ``F`` with ``F[j, i] = (omega_j, x_i)``; components are ``a @ F``."""
        data = cartan_matrix(self.group)
        half = np.array([float(x) / 2 for x in data.root_norms])
        return self.frame_vectors.T * half[:, None]

    @property
    def root_components(self) -> np.ndarray:
        """Matrix with ``[j, i] = (alpha_j, x_i)``; components are ``b @ it``."""
        return _gram(self.group) @ self.frame_vectors.T

    def gram(self) -> np.ndarray:
        """Bilinear-form Gram matrix of the frame vectors (identity when orthonormal)."""
        y = self.frame_vectors
        return y @ _gram(self.group) @ y.T


@dataclass(frozen=True)
class CoxeterPlane:
    index: int                    # k: plane spans axes k and n-1-k
    axes: tuple[int, int]
    exponent: int
    beta_pos: np.ndarray = field(repr=False)  # coefficients over alpha_j
    beta_neg: np.ndarray = field(repr=False)
    rotation_angle: float = 0.0   # 2 pi m / h


def _gram(group: GroupId) -> np.ndarray:
    return np.array(root_gram(group), dtype=float)


def _half_norms(data: RootSystemData) -> np.ndarray:
    return np.array([float(x) / 2 for x in data.root_norms])


def eigensystem(data: RootSystemData | GroupId | str) -> list[EigenPair]:
    """Eigenpairs of the Cartan matrix, sorted by exponent.

    Non-simply-laced Cartan matrices are not symmetric; the symmetric matrix
    ``D^-1/2 C D^1/2`` (``D`` = half root norms) has the same spectrum and its
    eigenvectors map back to right eigenvectors of ``C`` via ``X = D^1/2 Z``.
    Eigenvalues are matched to exponents through ``2 (1 - cos(m pi / h))``.
    """
    if not isinstance(data, RootSystemData):
        data = cartan_matrix(data)
    c = data.cartan_array().astype(float)
    d = _half_norms(data)
    s = c * np.sqrt(d)[None, :] / np.sqrt(d)[:, None]
    s = (s + s.T) / 2
    lam, z = np.linalg.eigh(s)
    h = data.coxeter_number
    expected = [exponent_eigenvalue(m, h) for m in data.exponents]
    for got, want, m in zip(lam, expected, data.exponents):
        if abs(got - want) > MATCH_TOL:
            raise SpectralError(
                f"{data.group}: eigenvalue {got!r} does not match exponent {m} (expected {want!r})"
            )
    x = z * np.sqrt(d)[:, None]
    return [EigenPair(m, float(l), x[:, i].copy()) for i, (m, l) in enumerate(zip(data.exponents, lam))]


def _sign_fix(y: np.ndarray) -> np.ndarray:
    # last coefficient positive; if it vanishes, first nonzero one negative
    if abs(y[-1]) > 1e-12:
        return y if y[-1] > 0 else -y
    first = next(v for v in y if abs(v) > 1e-12)
    return y if first < 0 else -y


def orthonormal_frame(data: RootSystemData | GroupId | str) -> SpectralFrame:
    """Unit vectors ``x_i`` built from the Cartan eigenvectors.

    Simply-laced: ``x_i = lambda_i^-1/2 sum_j X_ji alpha_j`` with unit
    eigenvectors. Otherwise ``x_i = (h lambda_i)^-1/2 sum_j X_ji 2 alpha_j /
    (alpha_j, alpha_j)`` with the last eigenvector component scaled to 1;
    the result is then renormalised under the bilinear form. If a last
    component vanishes that scaling is impossible and the unit eigenvector
    is used instead (``normalization_fallback``).
    """
    if not isinstance(data, RootSystemData):
        data = cartan_matrix(data)
    pairs = eigensystem(data)
    n, h = data.rank, data.coxeter_number
    d = _half_norms(data)
    a = _gram(data.group)
    rows = []
    fallback = False
    for p in pairs:
        x = p.eigenvector
        if data.simply_laced:
            y = x / math.sqrt(p.eigenvalue)
        else:
            if abs(x[-1]) > 1e-12:
                x = x / x[-1]
            else:
                fallback = True
            y = x / d / math.sqrt(h * p.eigenvalue)
        y = y / math.sqrt(y @ a @ y)
        rows.append(_sign_fix(y))
    frame = np.array(rows)
    pairing = tuple((k, n - 1 - k) for k in range(n // 2))
    unpaired = n // 2 if n % 2 else None
    exps = data.exponents
    for i, j in pairing:
        if exps[i] + exps[j] != h:
            raise SpectralError(f"{data.group}: exponents {exps[i]} and {exps[j]} do not sum to h={h}")
    if unpaired is not None and 2 * exps[unpaired] != h:
        raise SpectralError(f"{data.group}: unpaired exponent {exps[unpaired]} is not h/2")
    degenerate = len(set(exps)) < len(exps)
    return SpectralFrame(data.group, tuple(pairs), frame, pairing, unpaired, degenerate, fallback)


def coxeter_plane_pairs(frame: SpectralFrame) -> list[CoxeterPlane]:
    """Simple roots ``beta_k, beta_{n+1-k}`` of the dihedral subsystem in each plane."""
    h = cartan_matrix(frame.group).coxeter_number
    out = []
    for k, (i, j) in enumerate(frame.plane_pairing):
        m = frame.pairs[i].exponent
        s, c = math.sin(m * math.pi / (2 * h)), math.cos(m * math.pi / (2 * h))
        xi, xj = frame.frame_vectors[i], frame.frame_vectors[j]
        out.append(
            CoxeterPlane(
                index=k,
                axes=(i, j),
                exponent=m,
                beta_pos=math.sqrt(2) * (s * xi + c * xj),
                beta_neg=math.sqrt(2) * (s * xi - c * xj),
                rotation_angle=2 * math.pi * m / h,
            )
        )
    return out


def coxeter_element_in_frame(frame: SpectralFrame) -> np.ndarray:
    """Matrix ``K`` of ``R1 R2`` acting on frame components: ``q' = q @ K``."""
    r1, r2 = coxeter_generators(frame.group)
    f = frame.weight_components
    return np.linalg.solve(f, (r1 @ r2).astype(float) @ f)


def measured_angles(frame: SpectralFrame) -> list[float]:
    """Signed rotation angle of ``R1 R2`` on each plane, read off the frame matrix."""
    k = coxeter_element_in_frame(frame)
    out = []
    for i, j in frame.plane_pairing:
        # row-vector convention: a rotation by t has block [[cos t, sin t], [-sin t, cos t]]
        out.append(math.atan2(k[i, j], k[i, i]))
    return out


def coxeter_rotation_angles(frame: SpectralFrame, tol: float = CHECK_TOL) -> list[float]:
    """Angles ``2 pi m_k / h`` per plane, after checking them against ``R1 R2``.

    The Coxeter element in frame coordinates must be block diagonal with a
    rotation block of that angle (either orientation) on every plane and
    ``-1`` on the unpaired axis.
    """
    h = cartan_matrix(frame.group).coxeter_number
    k = coxeter_element_in_frame(frame)
    n = frame.rank
    mask = np.zeros((n, n), dtype=bool)
    angles = []
    for i, j in frame.plane_pairing:
        idx = np.ix_([i, j], [i, j])
        mask[idx] = True
        block = k[idx]
        want = 2 * math.pi * frame.pairs[i].exponent / h
        c, s = math.cos(want), math.sin(want)
        ok = any(
            np.abs(block - np.array([[c, sg * s], [-sg * s, c]])).max() < tol for sg in (1, -1)
        )
        if not ok:
            raise SpectralError(f"{frame.group}: plane {(i, j)} is not rotated by {want!r}:\n{block}")
        angles.append(want)
    if frame.unpaired is not None:
        u = frame.unpaired
        mask[u, u] = True
        if abs(k[u, u] + 1) > tol:
            raise SpectralError(f"{frame.group}: unpaired axis is not reversed ({k[u, u]!r})")
    if np.abs(k[~mask]).max(initial=0.0) > tol:
        raise SpectralError(f"{frame.group}: Coxeter element is not block diagonal in the frame")
    return angles
