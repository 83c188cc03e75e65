"""Independent reference computations used to cross-check the library.

None of these route through the Cartan eigenvectors or the grid index:
group orders come from closing the reflection matrices into a matrix
group, Coxeter planes from complex eigenvectors of the integer Coxeter
element in a Cholesky embedding, and planar analysis is brute force.
"""

from __future__ import annotations

import math

import numpy as np

from quasiproj.coxeter_core import cartan_matrix, coxeter_generators, metric_tensor, reflection_matrix


def matrix_group_order(group, limit: int = 200_000) -> int:
    """Size of the matrix group generated by the simple reflections (BFS over matrices)."""
    data = cartan_matrix(group)
    gens = [reflection_matrix(data, i) for i in range(data.rank)]
    eye = np.eye(data.rank, dtype=np.int64)
    seen = {eye.tobytes()}
    frontier = [eye]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = m @ g
                key = p.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(p)
        frontier = nxt
        if len(seen) > limit:
            raise RuntimeError("group too large for the matrix oracle")
    return len(seen)


def weight_embedding(group) -> np.ndarray:
    """``L`` with ``G = L L^T``: a weight row ``a`` sits at Euclidean ``a @ L``."""
    g = np.array(metric_tensor(group), dtype=float)
    return np.linalg.cholesky(g)


def coxeter_plane_basis(group, exponent: int) -> np.ndarray:
    """Orthonormal 2 x n basis (Euclidean) of the plane rotated by ``2 pi m / h``."""
    data = cartan_matrix(group)
    r1, r2 = coxeter_generators(data)
    L = weight_embedding(group)
    t = np.linalg.solve(L, (r1 @ r2).astype(float) @ L)  # x' = x @ t
    w, v = np.linalg.eig(t.T)
    theta = 2 * math.pi * exponent / data.coxeter_number
    k = int(np.argmin(np.abs(w - complex(math.cos(theta), math.sin(theta)))))
    q, _ = np.linalg.qr(np.column_stack([v[:, k].real, v[:, k].imag]))
    return q.T


def oracle_projection(group, a: np.ndarray, exponent: int, vertices: np.ndarray,
                      tol: float = 1e-9, dedup: float = 1e-8) -> np.ndarray:
    """Planar points of weight rows ``a`` whose distance from the plane is within the vertex radius."""
    L = weight_embedding(group)
    basis = coxeter_plane_basis(group, exponent)

    def split(rows):
        x = np.asarray(rows, dtype=float) @ L
        par = x @ basis.T
        perp = np.sqrt(np.maximum((x * x).sum(axis=1) - (par * par).sum(axis=1), 0.0))
        return par, perp

    _, vperp = split(vertices)
    r0 = vperp.max()
    par, perp = split(a)
    kept = par[perp <= r0 + tol]
    return brute_dedup(kept, dedup)


def brute_dedup(xy: np.ndarray, tol: float) -> np.ndarray:
    out: list[np.ndarray] = []
    for p in xy:
        if all(np.hypot(*(p - q)) > tol for q in out):
            out.append(p)
    return np.array(out).reshape(-1, 2)


def brute_min_edges(xy: np.ndarray, rtol: float = 1e-6) -> tuple[float, set[tuple[int, int]]]:
    d = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
    iu = np.triu_indices(len(xy), 1)
    d0 = d[iu].min()
    pairs = {(int(i), int(j)) for i, j in zip(*iu) if d[i, j] <= d0 * (1 + rtol)}
    return float(d0), pairs


def brute_invariant(xy: np.ndarray, m: np.ndarray, tol: float = 1e-6) -> bool:
    """Does the linear map ``m`` (about the centroid) permute the points? Quadratic check."""
    p = xy - xy.mean(axis=0)
    img = p @ m.T
    d = np.hypot(img[:, None, 0] - p[None, :, 0], img[:, None, 1] - p[None, :, 1])
    close = d <= tol
    return bool((close.sum(axis=1) == 1).all() and (close.sum(axis=0) == 1).all())


def brute_symmetry_order(xy: np.ndarray, max_order: int, tol: float = 1e-6) -> int:
    for k in range(max_order, 1, -1):
        c, s = math.cos(2 * math.pi / k), math.sin(2 * math.pi / k)
        if brute_invariant(xy, np.array([[c, -s], [s, c]]), tol):
            return k
    return 1
