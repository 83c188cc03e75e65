import math

import numpy as np
import pytest

from oracles import coxeter_plane_basis, weight_embedding
from quasiproj import (
    BudgetExceededError,
    ConfigError,
    LatticeKind,
    UnsupportedError,
    WindowSpec,
    cartan_matrix,
    enumerate_lattice,
    lattice_array,
    orthonormal_frame,
    voronoi_vertices,
    window_radius,
)
from quasiproj.lattice_window import complement_axes, default_range, nearest_lattice_count, root_lattice_in_weight_box


@pytest.mark.parametrize("group,kind,n", [("F4", "root", 1), ("B6", "weight", 1), ("G2", "root", 3)])
def test_box_size_order_and_root_conversion(group, kind, n):
    a = lattice_array(group, kind, n)
    rank = cartan_matrix(group).rank
    assert a.shape == ((2 * n + 1) ** rank, rank)
    axis = np.arange(-n, n + 1)
    box = np.array(np.meshgrid(*([axis] * rank), indexing="ij")).reshape(rank, -1).T
    c = cartan_matrix(group).cartan_array()
    assert np.array_equal(a, box @ c if kind == "root" else box)
    assert [v.coeffs for v in enumerate_lattice(group, kind, n)] == [tuple(r) for r in a]


def test_range_zero_is_origin():
    assert lattice_array("E6", "root", 0).tolist() == [[0] * 6]


def test_budget_and_bad_range():
    with pytest.raises(BudgetExceededError):
        lattice_array("E6", "root", 9)
    with pytest.raises(ConfigError):
        lattice_array("F4", "root", -1)
    assert default_range("F4") == 3 and default_range("E6") == 2


def test_b6_root_lattice_is_even_last_weight_coordinate():
    a = lattice_array("B6", "weight", 1)
    sub = root_lattice_in_weight_box("B6", 1)
    assert np.array_equal(sub, a[a[:, 5] % 2 == 0])
    assert (lattice_array("B6", "root", 1)[:, 5] % 2 == 0).all()


def test_f4_root_and_weight_lattices_coincide():
    a = lattice_array("F4", "weight", 1)
    assert np.array_equal(root_lattice_in_weight_box("F4", 1), a)


@pytest.mark.parametrize("group,kind,count", [("F4", "root", 24), ("F4", "weight", 24), ("B6", "root", 64),
                                              ("E6", "root", 54), ("E6", "weight", 720), ("A2", "root", 6),
                                              ("A2", "weight", 6), ("A3", "weight", 24)])
def test_voronoi_vertex_counts(group, kind, count):
    assert voronoi_vertices(group, kind).vertex_count == count


@pytest.mark.parametrize("group,kind", [("B6", "weight"), ("E7", "root"), ("D4", "root")])
def test_voronoi_unsupported(group, kind):
    with pytest.raises(UnsupportedError):
        voronoi_vertices(group, kind)


@pytest.mark.parametrize(
    "group,kind,point,at_least",
    [
        ("B6", "root", [0, 0, 0, 0, 0, 1], 7),
        ("E6", "root", [1, 0, 0, 0, 0, 0], 7),
        ("E6", "root", [0, 0, 0, 0, 1, 0], 7),
        ("E6", "weight", [0, 0, 1 / 3, 0, 0, 0], 7),
        ("A2", "weight", [1 / 3, 1 / 3], 3),
        ("A3", "weight", [1 / 4, 1 / 4, 1 / 4], 4),
        ("A3", "root", [1, 0, 0], 4),
        ("F4", "root", [0.5, 0, 0, 0], 5),
    ],
)
def test_voronoi_seeds_are_vertices(group, kind, point, at_least):
    """A Voronoi vertex of a rank-r lattice has at least r+1 equidistant nearest lattice points."""
    _, count = nearest_lattice_count(group, kind, np.array(point))
    assert count >= at_least


def test_f4_half_omega4_is_a_facet_centre():
    """1/2 omega_4 is equidistant from only two lattice points, so it is a facet centre.

    1/2 omega_1 is a genuine vertex. The window keeps the 1/2 omega_4 orbit
    (24 points, the documented cell data); see the decisions ledger.
    """
    d4, n4 = nearest_lattice_count("F4", "root", np.array([0, 0, 0, 0.5]))
    d1, n1 = nearest_lattice_count("F4", "root", np.array([0.5, 0, 0, 0]))
    assert n4 == 2 and n1 == 8
    assert d4 == pytest.approx(0.25) and d1 == pytest.approx(0.5)


def _oracle_radius(group, kind, exponent):
    verts = voronoi_vertices(group, kind).vertices()
    x = verts @ weight_embedding(group)
    par = x @ coxeter_plane_basis(group, exponent).T
    return math.sqrt(max(((x * x).sum(axis=1) - (par * par).sum(axis=1)).max(), 0))


@pytest.mark.parametrize(
    "group,kind,par,exponent,radius",
    [
        ("F4", "root", (0, 3), 1, 0.444036916989),
        ("F4", "root", (1, 2), 5, 0.444036916989),
        ("B6", "root", (0, 5), 1, 1.224744871392),
        ("B6", "root", (1, 4), 3, 1.154700538379),
        ("E6", "root", (0, 5), 1, 1.154700538379),
        ("E6", "weight", (0, 5), 1, 0.812634650243),
        ("E6", "weight", (1, 4), 4, 0.816496580928),
    ],
)
def test_window_radius(group, kind, par, exponent, radius):
    fr = orthonormal_frame(group)
    w = window_radius(voronoi_vertices(group, kind), fr, complement_axes(fr.rank, par))
    assert w.radius == pytest.approx(radius, abs=1e-9)
    assert w.radius == pytest.approx(_oracle_radius(group, kind, exponent), abs=1e-9)
    assert w.min_radius <= w.radius


def test_b6_window_radius_closed_form():
    fr = orthonormal_frame("B6")
    w = window_radius(voronoi_vertices("B6", "root"), fr, complement_axes(6, (0, 5)))
    assert w.radius == pytest.approx(math.sqrt(6) / 2, abs=1e-12)


def test_window_spec_validation():
    with pytest.raises(ConfigError):
        WindowSpec((), 1.0)
    with pytest.raises(ConfigError):
        WindowSpec((1,), 0.0)
    with pytest.raises(ConfigError):
        WindowSpec((1,), float("inf"))
    fr = orthonormal_frame("F4")
    with pytest.raises(ConfigError):
        window_radius(voronoi_vertices("F4", "root"), fr, (7,))
    with pytest.raises(ConfigError):
        window_radius(voronoi_vertices("E6", "root"), fr, (1, 2))


def test_lattice_kind_parse():
    assert LatticeKind.parse("Weight") is LatticeKind.WEIGHT
    with pytest.raises(ConfigError):
        LatticeKind.parse("dual")
