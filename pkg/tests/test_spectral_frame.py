import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closed_forms import F4_PREFACTORS, e6_brackets, e6_outer_prefactors, f4_brackets
from oracles import coxeter_plane_basis, weight_embedding
from quasiproj import cartan_matrix, coxeter_plane_pairs, coxeter_rotation_angles, eigensystem, orthonormal_frame
from quasiproj.coxeter_core import coxeter_generators, metric_tensor, root_gram
from quasiproj.spectral_frame import measured_angles
from quasiproj.verify import spectrum_groups

ALL = [str(g) for g in spectrum_groups()] + ["E7", "E8"]


@pytest.mark.parametrize("group", ALL)
def test_eigenpairs_are_right_eigenvectors(group):
    data = cartan_matrix(group)
    c = data.cartan_array().astype(float)
    for p in eigensystem(data):
        assert np.allclose(c @ p.eigenvector, p.eigenvalue * p.eigenvector, atol=1e-10)


@pytest.mark.parametrize("group", ALL)
def test_frame_is_orthonormal_and_rotates(group):
    fr = orthonormal_frame(group)
    assert np.abs(fr.gram() - np.eye(fr.rank)).max() < 1e-9
    angles = coxeter_rotation_angles(fr)
    h = cartan_matrix(group).coxeter_number
    assert angles == [2 * math.pi * fr.exponents[i] / h for i, _ in fr.plane_pairing]


@pytest.mark.parametrize("group", ["F4", "B6", "E6"])
def test_planes_agree_with_coxeter_element_eigenplanes(group):
    """Frame planes coincide with eigenplanes of the integer Coxeter matrix (independent route)."""
    fr = orthonormal_frame(group)
    L = weight_embedding(group)
    c = cartan_matrix(group).cartan_array().astype(float)
    for i, j in fr.plane_pairing:
        basis = coxeter_plane_basis(group, fr.exponents[i])
        for k in (i, j):
            x = (fr.frame_vectors[k] @ c) @ L  # root coefficients -> weight coordinates -> embedding
            assert abs(np.linalg.norm(x) - 1) < 1e-9
            assert np.linalg.norm(x @ basis.T) == pytest.approx(1.0, abs=1e-9)


def test_sign_rule():
    for g in ("F4", "B6", "E6", "D6"):
        y = orthonormal_frame(g).frame_vectors
        for row in y:
            if abs(row[-1]) > 1e-12:
                assert row[-1] > 0
            else:
                assert next(v for v in row if abs(v) > 1e-12) < 0


def test_degenerate_d_even_is_flagged():
    fr = orthonormal_frame("D6")
    assert fr.degenerate
    assert not orthonormal_frame("D5").degenerate


def test_e6_frame_vector_x2():
    fr = orthonormal_frame("E6")
    assert np.allclose(fr.frame_vectors[1], [-0.5, -0.5, 0, 0.5, 0.5, 0], atol=1e-12)


def test_e6_components_of_omega1():
    q = np.array([1, 0, 0, 0, 0, 0]) @ orthonormal_frame("E6").weight_components
    assert q[1] == pytest.approx(-0.5, abs=1e-12)
    assert q[4] == pytest.approx(-1 / (2 * math.sqrt(3)), abs=1e-12)


def test_f4_components_of_omega4():
    q = np.array([0, 0, 0, 1]) @ orthonormal_frame("F4").weight_components
    b = f4_brackets(np.array([0, 0, 0, 1]))
    p = F4_PREFACTORS
    assert abs(q[0]) == pytest.approx(p[1] * abs(b[1]), abs=1e-12)
    assert abs(q[3]) == pytest.approx(p[4] * abs(b[4]), abs=1e-12)


def test_f4_transcribed_brackets_are_exchanged():
    """The m=5 prefactor fits the bracket paired with m=7 as transcribed, and vice versa."""
    fr = orthonormal_frame("F4")
    a = np.random.default_rng(3).integers(-9, 10, size=(50, 4))
    q = a @ fr.weight_components
    b = f4_brackets(a)
    as_transcribed = F4_PREFACTORS[2] * b[2]
    assert np.abs(np.abs(as_transcribed) - np.abs(q[:, 1])).max() > 0.1
    assert np.allclose(np.abs(F4_PREFACTORS[2] * b[3]), np.abs(q[:, 1]), atol=1e-9)
    assert np.allclose(np.abs(F4_PREFACTORS[3] * b[2]), np.abs(q[:, 2]), atol=1e-9)


def test_e6_outer_prefactor_correction_ratio():
    """The transcribed norm factor sqrt(2 sqrt(s)) must be 2 sqrt(s) for unit frame vectors."""
    fr = orthonormal_frame("E6")
    a = np.eye(6, dtype=int)
    q = a @ fr.weight_components
    b = e6_brackets(a)
    good, printed = e6_outer_prefactors(), e6_outer_prefactors(printed=True)
    for k in (1, 6, 3, 4):
        assert np.allclose(np.abs(good[k] * b[k]), np.abs(q[:, k - 1]), atol=1e-12)
        s = 3 + math.sqrt(3) if k in (1, 6) else 3 - math.sqrt(3)
        assert printed[k] / good[k] == pytest.approx(2 * math.sqrt(s) / math.sqrt(2 * math.sqrt(s)))


def test_beta_vectors_are_roots_of_unit_length_squared_two():
    for g in ("F4", "B6", "E6"):
        gram = np.array(root_gram(g), dtype=float)
        for pl in coxeter_plane_pairs(orthonormal_frame(g)):
            for beta in (pl.beta_pos, pl.beta_neg):
                assert beta @ gram @ beta == pytest.approx(2.0, abs=1e-12)
            assert pl.beta_pos @ gram @ pl.beta_neg == pytest.approx(-2 * math.cos(pl.exponent * math.pi / (
                cartan_matrix(g).coxeter_number)), abs=1e-12)


def test_f4_beta_closed_forms():
    """The plane-1 pair matches the closed forms up to order and sign (the x4 sign rule swaps them)."""
    pl = coxeter_plane_pairs(orthonormal_frame("F4"))[0]
    s3, s2 = math.sqrt(3), math.sqrt(2)
    b1 = np.array([1, 0, s3 + 1, 0]) / math.sqrt(3 + s3)
    b4 = np.array([0, (s3 + 1) / s2, 0, s2]) / math.sqrt(3 + s3)
    got = [pl.beta_pos, pl.beta_neg]
    for want in (b1, b4):
        assert any(np.allclose(g, want, atol=1e-12) or np.allclose(g, -want, atol=1e-12) for g in got)


def _vectors(group):
    n = cartan_matrix(group).rank
    return st.lists(st.integers(-30, 30), min_size=n, max_size=n)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["F4", "B6", "E6", "G2", "C5"]).flatmap(lambda g: st.tuples(st.just(g), _vectors(g))))
def test_parseval(args):
    g, a = args
    a = np.array(a)
    q = a @ orthonormal_frame(g).weight_components
    gm = np.array(metric_tensor(g), dtype=float)
    assert q @ q == pytest.approx(a @ gm @ a, abs=1e-9 * max(1.0, a @ gm @ a))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["F4", "B6", "E6"]).flatmap(lambda g: st.tuples(st.just(g), _vectors(g))))
def test_coxeter_element_rotates_each_plane(args):
    g, a = args
    a = np.array(a)
    fr = orthonormal_frame(g)
    h = cartan_matrix(g).coxeter_number
    r1, r2 = coxeter_generators(g)
    q, q2 = a @ fr.weight_components, (a @ r1 @ r2) @ fr.weight_components
    for (i, j), ang in zip(fr.plane_pairing, measured_angles(fr)):
        z, z2 = complex(q[i], q[j]), complex(q2[i], q2[j])
        want = 2 * math.pi * fr.exponents[i] / h
        assert abs(abs(ang) - want) < 1e-12
        assert abs(z * np.exp(1j * ang) - z2) < 1e-8 * max(1.0, abs(z))
    if fr.unpaired is not None:
        assert q2[fr.unpaired] == pytest.approx(-q[fr.unpaired], abs=1e-8)
