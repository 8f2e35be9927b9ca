import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isospec import shape_operators as so
from isospec import tube_integrals as ti

M2 = so.build_shape_family("m2")
M1 = so.build_shape_family("m1")
FAMILIES = [pytest.param(M2, id="m2"), pytest.param(M1, id="m1")]

THETAS = (math.pi / 24, math.pi / 12, math.pi / 8, 5 * math.pi / 36)


def random_directions(n, seed, margin=1e-3):
    rng = np.random.default_rng(seed)
    t = rng.uniform(margin, math.pi - margin, size=n)
    s = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return [so.NormalDirection(tv, sv) for tv, sv in zip(t, s)]


# ---------------------------------------------------------------------------
# the pencil of shape operators

def test_family_construction():
    with pytest.raises(ValueError):
        so.build_shape_family("m3")
    for fam in (M2, M1):
        for matrix in (fam.A_xi, fam.A_zeta, fam.A_zetabar):
            assert matrix.shape == (10, 10)
            assert np.array_equal(matrix, matrix.T)


@pytest.mark.parametrize("fam", FAMILIES)
def test_generators_traceless_and_orthogonal(fam):
    trio = (fam.A_xi, fam.A_zeta, fam.A_zetabar)
    for a in trio:
        assert abs(np.trace(a)) == 0.0
    for i, a in enumerate(trio):
        for b in trio[i + 1:]:
            assert abs(np.sum(a * b)) == 0.0


@pytest.mark.parametrize("fam", FAMILIES)
def test_eigenvalues_constant_on_the_sphere_of_normals(fam):
    directions = random_directions(2000, 42)
    coeffs = np.array(
        [[math.cos(d.t), math.sin(d.t) * math.cos(d.s), math.sin(d.t) * math.sin(d.s)]
         for d in directions]
    )
    if fam.which == "m2":
        stack = np.stack([fam.A_xi, fam.A_zetabar, fam.A_zeta])
    else:
        stack = np.stack([fam.A_xi, fam.A_zeta, fam.A_zetabar])
    matrices = np.einsum("nc,cab->nab", coeffs, stack)
    deviation = np.abs(np.linalg.eigvalsh(matrices) - np.sort(so.EIGENVALUES)[None, :])
    assert float(deviation.max()) < 1e-9


@given(st.floats(1e-3, math.pi - 1e-3), st.floats(0.0, 2.0 * math.pi))
@settings(max_examples=150, deadline=None)
def test_assemble_matches_generators_at_poles(t, s):
    a = so.assemble_A(M2, so.NormalDirection(t, s))
    assert np.allclose(a, a.T, atol=1e-15)
    recon = (
        math.cos(t) * M2.A_xi
        + math.sin(t) * math.cos(s) * M2.A_zetabar
        + math.sin(t) * math.sin(s) * M2.A_zeta
    )
    assert np.allclose(a, recon, atol=1e-14)


def test_pole_limits():
    near_zero = so.assemble_A(M2, so.NormalDirection(1e-9, 0.3))
    assert np.allclose(near_zero, M2.A_xi, atol=1e-8)
    equator = so.assemble_A(M2, so.NormalDirection(math.pi / 2, 0.0))
    assert np.allclose(equator, M2.A_zetabar, atol=1e-15)
    equator_s = so.assemble_A(M1, so.NormalDirection(math.pi / 2, 0.0))
    assert np.allclose(equator_s, M1.A_zeta, atol=1e-15)


# ---------------------------------------------------------------------------
# closed-form eigenbasis

@pytest.mark.parametrize("fam", FAMILIES)
def test_closed_form_eigenbasis_residuals(fam):
    worst_residual = 0.0
    worst_gram = 0.0
    for d in random_directions(500, 7):
        system = so.closed_form_eigenbasis(fam, d)
        worst_residual = max(worst_residual, system.residual)
        gram = system.vectors @ system.vectors.T
        worst_gram = max(worst_gram, float(np.max(np.abs(gram - np.eye(10)))))
        assert np.array_equal(system.eigenvalues, so.EIGENVALUES)
    assert worst_residual < 1e-9
    assert worst_gram < 1e-10


@pytest.mark.parametrize("fam", FAMILIES)
def test_closed_form_matches_numeric_projectors(fam):
    for d in random_directions(50, 13):
        a = so.assemble_A(fam, d)
        system = so.closed_form_eigenbasis(fam, d)
        numeric_values, numeric_vectors = np.linalg.eigh(a)
        for value in (math.sqrt(3.0), 1.0 / math.sqrt(3.0), 0.0):
            ours = system.vectors[np.isclose(system.eigenvalues, value)]
            theirs = numeric_vectors[:, np.isclose(numeric_values, value, atol=1e-9)]
            p_ours = ours.T @ ours
            p_theirs = theirs @ theirs.T
            assert np.max(np.abs(p_ours - p_theirs)) < 1e-8


def test_singular_parameter_raises():
    for t in (0.0, 1e-8, math.pi, math.pi - 1e-8):
        with pytest.raises(so.SingularParameter):
            so.closed_form_eigenbasis(M2, so.NormalDirection(t, 1.0))


# ---------------------------------------------------------------------------
# fiber averages

@pytest.mark.parametrize("fam", FAMILIES)
def test_fiber_average_is_diagonal(fam):
    for theta in THETAS:
        m = so.fiber_average_matrix(fam, theta)
        off = m - np.diag(np.diag(m))
        assert np.max(np.abs(off)) < 1e-10


def expected_coefficients(fam, theta):
    k = ti.g6_focal_pushforward_factors(theta)
    if fam.which == "m2":
        a1 = 0.5 * (k[0] ** 2 + k[1] ** 2 + k[3] ** 2 + k[4] ** 2)
        a3 = 2.0 * k[2] ** 2
        return np.array([a1, a1, a3, a1, a1])
    a1 = k[0] ** 2 + k[4] ** 2
    a2 = k[1] ** 2 + k[3] ** 2
    a3 = 2.0 * k[2] ** 2
    return np.array([a1, a2, a3, a2, a1])


@pytest.mark.parametrize("fam", FAMILIES)
def test_fiber_average_coefficients_closed_form(fam):
    for theta in THETAS:
        coeffs = so.fiber_average_coefficients(fam, theta)
        assert np.max(np.abs(coeffs - expected_coefficients(fam, theta))) < 1e-8


def test_m2_dominant_coefficient():
    # the repeated pair coefficient dominates the middle one away from 0
    for theta in THETAS:
        a1, _, a3, _, _ = so.fiber_average_coefficients(M2, theta)
        assert a1 > a3


def test_energy_constants_both_routes():
    direct = ti.g6_m2_energy_constant()
    assert so.energy_constant_via_fibers(M2) == pytest.approx(direct, abs=1e-8)
    triple = so.energy_constant_via_fibers(M1)
    assert np.max(np.abs(np.array(triple) - np.array(ti.g6_m1_constants()))) < 1e-8


def test_fiber_average_grid_refinement_converges():
    coarse = so.fiber_average_matrix(M2, math.pi / 12, n_grid=64)
    fine = so.fiber_average_matrix(M2, math.pi / 12, n_grid=256)
    assert np.max(np.abs(coarse - fine)) < 1e-10
