"""Tests for the P1 vector finite element matrices."""

import numpy as np
import pytest
from scipy.sparse.linalg import norm as sparse_norm

from fem.assembly import assemble_fem, build_A, gradients, rigid_body_modes
from model.errors import InvertedElementError
from model.frequency import ComplexFrequency


@pytest.fixture
def cube_fem(unit_cube, material):
    return assemble_fem(unit_cube, material)


def test_tetrahedron_mass_entries(reference_tet, material):
    fem = assemble_fem(reference_tet, material)
    volume = 1.0 / 6.0
    mass = fem.mass.toarray()
    assert mass[0, 0] == pytest.approx(volume / 10)
    assert mass[0, 3] == pytest.approx(volume / 20)
    assert mass[0, 1] == 0.0
    assert mass.sum() == pytest.approx(3 * volume)


def test_stiffness_is_symmetric(cube_fem):
    K = cube_fem.stiffness
    assert sparse_norm(K - K.T) <= 1e-14 * sparse_norm(K)


def test_rigid_body_modes_are_in_the_kernel(unit_cube, cube_fem):
    modes = rigid_body_modes(unit_cube.vertices)
    scale = sparse_norm(cube_fem.stiffness)
    for mode in modes:
        assert np.linalg.norm(cube_fem.stiffness @ mode) <= 1e-12 * scale * np.linalg.norm(mode)


def test_uniaxial_and_shear_strain_energy(unit_cube, cube_fem, material):
    x, y = unit_cube.vertices[:, 0], unit_cube.vertices[:, 1]
    stretch = np.zeros(cube_fem.size)
    stretch[0::3] = x
    shear = np.zeros(cube_fem.size)
    shear[0::3] = y
    K = cube_fem.stiffness
    assert stretch @ K @ stretch == pytest.approx(material.lame_lambda + 2 * material.lame_mu, rel=1e-12)
    assert shear @ K @ shear == pytest.approx(material.lame_mu, rel=1e-12)


def test_energy_identity(cube_fem, material):
    rng = np.random.default_rng(11)
    U = rng.standard_normal(cube_fem.size) + 1j * rng.standard_normal(cube_fem.size)
    for s in (1.0, 0.5 + 4j, 2 - 1j):
        A = build_A(s, cube_fem)
        lhs = np.vdot(U, A @ U)
        strain = np.vdot(U, cube_fem.stiffness @ U)
        kinetic = np.vdot(U, cube_fem.mass @ U)
        rhs = (strain + material.rho_e * s ** 2 * kinetic) / material.rho_0
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_energy_norm_bounds_rotated_form(cube_fem):
    rng = np.random.default_rng(5)
    U = rng.standard_normal(cube_fem.size) + 1j * rng.standard_normal(cube_fem.size)
    f = ComplexFrequency(0.5 + 3j)
    A = build_A(f, cube_fem)
    rotated = np.real(np.exp(-1j * f.theta) * np.vdot(U, A @ U))
    # Re(e^{-i theta} U^H A U) = (sigma / |s|) |||U|||^2
    expected = f.sigma / f.modulus * cube_fem.energy_norm(U, f.modulus) ** 2
    assert rotated == pytest.approx(expected, rel=1e-10)


def test_build_a_accepts_frequency_objects(cube_fem):
    a = build_A(2.0, cube_fem)
    b = build_A(ComplexFrequency(2.0), cube_fem)
    assert sparse_norm(a - b) == 0.0
    assert a.dtype == complex


def test_inverted_element_is_refused():
    vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
    with pytest.raises(InvertedElementError):
        gradients(vertices, np.array([[0, 2, 1, 3]]))
