"""Tests for the coupled block operator, its solver and its structural checks."""

import numpy as np
import pytest

from coupling import (
    ProductNorms, build_rhs, check_factorization, ellipticity_samples, skew_cancellation,
    solve_conjugate, solve_frequency, solve_full_sweep, solve_sweep, relative_residual,
)
from coupling.solver import RESIDUAL_TOLERANCE
from cq.grid import CQGrid
from model.frequency import ComplexFrequency
from model.incident import get_incident
from model.pulse import get_pulse

S = 1.0 + 2.0j


@pytest.fixture(scope='module')
def incident():
    pulse = get_pulse('gaussian', center=2.0, width=0.2)
    return get_incident('plane_wave', pulse, 1.0, direction=np.array([0.0, 0.0, 1.0]))


@pytest.fixture(scope='module')
def system(scenario1, incident):
    return scenario1.problem.system(S, incident)


def random_vector(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def test_block_layout_has_structural_zeros(system):
    blocks = system.blocks()
    assert blocks[0][2] is None
    assert blocks[2][0] is None
    n_u, n1, n0 = system.sizes
    assert blocks[0][1].shape == (n_u, n1)
    assert blocks[1][2].shape == (n1, n0)
    assert blocks[2][1].shape == (n0, n1)


def test_coupling_blocks_are_exact_negative_transposes(system):
    blocks = system.blocks()
    assert (blocks[1][0] + blocks[0][1].T).count_nonzero() == 0


def test_skew_coupling_cancels_under_rotation(system):
    rng = np.random.default_rng(11)
    for _ in range(5):
        assert skew_cancellation(system, rng) <= 1e-12


def test_apply_matches_dense_matrix(system):
    rng = np.random.default_rng(3)
    x = random_vector(rng, sum(system.sizes))
    np.testing.assert_allclose(system.apply(x), system.dense() @ x, rtol=1e-10, atol=1e-12)


def test_rhs_has_zero_third_component(system):
    d1, d2, d3 = system.rhs
    assert not np.any(d3)
    assert np.any(d1) and np.any(d2)
    assert system.rhs_vector.shape == (sum(system.sizes),)


def test_solution_satisfies_residual_tolerance(system):
    solution = solve_frequency(system)
    assert solution.residual <= RESIDUAL_TOLERANCE
    assert relative_residual(system, solution.vector(), system.rhs_vector) <= RESIDUAL_TOLERANCE
    assert solution.frequency.s == S


def test_manufactured_solution_is_recovered(system):
    rng = np.random.default_rng(19)
    x = random_vector(rng, sum(system.sizes))
    solution = solve_frequency(system, system.apply(x))
    np.testing.assert_allclose(solution.vector(), x, rtol=1e-7, atol=1e-7 * np.abs(x).max())


def test_zero_data_gives_zero_solution(system):
    solution = solve_frequency(system, np.zeros(sum(system.sizes), dtype=complex))
    assert not np.any(solution.vector())
    assert solution.residual == 0.0


def test_conjugate_frequency_gives_conjugate_solution(scenario1, system):
    b = system.rhs_vector
    x = solve_frequency(system).vector()
    conj_system = scenario1.problem.system(np.conj(S), rhs=system.split(np.conj(b)))
    y = solve_frequency(conj_system).vector()
    assert np.linalg.norm(y - np.conj(x)) <= 1e-9 * np.linalg.norm(x)


def test_conjugate_pair_solve_reuses_system(scenario1, system):
    rng = np.random.default_rng(4)
    b = random_vector(rng, sum(system.sizes))
    b[-system.sizes[2]:] = 0.0
    conj_system = scenario1.problem.system(np.conj(S), rhs=system.split(b))
    direct = solve_frequency(conj_system).vector()
    assert np.linalg.norm(solve_conjugate(system, b) - direct) <= 1e-9 * np.linalg.norm(direct)


def test_solution_conjugate_flips_frequency(system):
    solution = solve_frequency(system)
    flipped = solution.conjugate()
    assert flipped.frequency.s == np.conj(S)
    np.testing.assert_array_equal(flipped.U_hat, solution.U_hat.conj())


def test_rhs_without_incident_is_zero(scenario1):
    d1, d2, d3 = build_rhs(S, None, scenario1.mesh, scenario1.spaces)
    assert not (np.any(d1) or np.any(d2) or np.any(d3))


def test_factorization_reproduces_operator(system):
    rng = np.random.default_rng(23)
    for _ in range(3):
        assert check_factorization(system, random_vector(rng, sum(system.sizes))) <= 1e-8


@pytest.mark.parametrize('s', [1.0 + 2.0j, 0.3 + 5.0j, 2.0])
def test_rotated_form_is_strictly_positive(scenario1, s):
    rng = np.random.default_rng(29)
    values = ellipticity_samples(scenario1.problem.system(s), rng, count=10)
    assert values.min() > 0


def test_product_norms_are_positive(scenario1, system):
    norms = ProductNorms(scenario1.problem)
    rng = np.random.default_rng(31)
    x = random_vector(rng, sum(system.sizes))
    assert all(c > 0 for c in norms.components(x))
    assert norms.norm(x) > 0
    b = system.apply(x)
    assert norms.dual_norm(b) > 0
    assert np.isfinite(norms.amplification(x, b))
    np.testing.assert_allclose(norms.trace_gram, norms.trace_gram.T, atol=1e-10)
    assert norms.amplification(x, np.zeros_like(b)) == 0.0


def test_block_norms_cover_every_nonzero_block(system):
    norms = system.block_norms()
    assert set(norms) == {'A', 'sG', '-sG^T', 'W', '-Lp', 'L', 'V'}
    assert norms['sG'] == pytest.approx(norms['-sG^T'])
    assert system.norm_estimate() >= max(norms.values())


def test_frequency_object_is_accepted(scenario1):
    system = scenario1.problem.system(ComplexFrequency(S))
    assert system.s == S


def test_full_sweep_solves_the_conjugate_rows(scenario1, incident):
    grid = CQGrid(horizon=4.0, steps=8, eps_cq=1e-6)
    solutions, mirror = solve_full_sweep(scenario1.problem, incident, grid)
    half = solve_sweep(scenario1.problem, incident, grid)
    assert len(solutions) == grid.n_frequencies
    assert len(mirror) == grid.length - grid.n_frequencies
    for ours, reference in zip(solutions, half):
        scale = np.linalg.norm(reference.vector())
        assert np.linalg.norm(ours.vector() - reference.vector()) <= 1e-10 * scale
    for k, sol in zip(grid.mirror_indices(), mirror):
        partner = solutions[k]
        assert sol.frequency.s == pytest.approx(np.conj(partner.frequency.s))
        scale = np.linalg.norm(partner.vector())
        assert np.linalg.norm(sol.vector() - np.conj(partner.vector())) <= 1e-9 * scale
