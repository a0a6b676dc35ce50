"""Tests for probes, time-domain reconstruction and the elastic energy history."""

import numpy as np
import pandas as pd
import pytest

from coupling.solver import FrequencySolution
from cq.grid import CQGrid
from fields import (
    ObservationSet, SolutionTrace, arrival_time, energy_report, precursor_ratio, pulse_passed_time,
    reconstruct, trailing_decay, winding_number,
)
from model.errors import ObservationError
from model.incident import get_incident
from model.pulse import get_pulse
from pipeline.simulation import simulate


@pytest.fixture(scope='module')
def incident():
    pulse = get_pulse('gaussian', center=2.0, width=0.2)
    return get_incident('plane_wave', pulse, 1.0, direction=np.array([0.0, 0.0, 1.0]))


@pytest.fixture(scope='module')
def grid():
    return CQGrid(horizon=4.0, steps=16, eps_cq=1e-6)


@pytest.fixture(scope='module')
def observation():
    return ObservationSet(exterior_points=[[0.0, 0.0, 2.0]], surface_probes=[0], volume_probes=[0])


@pytest.fixture(scope='module')
def result(scenario1, incident, grid, observation):
    return simulate(scenario1, incident, grid, observation)


def test_winding_number_separates_inside_from_outside(sphere2):
    values = winding_number(sphere2, [[0.0, 0.0, 0.0], [0.3, -0.2, 0.1], [0.0, 0.0, 3.0], [5.0, 1.0, 0.0]])
    np.testing.assert_allclose(values, [1.0, 1.0, 0.0, 0.0], atol=1e-10)


def test_probe_names_carry_kind_prefix():
    obs = ObservationSet(exterior_points=[[0, 0, 2], [0, 0, 3]], surface_probes=[0, 1, 2])
    assert obs.names('exterior') == ['ext0', 'ext1']
    assert obs.names('interior') == []
    assert obs.names('surface') == ['surf0', 'surf1', 'surf2']
    assert obs.size == 5


def test_observation_from_dict_ignores_unknown_keys():
    obs = ObservationSet.from_dict({'exterior_points': [[0, 0, 2]], 'colour': 'red'})
    assert obs.exterior_points.shape == (1, 3)
    assert obs.volume_probes.size == 0


@pytest.mark.parametrize('kwargs, message', [
    ({'exterior_points': [[0.0, 0.0, 0.0]]}, 'wrong side'),
    ({'interior_points': [[0.0, 0.0, 3.0]]}, 'wrong side'),
    ({'surface_probes': [10_000]}, 'surface probe'),
    ({'volume_probes': [-1]}, 'volume probe'),
    ({'exterior_points': [[0.0, 0.0, 1.05]]}, 'h_min'),
])
def test_invalid_probes_are_refused(spaces1, kwargs, message):
    with pytest.raises(ObservationError, match=message):
        ObservationSet(**kwargs).validate(spaces1)


def test_valid_probes_pass(spaces1, observation):
    observation.validate(spaces1)


def test_precursor_ratio():
    times = np.arange(6.0)
    assert precursor_ratio([0, 0, 0, 1, -2, 0.5], times, arrival=3.0) == 0.0
    assert precursor_ratio([0, 0.1, 0, 1, -2, 0.5], times, arrival=3.0) == pytest.approx(0.05)
    assert precursor_ratio(np.zeros(6), times, arrival=3.0) == 0.0


def test_arrival_time_grows_with_distance(incident, sphere1):
    near = arrival_time(incident, sphere1, [0.0, 0.0, 2.0])
    far = arrival_time(incident, sphere1, [0.0, 0.0, 3.0])
    assert far - near == pytest.approx(1.0, abs=1e-12)
    slow = arrival_time(incident, sphere1, [0.0, 0.0, 3.0], sound_speed=0.5)
    assert slow > far


def test_pulse_passed_time_exceeds_center(incident, sphere1):
    assert pulse_passed_time(incident, sphere1) > incident.pulse.center + 1.0 - 1e-12


def test_coupled_run_is_finite(result, grid):
    trace = result.trace
    assert trace.is_finite()
    assert {probe.name for probe in trace.probes} == {'ext0', 'surf0', 'vol0'}
    assert trace.reality_residue <= 1e-6
    assert trace.displacement.samples.shape[0] == grid.length
    assert len(result.mirror) == grid.length - grid.n_frequencies


def test_corrupted_conjugate_rows_raise_the_reality_residue(result, grid, observation, scenario1, incident):
    corrupted = [FrequencySolution(sol.U_hat, 1.5 * sol.phi_hat, sol.lambda_hat, sol.frequency)
                 for sol in result.mirror]
    trace = reconstruct(result.solutions, grid, observation, scenario1.spaces, scenario1.material,
                        incident=incident, mirror_solutions=corrupted)
    assert trace.reality_residue > 1e-3


def test_reality_residue_is_unmeasured_without_conjugate_rows(result, grid, observation, scenario1):
    trace = reconstruct(result.solutions, grid, observation, scenario1.spaces, scenario1.material)
    assert np.isnan(trace.reality_residue)


def test_conjugate_rows_must_match_the_grid(result, grid, observation, scenario1):
    with pytest.raises(ObservationError, match='conjugate-row'):
        reconstruct(result.solutions, grid, observation, scenario1.spaces, scenario1.material,
                    mirror_solutions=result.mirror[:-1])


def test_probe_frames_have_expected_columns(result, grid):
    frames = result.trace.frames()
    exterior = frames['ext0']
    assert len(exterior) == grid.length
    assert list(exterior.columns[:2]) == ['t', 're_value']
    assert 'pressure_scattered' in exterior.columns
    assert 'lambda' in frames['surf0'].columns
    assert {'u_x', 'u_y', 'u_z', 'velocity_x'} <= set(frames['vol0'].columns)


def test_probe_lookup(result):
    assert result.trace.probe('surf0').kind == 'surface'
    assert len(result.trace.by_kind('exterior')) == 1
    with pytest.raises(KeyError):
        result.trace.probe('ext7')


def test_coefficients_cover_every_unknown(result, scenario1, grid):
    coefficients = result.coefficients()
    n_u, n1, n0 = scenario1.problem.system(1.0).sizes
    assert coefficients.shape == (grid.length, n_u + n1 + n0)
    np.testing.assert_allclose(coefficients[:, :n_u], result.trace.displacement.samples, atol=1e-12)


def test_total_pressure_adds_incident_part(result, scenario1, incident, grid, observation):
    total = reconstruct(result.solutions, grid, observation, scenario1.spaces, scenario1.material,
                        incident=incident, pressure_field='total')
    probe = total.probe('ext0')
    np.testing.assert_allclose(
        probe.channels['pressure'].samples,
        probe.channels['pressure_scattered'].samples + probe.channels['pressure_incident'].samples,
    )


def test_reconstruct_refuses_mismatched_frequencies(result, scenario1, grid, observation):
    with pytest.raises(ObservationError, match='does not match the grid'):
        reconstruct(result.solutions[:-1], grid, observation, scenario1.spaces, scenario1.material)


def test_reconstruct_refuses_unknown_pressure_field(result, scenario1, grid, observation):
    with pytest.raises(ObservationError, match='pressure_field'):
        reconstruct(result.solutions, grid, observation, scenario1.spaces, scenario1.material,
                    pressure_field='incident')


def test_energy_report(result, scenario1, grid):
    frame = energy_report(result.trace, scenario1.fem)
    assert list(frame.columns) == ['t', 'kinetic', 'strain', 'total']
    assert len(frame) == grid.length
    assert (frame['strain'] >= -1e-14).all()
    assert (frame['kinetic'] >= -1e-14).all()
    np.testing.assert_allclose(frame['total'], frame['kinetic'] + frame['strain'])


def test_energy_report_needs_displacement(grid, scenario1):
    with pytest.raises(ObservationError):
        energy_report(SolutionTrace(grid, []), scenario1.fem)


def test_trailing_decay():
    t = np.linspace(0.0, 1.0, 11)
    decaying = pd.DataFrame({'t': t, 'total': np.exp(-t)})
    assert trailing_decay(decaying, start=0.2)['monotone']
    growing = pd.DataFrame({'t': t, 'total': 1.0 + t})
    report = trailing_decay(growing, start=0.0)
    assert not report['monotone']
    assert report['max_increase'] == pytest.approx(0.05)
    assert trailing_decay(decaying, start=2.0)['samples'] == 0
