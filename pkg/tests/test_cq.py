"""Tests for the CQ grid, the scaled FFT convolution and contour inversion."""

import numpy as np
import pytest

from cq import (
    CQGrid, contour_invert, cq_convolve, forward_transform, get_transfer, grid_frequencies, reality_residue,
)
from cq.transfer import ScalarTransfer, delay, identity, integrator
from model.errors import GridConfigError, TransferEvaluationError, TruncationError
from model.signal import TimeSignal


def smooth_data(t):
    return t ** 2 * np.exp(-t)


def smooth_integral(t):
    return 2.0 - np.exp(-t) * (t ** 2 + 2.0 * t + 2.0)


def integration_error(steps: int, scheme: str) -> float:
    grid = CQGrid(horizon=1.0, steps=steps, scheme=scheme, eps_cq=1e-8)
    result = cq_convolve(integrator(), smooth_data(grid.times), grid)
    return float(np.abs(result - smooth_integral(grid.times)).max())


@pytest.mark.parametrize('kwargs, message', [
    ({'steps': 100}, 'power of two'),
    ({'steps': 1}, 'integer >= 2'),
    ({'eps_cq': 1.5}, 'eps_cq'),
    ({'eps_cq': 0.0}, 'eps_cq'),
    ({'scheme': 'rk4'}, 'unknown scheme'),
    ({'horizon': -1.0}, 'horizon'),
])
def test_invalid_grid_is_refused(kwargs, message):
    with pytest.raises(GridConfigError, match=message):
        CQGrid(**kwargs)


def test_grid_errors_are_collected():
    with pytest.raises(GridConfigError) as info:
        CQGrid(horizon=-1.0, steps=100)
    assert 'horizon' in str(info.value) and 'power of two' in str(info.value)
    assert str(info.value).startswith('[cq_engine]')


def test_grid_derived_quantities():
    grid = CQGrid(horizon=2.0, steps=32, eps_cq=1e-6)
    assert grid.dt == pytest.approx(1.0 / 16)
    assert grid.length == 33
    assert grid.n_frequencies == 17
    assert len(grid.times) == 33
    assert grid.times[-1] == pytest.approx(2.0)
    assert grid.radius ** grid.steps == pytest.approx(1e-6, rel=1e-10)


def test_grid_frequencies_helper():
    grid = CQGrid(horizon=2.0, steps=32, eps_cq=1e-6)
    helper = grid_frequencies(2.0, 32, eps_cq=1e-6)
    assert [f.s for f in helper] == [f.s for f in grid.frequencies()]
    assert len(helper) == grid.n_frequencies


@pytest.mark.parametrize('scheme', ['bdf2', 'backward_euler'])
def test_sample_points_lie_in_right_half_plane(scheme):
    grid = CQGrid(horizon=4.0, steps=64, scheme=scheme)
    points = grid.sample_points()
    assert np.all(points.real > 0)
    assert len(grid.frequencies()) == grid.n_frequencies
    assert abs(points[0].imag) <= 1e-12 * abs(points[0])


def test_identity_transfer_reproduces_data():
    grid = CQGrid(horizon=1.0, steps=64, eps_cq=1e-6)
    data = smooth_data(grid.times)
    np.testing.assert_allclose(cq_convolve(identity(), data, grid), data, atol=1e-9)


def test_bdf2_integrator_converges_at_second_order():
    order = np.log2(integration_error(64, 'bdf2') / integration_error(128, 'bdf2'))
    assert order >= 1.8


def test_backward_euler_integrator_converges_at_first_order():
    coarse = integration_error(64, 'backward_euler')
    fine = integration_error(128, 'backward_euler')
    assert np.log2(coarse / fine) >= 0.8
    assert fine > integration_error(128, 'bdf2')


def test_bdf2_step_response_is_exact():
    grid = CQGrid(horizon=1.0, steps=32, scheme='bdf2', eps_cq=1e-8)
    n = np.arange(grid.length)
    result = cq_convolve(integrator(), np.ones(grid.length), grid)
    expected = grid.times + grid.dt / 2 + grid.dt * 3.0 ** (-n - 1) / 2
    np.testing.assert_allclose(result, expected, atol=1e-6)


def test_delay_transfer_converges():
    tau = 0.25

    def data(t):
        t = np.maximum(t, 0.0)
        return t ** 3 * np.exp(-3.0 * t)

    errors = []
    for steps in (128, 256):
        grid = CQGrid(horizon=1.0, steps=steps, eps_cq=1e-8)
        result = cq_convolve(delay(tau), data(grid.times), grid)
        errors.append(np.abs(result - data(grid.times - tau)).max())
    assert np.log2(errors[0] / errors[1]) >= 1.7


def test_negative_delay_is_refused():
    with pytest.raises(ValueError):
        delay(-0.1)


def test_transfer_factory():
    assert get_transfer('identity').name == 'identity'
    assert get_transfer('delay', tau=0.5).name == 'delay(0.5)'
    with pytest.raises(ValueError, match='Unknown transfer map'):
        get_transfer('fractional')


def test_transfer_is_evaluated_once_per_half_spectrum_frequency():
    grid = CQGrid(horizon=1.0, steps=16)
    calls = []

    def counting(s, data):
        calls.append(s)
        return data

    cq_convolve(counting, smooth_data(grid.times), grid)
    assert len(calls) == grid.steps // 2 + 1


def test_failing_frequency_is_reported_with_its_index():
    grid = CQGrid(horizon=1.0, steps=16)
    bad = grid.frequencies()[3].s

    def fragile(s, data):
        if abs(s.s - bad) < 1e-12:
            raise ArithmeticError('breakdown')
        return data

    with pytest.raises(TransferEvaluationError) as info:
        cq_convolve(fragile, smooth_data(grid.times), grid)
    assert info.value.index == 3
    assert 'breakdown' in str(info.value)


def test_threaded_sweep_matches_serial():
    grid = CQGrid(horizon=1.0, steps=32, eps_cq=1e-6)
    data = np.stack([smooth_data(grid.times), np.sin(grid.times) ** 2], axis=1)
    transfer = ScalarTransfer(lambda s: 1.0 / (s + 1.0), 'resolvent')
    serial = cq_convolve(transfer, data, grid, threads=1)
    threaded = cq_convolve(transfer, data, grid, threads=2)
    np.testing.assert_array_equal(serial, threaded)


def test_time_signal_in_time_signal_out():
    grid = CQGrid(horizon=1.0, steps=16, eps_cq=1e-6)
    signal = TimeSignal(grid.dt, smooth_data(grid.times))
    result = cq_convolve(identity(), signal, grid)
    assert isinstance(result, TimeSignal)
    assert result.dt == grid.dt


def test_time_step_mismatch_is_refused():
    grid = CQGrid(horizon=1.0, steps=16)
    signal = TimeSignal(0.1, smooth_data(0.1 * np.arange(grid.length)))
    with pytest.raises(ValueError, match='does not match'):
        cq_convolve(identity(), signal, grid)


def test_reality_residue_of_real_data_is_round_off():
    grid = CQGrid(horizon=1.0, steps=32, eps_cq=1e-6)
    spectrum = forward_transform(smooth_data(grid.times), grid, full=True)
    assert spectrum.shape == (grid.length,)
    np.testing.assert_allclose(spectrum[:grid.n_frequencies],
                               forward_transform(smooth_data(grid.times), grid), atol=1e-12)
    assert reality_residue(spectrum, grid) <= 1e-9


def test_reality_residue_sees_non_hermitian_upper_rows():
    grid = CQGrid(horizon=1.0, steps=32, eps_cq=1e-6)
    spectrum = forward_transform(smooth_data(grid.times), grid, full=True)
    broken = spectrum.copy()
    broken[grid.n_frequencies:] *= 1.5
    assert reality_residue(broken, grid) > 1e-3


def test_reality_residue_needs_full_spectrum():
    grid = CQGrid(horizon=1.0, steps=32, eps_cq=1e-6)
    with pytest.raises(ValueError, match='full spectrum of 33 rows'):
        reality_residue(forward_transform(smooth_data(grid.times), grid), grid)


def test_mirror_rows_pair_with_half_spectrum():
    grid = CQGrid(horizon=2.0, steps=8, eps_cq=1e-6)
    np.testing.assert_array_equal(grid.mirror_indices(), [4, 3, 2, 1])
    s = grid.sample_points()
    spectrum = forward_transform(smooth_data(grid.times), grid, full=True)
    upper = spectrum[grid.n_frequencies:]
    np.testing.assert_allclose(upper, np.conj(spectrum[grid.mirror_indices()]), atol=1e-12)
    assert len(s) + len(grid.mirror_indices()) == grid.length


def test_forward_transform_checks_length():
    grid = CQGrid(horizon=1.0, steps=16)
    with pytest.raises(ValueError, match='expected 17 samples'):
        forward_transform(np.zeros(16), grid)


def test_contour_inversion_of_double_pole():
    value = contour_invert(lambda s: 1.0 / (s + 1.0) ** 2, sigma=1.0, t=1.0)
    assert value == pytest.approx(np.exp(-1.0), abs=1e-4)


def test_contour_inversion_before_time_zero_is_zero():
    assert contour_invert(lambda s: 1.0 / (s + 1.0), sigma=1.0, t=-0.5) == 0.0


def test_contour_inversion_needs_positive_abscissa():
    with pytest.raises(ValueError):
        contour_invert(lambda s: 1.0 / (s + 1.0), sigma=0.0, t=1.0)


@pytest.mark.slow
def test_contour_inversion_refuses_non_decaying_transform():
    with pytest.raises(TruncationError):
        contour_invert(lambda s: np.ones_like(s), sigma=1.0, t=1.0)
