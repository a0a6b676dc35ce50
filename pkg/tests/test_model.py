"""Tests for frequencies, materials, pulses, incident fields and time signals."""

import cmath

import numpy as np
import pytest
from scipy.integrate import trapezoid

from model.errors import FrequencyError, FsiError, IncidentFieldError, MaterialError, SingularPointError
from model.frequency import ComplexFrequency, as_frequency
from model.incident import PlaneWave, PointSource, eval_incident_trace, get_incident, laplace_of_incident
from model.material import MaterialSystem
from model.pulse import ModulatedGaussianPulse, gaussian_pulse, get_pulse
from model.signal import TimeSignal


# =========================================================================
# Frequencies
# =========================================================================
@pytest.mark.parametrize('s', [-0.5 + 2j, 0j, -1.0, 1j, complex('nan')])
def test_frequency_outside_right_half_plane_is_refused(s):
    with pytest.raises(FrequencyError):
        ComplexFrequency(s)


def test_frequency_derived_quantities():
    f = ComplexFrequency(0.5 + 2j)
    assert f.sigma == 0.5
    assert f.sigma_bar == 0.5
    assert f.theta == pytest.approx(cmath.phase(0.5 + 2j))
    assert ComplexFrequency(3.0).sigma_bar == 1.0
    assert f.conjugate().s == 0.5 - 2j
    assert complex(f) == 0.5 + 2j
    assert f.wavenumber(2.0) == 0.25 + 1j


def test_frequency_on_ray():
    f = ComplexFrequency.on_ray(1.0, 5.0)
    assert f.sigma == 1.0
    assert f.modulus == pytest.approx(5.0)
    with pytest.raises(FrequencyError):
        ComplexFrequency.on_ray(2.0, 1.0)


def test_as_frequency_passes_instances_through():
    f = ComplexFrequency(1 + 1j)
    assert as_frequency(f) is f
    assert as_frequency(2.0).s == 2.0


def test_frequency_error_carries_module():
    with pytest.raises(FrequencyError) as info:
        ComplexFrequency(-1.0)
    assert info.value.module == 'core_model'
    assert str(info.value).startswith('[core_model]')


# =========================================================================
# Material
# =========================================================================
def test_material_rejects_zero_shear_modulus():
    with pytest.raises(MaterialError, match='lame_mu = 0'):
        MaterialSystem(rho_e=1, lame_lambda=1, lame_mu=0, rho_0=1, sound_speed=1, horizon=1)


def test_material_collects_every_violation():
    with pytest.raises(MaterialError) as info:
        MaterialSystem(rho_e=-1, lame_lambda=1, lame_mu=1, rho_0=0, sound_speed=1, horizon=1)
    assert 'rho_e' in str(info.value) and 'rho_0' in str(info.value)


def test_material_from_dict_ignores_unknown_keys(material):
    data = dict(material.to_dict(), colour='grey')
    assert MaterialSystem.from_dict(data) == material
    assert material.pressure_wave_speed == pytest.approx(np.sqrt((52.5 + 2 * 35.2) / 7.85))


# =========================================================================
# Pulses
# =========================================================================
@pytest.fixture
def pulse() -> ModulatedGaussianPulse:
    return ModulatedGaussianPulse(amplitude=1.0, center=1.0, width=0.1, carrier=6.0, phase=np.pi / 2)


@pytest.mark.parametrize('s', [1.0, 2 + 3j, 0.5 + 5j, 4.0])
def test_pulse_laplace_transform_matches_quadrature(pulse, s):
    t = np.linspace(0.0, 3.0, 30001)
    numeric = trapezoid(np.exp(-s * t) * pulse(t), t)
    scale = trapezoid(np.exp(-np.real(s) * t) * np.abs(pulse(t)), t)
    assert abs(pulse.laplace(s) - numeric) <= 1e-8 * scale


def test_pulse_transform_is_conjugate_symmetric(pulse):
    s = np.array([1 + 2j, 0.3 + 7j])
    np.testing.assert_allclose(pulse.laplace(s.conj()), np.conj(pulse.laplace(s)), rtol=1e-13)


def test_pulse_vanishes_before_time_zero(pulse):
    assert pulse.causality_leak() <= 1e-12
    assert np.abs(pulse(np.linspace(-1.0, 0.0, 11))).max() <= 1e-12


def test_pulse_too_early_is_refused():
    with pytest.raises(IncidentFieldError, match='center'):
        ModulatedGaussianPulse(center=0.2, width=0.1)


def test_pulse_derivative_matches_finite_difference(pulse):
    t = np.linspace(0.8, 1.2, 9)
    h = 1e-6
    numeric = (pulse(t + h) - pulse(t - h)) / (2 * h)
    np.testing.assert_allclose(pulse.derivative(t, 1), numeric, atol=1e-5 * np.abs(numeric).max())


def test_gaussian_pulse_peaks_at_center():
    pulse = gaussian_pulse(amplitude=2.0, center=1.0, width=0.1)
    assert pulse(1.0) == pytest.approx(2.0)
    assert pulse.carrier == 0.0


def test_pulse_factory():
    assert get_pulse('gaussian', center=1.0, width=0.1).carrier == 0.0
    assert isinstance(get_pulse('gaussian_modulated_sine', center=1.0, width=0.1, carrier=3.0),
                      ModulatedGaussianPulse)
    with pytest.raises(IncidentFieldError, match='Unsupported pulse shape'):
        get_pulse('square')


# =========================================================================
# Incident fields
# =========================================================================
def test_plane_wave_is_causal_on_the_boundary(sphere1):
    # support starts after the wave crosses the body
    late = ModulatedGaussianPulse(center=1.9, width=0.15, carrier=6.0, phase=np.pi / 2)
    wave = PlaneWave(late, [1.0, 0.0, 0.0])
    value, normal = wave.trace(sphere1.vertices, np.linspace(-1.0, 0.0, 11), sphere1.vertex_normals)
    assert np.abs(value).max() <= 1e-12
    assert np.abs(normal).max() <= 1e-10


def test_plane_wave_laplace_conjugation(pulse, sphere1):
    wave = PlaneWave(pulse, [0.0, 0.6, 0.8])
    s = ComplexFrequency(1 + 3j)
    value, normal = wave.laplace(s, sphere1.vertices, sphere1.vertex_normals)
    value_bar, normal_bar = wave.laplace(s.conjugate(), sphere1.vertices, sphere1.vertex_normals)
    np.testing.assert_allclose(value_bar, value.conj(), rtol=1e-12)
    np.testing.assert_allclose(normal_bar, normal.conj(), rtol=1e-12)


def test_plane_wave_normal_derivative_matches_laplace_symbol(pulse):
    wave = PlaneWave(pulse, [1.0, 0.0, 0.0])
    s = ComplexFrequency(2.0)
    x = np.array([[0.3, 0.0, 0.0]])
    value, normal = wave.laplace(s, x, np.array([[1.0, 0.0, 0.0]]))
    assert normal[0] == pytest.approx(-2.0 * value[0])


def test_plane_wave_direction_must_be_unit(pulse):
    with pytest.raises(IncidentFieldError):
        PlaneWave(pulse, [2.0, 0.0, 0.0])


def test_point_source_singular_at_source(pulse):
    source = PointSource(pulse, [-3.0, 0.0, 0.0])
    with pytest.raises(SingularPointError):
        source.trace(np.array([[-3.0, 0.0, 0.0]]), 1.0)


def test_point_source_laplace_is_pulse_times_green(pulse):
    source = get_incident('point_source', pulse, source=[-3.0, 0.0, 0.0])
    s = ComplexFrequency(1 + 1j)
    value, _ = source.laplace(s, np.array([[0.0, 0.0, 0.0]]))
    expected = pulse.laplace(s.s) * np.exp(-3.0 * s.s) / (4 * np.pi * 3.0)
    assert value[0] == pytest.approx(expected, rel=1e-12)


def test_unknown_incident_kind(pulse):
    with pytest.raises(IncidentFieldError):
        get_incident('spherical', pulse)


def test_module_level_incident_helpers(pulse):
    field = get_incident('point_source', pulse, 1.0, source=[-3.0, 0.0, 0.0])
    x = np.array([[1.0, 0.0, 0.0]])
    normal = np.array([[1.0, 0.0, 0.0]])
    t = np.linspace(0.0, 6.0, 7)
    value, derivative = eval_incident_trace(field, x, t, normal)
    expected_value, expected_derivative = field.trace(x, t, normal)
    np.testing.assert_array_equal(value, expected_value)
    np.testing.assert_array_equal(derivative, expected_derivative)
    s = ComplexFrequency(1.0 + 2.0j)
    hat, hat_n = laplace_of_incident(field, s, x, normal)
    assert np.isfinite(hat).all() and np.isfinite(hat_n).all()
    assert laplace_of_incident(field, s, x)[1] is None


# =========================================================================
# Time signals
# =========================================================================
def test_time_signal_requires_causality():
    with pytest.raises(FsiError, match='does not vanish'):
        TimeSignal(0.1, np.ones(5))
    signal = TimeSignal(0.1, np.ones(5), causal=False)
    assert signal.steps == 4
    np.testing.assert_allclose(signal.times, [0.0, 0.1, 0.2, 0.3, 0.4])


def test_time_signal_from_function_is_read_only():
    signal = TimeSignal.from_function(lambda t: t ** 2, 0.5, 4)
    assert signal.peak == pytest.approx(4.0)
    with pytest.raises(ValueError):
        signal.samples[0] = 1.0
    assert signal.scaled(2.0).peak == pytest.approx(8.0)
