"""
Frequencies, incident fields and pulses.
"""

from dataclasses import replace

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from model.errors import FrequencyError
from model.frequency import ComplexFrequency
from model.pulse import CAUSALITY_TOLERANCE
from ..registry import register
from ..report import CheckResult

MODULE = 'core_model'


@register('frequency_right_half_plane', MODULE)
def frequency_right_half_plane(ctx) -> CheckResult:
    """Every CQ frequency of both schemes has Re s > 0; Re s <= 0 is refused"""
    rows = []
    for scheme in ('bdf2', 'backward_euler'):
        grid = replace(ctx.grid(), scheme=scheme)
        points = grid.sample_points()
        rows.append({'scheme': scheme, 'min_sigma': float(points.real.min()),
                     'count': len(grid.frequencies())})
    refused = 0
    probes = (-0.5 + 2j, 0j, -1.0, 1j)
    for s in probes:
        try:
            ComplexFrequency(s)
        except FrequencyError:
            refused += 1
    frame = pd.DataFrame(rows)
    min_sigma = float(frame['min_sigma'].min())
    return CheckResult(
        passed=min_sigma > 0 and refused == len(probes),
        values={'min_sigma': min_sigma, 'refused': refused, 'probed': len(probes)},
        samples=frame,
    )


@register('incident_causality', MODULE)
def incident_causality(ctx) -> CheckResult:
    """Incident trace and normal derivative on Gamma vanish for t <= 0"""
    incident = ctx.incident()
    mesh = ctx.scenario(ctx.level).mesh
    normals = mesh.vertex_normals
    times = np.linspace(-1.0, 0.0, 51)
    value, normal_derivative = incident.trace(mesh.vertices, times, normals)
    peak = incident.pulse.peak
    leak = float(max(np.abs(value).max(), np.abs(normal_derivative).max()) / peak)
    pulse_leak = incident.pulse.causality_leak()
    return CheckResult(
        passed=leak <= CAUSALITY_TOLERANCE and pulse_leak <= CAUSALITY_TOLERANCE,
        values={'trace_leak': leak, 'pulse_leak': pulse_leak, 'tolerance': CAUSALITY_TOLERANCE},
    )


@register('incident_conjugation', MODULE)
def incident_conjugation(ctx) -> CheckResult:
    """Phi_inc(conj s) = conj Phi_inc(s) on Gamma"""
    incident = ctx.incident()
    mesh = ctx.scenario(ctx.level).mesh
    rows = []
    frequencies = ctx.frequency_grid()
    for frequency in frequencies:
        value, normal = incident.laplace(frequency, mesh.vertices, mesh.vertex_normals)
        value_c, normal_c = incident.laplace(frequency.conjugate(), mesh.vertices, mesh.vertex_normals)
        scale = max(np.abs(value).max(), np.abs(normal).max(), 1e-300)
        error = max(np.abs(value_c - np.conj(value)).max(), np.abs(normal_c - np.conj(normal)).max())
        rows.append({'s': frequency.s, 'relative_error': float(error / scale)})
    frame = pd.DataFrame(rows)
    worst = float(frame['relative_error'].max())
    return CheckResult(passed=worst <= 1e-12, values={'max_relative_error': worst},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('pulse_laplace_oracle', MODULE)
def pulse_laplace_oracle(ctx) -> CheckResult:
    """Closed-form pulse transform against trapezoidal quadrature of the time profile"""
    pulse = ctx.incident().pulse
    t = np.linspace(0.0, pulse.center + 12.0 * pulse.width, 40001)
    profile = pulse(t)
    frequencies = [1.0, 2.0 + 3.0j, 0.5 + 5.0j, 4.0]
    rows = []
    for s in frequencies:
        reference = trapezoid(np.exp(-s * t) * profile, t)
        scale = trapezoid(np.exp(-np.real(s) * t) * np.abs(profile), t)
        closed = complex(pulse.laplace(s))
        rows.append({'s': complex(s), 'closed_form': closed, 'quadrature': complex(reference),
                     'relative_error': abs(closed - reference) / scale})
    frame = pd.DataFrame(rows)
    worst = float(frame['relative_error'].max())
    return CheckResult(passed=worst <= 1e-7, values={'max_relative_error': worst},
                       frequencies=frequencies, samples=frame)
