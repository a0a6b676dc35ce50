"""
Reconstruction linearity, the interior null field, end-to-end causality
and elastic energy decay.
"""

import numpy as np
import pandas as pd

from bem.cauchy import point_source_cauchy_data
from bem.kernels import KernelParams
from bem.potentials import eval_potentials
from fields.energy import energy_report, pulse_passed_time, trailing_decay
from fields.observation import arrival_time, precursor_ratio
from model.frequency import ComplexFrequency
from pipeline.builders import build_observation
from pipeline.simulation import simulate
from ..fitting import reduction_factors
from ..registry import register
from ..report import CheckResult

MODULE = 'field_eval'

LINEARITY_STEPS = 32
NULL_FIELD_FREQUENCIES = (1.0, 1.0 + 2.0j)
NULL_FIELD_REDUCTION = 1.5
SOURCE = np.array([0.1, -0.2, 0.15])
INTERIOR_POINT = np.array([-0.3, 0.25, -0.2])
EXTERIOR_POINT = np.array([0.0, 0.0, 2.0])
PRECURSOR_TOLERANCE = 1e-3
REALITY_TOLERANCE = 1e-8


@register('reconstruction_linearity', MODULE)
def reconstruction_linearity(ctx) -> CheckResult:
    """Doubling the pulse amplitude doubles every reconstructed trace"""
    scenario = ctx.scenario(ctx.level)
    grid = ctx.grid(steps=LINEARITY_STEPS)
    obs = build_observation(ctx.config)
    amplitude = float(ctx.config.pulse.amplitude)
    single = simulate(scenario, ctx.incident(amplitude=amplitude), grid, obs, ctx.threads,
                      check_reality=False)
    double = simulate(scenario, ctx.incident(amplitude=2.0 * amplitude), grid, obs, ctx.threads,
                      check_reality=False)
    rows = []
    for probe in single.trace.probes:
        other = double.trace.probe(probe.name)
        for channel, signal in probe.channels.items():
            reference = other.channels[channel].samples
            scale = np.abs(reference).max()
            error = np.abs(reference - 2.0 * signal.samples).max() / scale if scale > 0 else 0.0
            rows.append({'probe': probe.name, 'channel': channel, 'relative_error': float(error)})
    frame = pd.DataFrame(rows)
    worst = float(frame['relative_error'].max())
    return CheckResult(passed=worst <= 1e-12, values={'max_relative_error': worst,
                                                      'channels': len(frame)},
                       samples=frame)


@register('interior_null_field', MODULE)
def interior_null_field(ctx) -> CheckResult:
    """
    The exterior representation D phi - S lam of point-source data vanishes
    at a point of Omega under refinement and reproduces the source outside.
    """
    radius = float(ctx.config.mesh.radius)
    c = ctx.material.sound_speed
    source = SOURCE * radius
    points = np.vstack([INTERIOR_POINT, EXTERIOR_POINT]) * radius
    rows = []
    for level in ctx.levels:
        mesh = ctx.scenario(level).mesh
        for s in NULL_FIELD_FREQUENCIES:
            phi, lam = point_source_cauchy_data(s, mesh, source, c)
            values = eval_potentials(s, mesh, phi, lam, points, c, check_distance=False)
            kernel = KernelParams.from_frequency(ComplexFrequency(s), c)
            exact = kernel.single_layer(np.linalg.norm(points[1] - source))
            rows.append({
                'level': level, 's': complex(s),
                'interior': float(abs(values[0]) / abs(exact)),
                'exterior_error': float(abs(values[1] - exact) / abs(exact)),
            })
    frame = pd.DataFrame(rows)
    values = {}
    passed = True
    for s in NULL_FIELD_FREQUENCIES:
        interior = frame.loc[frame['s'] == complex(s), 'interior'].to_numpy()
        reductions = reduction_factors(interior)
        values[f'reduction_s={complex(s)}'] = reductions
        passed &= bool(np.all(reductions >= NULL_FIELD_REDUCTION))
    values['final_exterior_error'] = float(frame.loc[frame['level'] == max(ctx.levels),
                                                     'exterior_error'].max())
    return CheckResult(passed=passed, values=values, frequencies=list(NULL_FIELD_FREQUENCIES),
                       samples=frame)


@register('end_to_end_causality', MODULE)
def end_to_end_causality(ctx) -> CheckResult:
    """Exterior traces stay silent before the geometric arrival time; all traces are real"""
    run = ctx.coupled_run()
    incident = ctx.incident()
    mesh = ctx.scenario(ctx.level).mesh
    c = ctx.material.sound_speed
    rows = []
    for probe in run.trace.by_kind('exterior'):
        arrival = arrival_time(incident, mesh, probe.position, c)
        for channel in ('value', 'pressure_scattered'):
            signal = probe.channels[channel]
            rows.append({'probe': probe.name, 'channel': channel, 'arrival': arrival,
                         'peak': signal.peak,
                         'precursor': precursor_ratio(signal.samples, signal.times, arrival)})
    frame = pd.DataFrame(rows)
    worst = float(frame['precursor'].max()) if len(frame) else 0.0
    residue = run.trace.reality_residue
    finite = run.trace.is_finite()
    return CheckResult(
        passed=worst <= PRECURSOR_TOLERANCE and residue <= REALITY_TOLERANCE and finite,
        values={'max_precursor': worst, 'reality_residue': residue, 'finite': finite,
                'steps': run.grid.steps, 'level': ctx.level},
        samples=frame,
    )


@register('energy_decay', MODULE, asserted=False)
def energy_decay(ctx) -> CheckResult:
    """Elastic energy after the pulse has passed Gamma; non-negative and decaying"""
    run = ctx.coupled_run()
    scenario = ctx.scenario(ctx.level)
    frame = energy_report(run.trace, scenario.fem)
    start = pulse_passed_time(ctx.incident(), scenario.mesh)
    decay = trailing_decay(frame, start)
    non_negative = bool((frame['total'] >= -1e-14 * max(frame['total'].max(), 1e-300)).all())
    return CheckResult(passed=decay['monotone'] and non_negative,
                       values={**decay, 'non_negative': non_negative,
                               'peak_energy': float(frame['total'].max())},
                       samples=frame)
