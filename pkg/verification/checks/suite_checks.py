"""
Stability growth over the horizon, sabotage and guard detectors, and the
completeness of the property registry.
"""

import numpy as np
import pandas as pd

from bem.assembly import BoundaryAssembler
from bem.cauchy import calderon_residuals, dual_norm, point_source_cauchy_data
from coupling.transfer import solve_sweep
from cq.convolution import inverse_transform
from cq.grid import CQGrid
from model.errors import FrequencyError, GridConfigError
from model.frequency import ComplexFrequency
from ..fitting import fit_power_law
from ..registry import check_completeness, register, registered
from ..report import CheckResult

MODULE = 'verify_suite'

GROWTH_EXPONENT = 3.6
GROWTH_PULSE = {'center': 1.6, 'width': 0.1}
SABOTAGE_RATIO = 10.0
SABOTAGE_SOURCE = np.array([0.1, -0.2, 0.15])
INVALID_FREQUENCY = -0.5 + 2.0j


def _steps_for(horizon: float, per_unit: int) -> int:
    steps = max(2, int(np.ceil(per_unit * horizon)))
    return 1 << (steps - 1).bit_length()


@register('solution_growth', MODULE)
def solution_growth(ctx) -> CheckResult:
    """
    max_n ||(U, phi, lam)(t_n)||_X for horizons T grows no faster than T^3.6.
    The power-law fit and its R^2 are reported.
    """
    scenario = ctx.scenario(ctx.level)
    norms = ctx.norms(ctx.level)
    incident = ctx.incident(**GROWTH_PULSE)
    rows = []
    for horizon in ctx.verify.horizons:
        grid = ctx.grid(horizon=float(horizon), steps=_steps_for(horizon, int(ctx.verify.steps_per_unit)))
        solutions = solve_sweep(scenario.problem, incident, grid, ctx.threads)
        coefficients = inverse_transform(np.stack([sol.vector() for sol in solutions]), grid)
        peak = max(norms.norm(row) for row in coefficients)
        rows.append({'horizon': float(horizon), 'steps': grid.steps, 'max_norm': peak})
    frame = pd.DataFrame(rows)
    horizons, peaks = frame['horizon'].to_numpy(), frame['max_norm'].to_numpy()
    fit = fit_power_law(horizons, peaks)
    envelope = peaks / peaks[0] <= (horizons / horizons[0]) ** GROWTH_EXPONENT * (1.0 + 1e-12)
    return CheckResult(
        passed=fit.exponent <= GROWTH_EXPONENT and bool(envelope.all()),
        values={'exponent': fit.exponent, 'constant': fit.constant, 'r_squared': fit.r_squared,
                'bound': GROWTH_EXPONENT},
        samples=frame,
    )


@register('calderon_sign_sabotage', MODULE)
def calderon_sign_sabotage(ctx) -> CheckResult:
    """Operators assembled with flipped normals break the first Calderon identity"""
    scenario = ctx.scenario(ctx.level)
    spaces = scenario.spaces
    c = ctx.material.sound_speed
    source = SABOTAGE_SOURCE * float(ctx.config.mesh.radius)
    gram = ctx.norms(ctx.level).flux_gram
    flipped = BoundaryAssembler(spaces.surface.flipped(), ctx.settings, c)
    rows = []
    for s in (1.0, 1.0 + 2.0j):
        phi, lam = point_source_cauchy_data(s, spaces.surface, source, c)
        correct = calderon_residuals(scenario.problem.assembler.assemble(s, ('V', 'K')), spaces, phi, lam)
        broken = calderon_residuals(flipped.assemble(s, ('V', 'K')), spaces, phi, lam)
        ok, bad = dual_norm(correct['first'], gram), dual_norm(broken['first'], gram)
        rows.append({'s': complex(s), 'residual': ok, 'sabotaged_residual': bad,
                     'ratio': bad / ok if ok > 0 else np.inf})
    frame = pd.DataFrame(rows)
    smallest = float(frame['ratio'].min())
    return CheckResult(passed=smallest >= SABOTAGE_RATIO,
                       values={'min_ratio': smallest, 'required': SABOTAGE_RATIO},
                       frequencies=frame['s'].tolist(), samples=frame)


@register('frequency_guard', MODULE)
def frequency_guard(ctx) -> CheckResult:
    """Frequencies off the right half-plane and broken grids are refused at construction"""
    problem = ctx.scenario(min(ctx.levels)).problem
    probes = {
        'complex_frequency': (lambda: ComplexFrequency(INVALID_FREQUENCY), FrequencyError),
        'bio_assembly': (lambda: problem.assembler.assemble(INVALID_FREQUENCY), FrequencyError),
        'block_system': (lambda: problem.system(INVALID_FREQUENCY), FrequencyError),
        'grid_radius': (lambda: CQGrid(1.0, 16, 'bdf2', 1.5), GridConfigError),
        'grid_steps': (lambda: CQGrid(1.0, 100), GridConfigError),
    }
    rows = []
    for name, (build, expected) in probes.items():
        try:
            build()
            rows.append({'probe': name, 'raised': False, 'error': ''})
        except expected as e:
            rows.append({'probe': name, 'raised': True, 'error': str(e)})
    frame = pd.DataFrame(rows)
    missed = frame.loc[~frame['raised'], 'probe'].tolist()
    return CheckResult(passed=not missed, values={'refused': int(frame['raised'].sum()),
                                                  'probed': len(frame)},
                       frequencies=[INVALID_FREQUENCY], samples=frame,
                       message=f"accepted: {missed}" if missed else '')


@register('registry_completeness', MODULE)
def registry_completeness(ctx) -> CheckResult:
    """Every expected property is registered exactly once under its package"""
    problems = check_completeness()
    return CheckResult(passed=not problems,
                       values={'registered': len(registered()), 'problems': len(problems)},
                       message='; '.join(problems))
