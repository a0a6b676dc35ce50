"""
Convolution quadrature: causality, economy, linearity, growth shape,
convergence order and the contour inversion oracle.
"""

import threading
from dataclasses import replace

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from cq.convolution import cq_convolve
from cq.grid import CQGrid
from cq.inversion import contour_invert
from cq.transfer import TransferMap, get_transfer
from model.errors import TruncationError
from model.pulse import get_pulse
from ..fitting import observed_orders
from ..registry import register
from ..report import CheckResult

MODULE = 'cq_engine'

ORDER_STEPS = (64, 128)
MIN_ORDER = 1.8
PRECURSOR_TOLERANCE = 1e-6
GROWTH_RATIO = 1.5
INVERSION_TOLERANCE = 1e-4


class CountingTransfer(TransferMap):
    """Wraps a transfer map and counts its evaluations"""

    def __init__(self, inner: TransferMap):
        self.inner = inner
        self.name = f'counting({inner.name})'
        self.calls = 0
        self._lock = threading.Lock()

    def apply(self, s, data):
        with self._lock:
            self.calls += 1
        return self.inner.apply(s, data)


def _window_pulse(horizon: float, center: float, width: float):
    """Plain Gaussian placed at fractions of the horizon"""
    return get_pulse('gaussian', center=center * horizon, width=width * horizon)


@register('cq_causality', MODULE)
def cq_causality(ctx) -> CheckResult:
    """Output before the input support starts stays at the aliasing floor"""
    grid = ctx.grid()
    pulse = _window_pulse(grid.horizon, 0.6, 0.05)
    samples = pulse(grid.times)
    early = grid.times < pulse.support_start
    rows = []
    for name, kwargs in (('integrator', {}), ('differentiator', {}), ('delay', {'tau': 4 * grid.dt})):
        output = cq_convolve(get_transfer(name, **kwargs), samples, grid, ctx.threads)
        peak = np.abs(output).max()
        rows.append({'transfer': name, 'precursor': float(np.abs(output[early]).max() / peak)})
    frame = pd.DataFrame(rows)
    worst = float(frame['precursor'].max())
    return CheckResult(passed=worst <= PRECURSOR_TOLERANCE,
                       values={'max_precursor': worst, 'support_start': pulse.support_start},
                       samples=frame)


@register('cq_conjugate_economy', MODULE)
def cq_conjugate_economy(ctx) -> CheckResult:
    """At most N/2 + 1 transfer evaluations per convolution"""
    rows = []
    for steps in (16, 64, ctx.grid().steps):
        grid = replace(ctx.grid(), steps=steps)
        counter = CountingTransfer(get_transfer('integrator'))
        cq_convolve(counter, grid.times ** 2, grid, ctx.threads)
        rows.append({'steps': steps, 'evaluations': counter.calls, 'limit': steps // 2 + 1})
    frame = pd.DataFrame(rows)
    return CheckResult(passed=bool((frame['evaluations'] <= frame['limit']).all()),
                       values={'evaluations': frame['evaluations'].tolist()}, samples=frame)


@register('cq_linearity', MODULE)
def cq_linearity(ctx) -> CheckResult:
    """cq(F, a g1 + b g2) = a cq(F, g1) + b cq(F, g2)"""
    grid = ctx.grid()
    rng = ctx.rng('cq_linearity')
    g1 = _window_pulse(grid.horizon, 0.4, 0.05)(grid.times)
    g2 = _window_pulse(grid.horizon, 0.5, 0.08)(grid.times) * np.sin(3.0 * grid.times)
    alpha, beta = rng.standard_normal(2)
    rows = []
    for name, kwargs in (('integrator', {}), ('delay', {'tau': 0.1 * grid.horizon})):
        F = get_transfer(name, **kwargs)
        combined = cq_convolve(F, alpha * g1 + beta * g2, grid, ctx.threads)
        separate = (alpha * cq_convolve(F, g1, grid, ctx.threads)
                    + beta * cq_convolve(F, g2, grid, ctx.threads))
        rows.append({'transfer': name,
                     'relative_error': float(np.abs(combined - separate).max() / np.abs(combined).max())})
    frame = pd.DataFrame(rows)
    worst = float(frame['relative_error'].max())
    return CheckResult(passed=worst <= 1e-8, values={'max_relative_error': worst,
                                                     'alpha': alpha, 'beta': beta},
                       samples=frame)


@register('cq_growth_shape', MODULE)
def cq_growth_shape(ctx) -> CheckResult:
    """
    |cq(s, g)(t)| <= C t max(1, t^2) int_0^t |g'''| with a fitted C that
    stays bounded when the window doubles.
    """
    grid = ctx.grid()
    pulse = _window_pulse(grid.horizon, 0.25, 0.03)
    output = np.abs(cq_convolve(get_transfer('differentiator'), pulse(grid.times), grid, ctx.threads))

    fine = np.linspace(0.0, grid.horizon, 20 * grid.steps + 1)
    third = cumulative_trapezoid(np.abs(pulse.derivative(fine, order=3)), fine, initial=0.0)
    integral = np.interp(grid.times, fine, third)
    t = grid.times
    bound = t * np.maximum(1.0, t ** 2) * integral
    usable = integral >= 1e-6 * integral[-1]
    ratios = np.where(usable, output / np.where(usable, bound, 1.0), 0.0)

    rows = []
    for window in (grid.horizon / 4, grid.horizon / 2, grid.horizon):
        rows.append({'window': window, 'constant': float(ratios[t <= window].max())})
    frame = pd.DataFrame(rows)
    half, full = frame['constant'].iloc[1], frame['constant'].iloc[2]
    growth = full / half if half > 0 else np.inf
    return CheckResult(passed=bool(growth <= GROWTH_RATIO),
                       values={'constant_half': half, 'constant_full': full, 'doubling_ratio': growth},
                       samples=frame)


def _order_study(horizon: float, eps_cq: float, scheme: str = 'bdf2') -> pd.DataFrame:
    tau = 8.0 * horizon / ORDER_STEPS[0]
    pulse = _window_pulse(horizon, 0.55, 0.09)
    rows = []
    for steps in ORDER_STEPS:
        grid = CQGrid(horizon, steps, scheme, eps_cq)
        t = grid.times
        integral = cq_convolve(get_transfer('integrator'), t ** 2, grid)
        shifted = cq_convolve(get_transfer('delay', tau=tau), pulse(t), grid)
        rows.append({
            'scheme': scheme,
            'steps': steps,
            'integrator_error': float(np.abs(integral - t ** 3 / 3.0).max()),
            'delay_error': float(np.abs(shifted - pulse(t - tau)).max()),
        })
    return pd.DataFrame(rows)


@register('cq_order', MODULE)
def cq_order(ctx) -> CheckResult:
    """
    Observed BDF2 order for 1/s on t^2 and for exp(-s tau) on a smooth
    pulse, backward Euler order for 1/s, the exact BDF2 step response and
    the identity transfer.
    """
    grid = ctx.grid()
    bdf2 = _order_study(grid.horizon, grid.eps_cq)
    euler = _order_study(grid.horizon, grid.eps_cq, 'backward_euler')
    integrator_order = float(observed_orders(bdf2['integrator_error'], bdf2['steps'])[0])
    delay_order = float(observed_orders(bdf2['delay_error'], bdf2['steps'])[0])
    euler_order = float(observed_orders(euler['integrator_error'], euler['steps'])[0])

    step_grid = replace(grid, scheme='bdf2', eps_cq=1e-8)
    n = np.arange(step_grid.length)
    step_response = cq_convolve(get_transfer('integrator'), np.ones(step_grid.length), step_grid)
    expected = step_grid.times + step_grid.dt / 2.0 + step_grid.dt * 3.0 ** (-n - 1) / 2.0
    step_error = float(np.abs(step_response - expected).max() / grid.horizon)

    identity_grid = replace(grid, eps_cq=1e-6)
    pulse = _window_pulse(grid.horizon, 0.5, 0.05)(identity_grid.times)
    echoed = cq_convolve(get_transfer('identity'), pulse, identity_grid)
    identity_error = float(np.abs(echoed - pulse).max() / np.abs(pulse).max())

    passed = (integrator_order >= MIN_ORDER and delay_order >= MIN_ORDER and euler_order >= 0.8
              and step_error <= 1e-6 and identity_error <= 1e-10)
    return CheckResult(
        passed=passed,
        values={'integrator_order': integrator_order, 'delay_order': delay_order,
                'backward_euler_order': euler_order, 'step_offset_error': step_error,
                'identity_error': identity_error},
        samples=pd.concat([bdf2, euler], ignore_index=True),
    )


@register('contour_inversion_oracle', MODULE)
def contour_inversion_oracle(ctx) -> CheckResult:
    """1/s^2 -> t and 1/(s^2 + 1) -> sin t, independent of sigma; non-decaying F is refused"""
    times = np.linspace(0.5, 2.0, 7)
    cases = {
        'ramp': (lambda s: 1.0 / s ** 2, lambda t: t),
        'sine': (lambda s: 1.0 / (s ** 2 + 1.0), np.sin),
    }
    rows = []
    for name, (F, exact) in cases.items():
        for sigma in (0.5, 1.0):
            for t in times:
                value = contour_invert(F, sigma, t)
                rows.append({'case': name, 'sigma': sigma, 't': t, 'value': value,
                             'relative_error': abs(value - exact(t)) / abs(exact(t))})
    frame = pd.DataFrame(rows)
    pivot = frame.pivot_table(index=['case', 't'], columns='sigma', values='value')
    sigma_spread = float(np.abs(pivot[0.5] - pivot[1.0]).max())
    try:
        contour_invert(lambda s: np.ones_like(s), 1.0, 1.0)
        refused = False
    except TruncationError:
        refused = True
    worst = float(frame['relative_error'].max())
    return CheckResult(
        passed=worst <= INVERSION_TOLERANCE and sigma_spread <= INVERSION_TOLERANCE and refused,
        values={'max_relative_error': worst, 'sigma_spread': sigma_spread,
                'non_decaying_refused': refused},
        samples=frame,
    )
