"""
Elastic energy identity, norm equivalence and the rigid-body kernel.
"""

import numpy as np
import pandas as pd
from scipy.sparse.linalg import norm as sparse_norm

from fem.assembly import build_A, rigid_body_modes
from ..registry import register
from ..report import CheckResult

MODULE = 'elastic_fem'


def _random_vectors(rng, count: int, size: int) -> np.ndarray:
    return rng.standard_normal((count, size)) + 1j * rng.standard_normal((count, size))


@register('fem_energy_identity', MODULE)
def fem_energy_identity(ctx) -> CheckResult:
    """Re(e^{-i theta} U^H A~(s) U) = (sigma / |s|) |||U|||^2_{|s|} / rho_0"""
    fem = ctx.scenario(ctx.level).fem
    rho_0 = fem.material.rho_0
    rng = ctx.rng('fem_energy_identity')
    frequencies = ctx.frequency_grid()
    rows = []
    for frequency in frequencies:
        A = build_A(frequency, fem)
        energy = fem.energy_matrix(frequency.modulus)
        for U in _random_vectors(rng, int(ctx.verify.samples), fem.size):
            lhs = (np.exp(-1j * frequency.theta) * np.vdot(U, A @ U)).real
            rhs = frequency.sigma / frequency.modulus * np.vdot(U, energy @ U).real / rho_0
            rows.append({'s': frequency.s, 'relative_error': abs(lhs - rhs) / abs(rhs)})
    frame = pd.DataFrame(rows)
    worst = float(frame['relative_error'].max())
    return CheckResult(passed=worst <= 1e-12, values={'max_relative_error': worst, 'samples': len(frame)},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('fem_norm_sandwich', MODULE)
def fem_norm_sandwich(ctx) -> CheckResult:
    """sigma_bar |||U|||_1 <= |||U|||_{|s|} <= (|s| / sigma_bar) |||U|||_1"""
    fem = ctx.scenario(ctx.level).fem
    rng = ctx.rng('fem_norm_sandwich')
    frequencies = ctx.frequency_grid()
    rows = []
    for frequency in frequencies:
        for U in _random_vectors(rng, int(ctx.verify.samples), fem.size):
            unit = fem.energy_norm(U, 1.0)
            scaled = fem.energy_norm(U, frequency.modulus)
            rows.append({
                's': frequency.s,
                'lower_margin': scaled / (frequency.sigma_bar * unit),
                'upper_margin': (frequency.modulus / frequency.sigma_bar) * unit / scaled,
            })
    frame = pd.DataFrame(rows)
    lower, upper = float(frame['lower_margin'].min()), float(frame['upper_margin'].min())
    return CheckResult(passed=lower >= 1.0 - 1e-12 and upper >= 1.0 - 1e-12,
                       values={'min_lower_margin': lower, 'min_upper_margin': upper},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('rigid_body_kernel', MODULE)
def rigid_body_kernel(ctx) -> CheckResult:
    """Translations and infinitesimal rotations produce no elastic force"""
    scenario = ctx.scenario(ctx.level)
    fem, volume = scenario.fem, scenario.spaces.volume
    K = fem.stiffness
    scale = sparse_norm(K)
    modes = rigid_body_modes(volume.vertices)
    residuals = np.linalg.norm((K @ modes.T).T, axis=1) / (scale * np.linalg.norm(modes, axis=1))
    diameter = volume.diameter
    symmetry = float(abs(K - K.T).max() / abs(K).max())
    translations, rotations = float(residuals[:3].max()), float(residuals[3:].max())
    return CheckResult(
        passed=translations <= 1e-12 and rotations <= 1e-10 * diameter ** 2 and symmetry <= 1e-14,
        values={'translation_residual': translations, 'rotation_residual': rotations,
                'rotation_tolerance': 1e-10 * diameter ** 2, 'stiffness_asymmetry': symmetry},
        samples=pd.DataFrame({'mode': ['tx', 'ty', 'tz', 'rx', 'ry', 'rz'], 'residual': residuals}),
    )
