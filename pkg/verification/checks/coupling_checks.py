"""
Block operator structure, solver symmetry and growth, factorization and
strong ellipticity.
"""

import logging

import numpy as np
import pandas as pd

from coupling.factorization import check_factorization, ellipticity_samples, factorize, skew_cancellation
from coupling.solver import solve_conjugate, solve_frequency
from ..fitting import fit_class_exponent
from ..registry import register
from ..report import CheckResult

logger = logging.getLogger(__name__)

MODULE = 'coupled_solver'

OPERATOR_EXPONENT = 2.3
AMPLIFICATION_EXPONENT = 1.8
FACTORIZATION_TOLERANCE = 1e-8


def _complex_vector(rng, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def _unit_ray(ctx):
    return [f for f in ctx.frequency_grid() if f.sigma == 1.0]


@register('structural_zeros', MODULE)
def structural_zeros(ctx) -> CheckResult:
    """Blocks (1,3) and (3,1) and the third data component are never filled"""
    rows = []
    for frequency in ctx.frequency_grid():
        system = ctx.system(ctx.level, frequency)
        blocks = system.blocks()
        n_u, n1, _ = system.sizes
        dense = system.dense()
        rows.append({
            's': frequency.s,
            'blocks_none': blocks[0][2] is None and blocks[2][0] is None,
            'dense_13': float(np.abs(dense[:n_u, n_u + n1:]).max()),
            'dense_31': float(np.abs(dense[n_u + n1:, :n_u]).max()),
            'd3': float(np.abs(system.rhs[2]).max()),
        })
    frame = pd.DataFrame(rows)
    passed = bool(frame['blocks_none'].all()
                  and (frame[['dense_13', 'dense_31', 'd3']].to_numpy() == 0).all())
    return CheckResult(passed=passed, values={'frequencies': len(frame)}, samples=frame)


@register('skew_coupling', MODULE)
def skew_coupling(ctx) -> CheckResult:
    """(2,1) block is exactly minus the transpose of (1,2); the rotated coupling has no real part"""
    rng = ctx.rng('skew_coupling')
    frequencies = ctx.frequency_grid()
    rows = []
    for frequency in frequencies:
        system = ctx.system(ctx.level, frequency)
        blocks = system.blocks()
        difference = blocks[0][1] + blocks[1][0].T
        exact = difference.count_nonzero() == 0
        for _ in range(int(ctx.verify.samples)):
            rows.append({'s': frequency.s, 'exact_transpose': exact,
                         'cancellation': skew_cancellation(system, rng)})
    frame = pd.DataFrame(rows)
    worst = float(frame['cancellation'].max())
    return CheckResult(passed=bool(frame['exact_transpose'].all()) and worst <= 1e-12,
                       values={'max_cancellation': worst, 'samples': len(frame)},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('solve_conjugate_symmetry', MODULE)
def solve_conjugate_symmetry(ctx) -> CheckResult:
    """solution(conj s) = conj(solution(s)); also reports manufactured-solution recovery"""
    rng = ctx.rng('solve_conjugate_symmetry')
    frequencies = [f for f in _unit_ray(ctx) if f.s.imag != 0]
    rows = []
    for frequency in frequencies:
        system = ctx.system(ctx.level, frequency)
        conj_system = ctx.system(ctx.level, frequency.conjugate())
        direct = solve_frequency(system).vector()
        mirrored = solve_frequency(conj_system).vector()
        from_pair = solve_conjugate(system, conj_system.rhs_vector)
        scale = np.abs(direct).max()

        exact = _complex_vector(rng, sum(system.sizes))
        recovered = solve_frequency(system, system.apply(exact)).vector()
        rows.append({
            's': frequency.s,
            'conjugate_error': float(np.abs(mirrored - np.conj(direct)).max() / scale),
            'paired_error': float(np.abs(from_pair - mirrored).max() / scale),
            'manufactured_error': float(np.linalg.norm(recovered - exact) / np.linalg.norm(exact)),
        })
    frame = pd.DataFrame(rows)
    worst = float(frame[['conjugate_error', 'paired_error']].to_numpy().max())
    return CheckResult(passed=worst <= 1e-9,
                       values={'max_conjugate_error': worst,
                               'max_manufactured_error': float(frame['manufactured_error'].max())},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('operator_growth', MODULE)
def operator_growth(ctx) -> CheckResult:
    """Fitted |s|-power of the Frobenius norm of the block operator along Re s = 1"""
    rows = []

    def sampler(frequency):
        system = ctx.system(ctx.level, frequency)
        norms = system.block_norms()
        rows.append({'modulus': frequency.modulus, **norms, 'total': system.norm_estimate()})
        return system.norm_estimate()

    fit = fit_class_exponent(sampler, 1.0, ctx.fit_moduli())
    frame = pd.DataFrame(rows)
    largest = frame.drop(columns=['modulus', 'total']).iloc[-1].idxmax()
    return CheckResult(passed=fit.exponent <= OPERATOR_EXPONENT,
                       values={'exponent': fit.exponent, 'r_squared': fit.r_squared,
                               'bound': OPERATOR_EXPONENT, 'dominant_block': largest},
                       samples=frame)


@register('factorization_residual', MODULE)
def factorization_residual(ctx) -> CheckResult:
    """A x = P' C P^-1 x for random complex x"""
    rng = ctx.rng('factorization_residual')
    frequencies = _unit_ray(ctx)
    rows = []
    for frequency in frequencies:
        system = ctx.system(ctx.level, frequency)
        x = _complex_vector(rng, sum(system.sizes))
        rows.append({'s': frequency.s, 'residual': check_factorization(system, x)})
    frame = pd.DataFrame(rows)
    worst = float(frame['residual'].max())
    return CheckResult(passed=worst <= FACTORIZATION_TOLERANCE,
                       values={'max_residual': worst, 'tolerance': FACTORIZATION_TOLERANCE},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('strong_ellipticity', MODULE)
def strong_ellipticity(ctx) -> CheckResult:
    """Re <Theta C y, conj(y)> > 0 for random complex triples"""
    rng = ctx.rng('strong_ellipticity')
    frequencies = ctx.frequency_grid()
    rows = []
    for frequency in frequencies:
        values = ellipticity_samples(ctx.system(ctx.level, frequency), rng, int(ctx.verify.samples))
        rows.extend({'s': frequency.s, 'ratio': v} for v in values)
    frame = pd.DataFrame(rows)
    minimum = float(frame['ratio'].min())
    return CheckResult(passed=minimum > 0, values={'min_ratio': minimum, 'samples': len(frame)},
                       frequencies=[f.s for f in frequencies], samples=frame)


@register('solution_amplification', MODULE)
def solution_amplification(ctx) -> CheckResult:
    """Fitted |s|-power of ||x||_X / ||(d1, d2, 0)||_X' along Re s = 1"""
    norms = ctx.norms(ctx.level)
    rows = []

    def sampler(frequency):
        system = ctx.system(ctx.level, frequency)
        solution = solve_frequency(system)
        ratio = norms.amplification(solution.vector(), system.rhs_vector)
        rows.append({'modulus': frequency.modulus, 'amplification': ratio,
                     'residual': solution.residual})
        return ratio

    fit = fit_class_exponent(sampler, 1.0, ctx.fit_moduli())
    if fit.exponent > AMPLIFICATION_EXPONENT - 0.1:
        logger.warning(f"Solution amplification exponent {fit.exponent:.2f} is close to "
                       f"{AMPLIFICATION_EXPONENT}")
    return CheckResult(passed=fit.exponent <= AMPLIFICATION_EXPONENT,
                       values={'exponent': fit.exponent, 'constant': fit.constant,
                               'r_squared': fit.r_squared, 'bound': AMPLIFICATION_EXPONENT},
                       samples=pd.DataFrame(rows))


@register('schur_coercivity', MODULE, asserted=False)
def schur_coercivity(ctx) -> CheckResult:
    """
    Smallest Re(e^{-i theta} psi^H B psi) / ||psi||^2 over random psi for
    B = W + L' V^-1 L, with its fitted |s|-power along Re s = 1.
    """
    rng = ctx.rng('schur_coercivity')
    gram = ctx.norms(ctx.level).trace_gram
    rows = []

    def sampler(frequency):
        B = factorize(ctx.system(ctx.level, frequency)).schur
        count = int(ctx.verify.samples)
        psi = rng.standard_normal((count, B.shape[0])) + 1j * rng.standard_normal((count, B.shape[0]))
        forms = np.einsum('ki,ij,kj->k', psi.conj(), B, psi)
        weights = np.einsum('ki,ij,kj->k', psi.conj(), gram, psi).real
        ratios = (np.exp(-1j * frequency.theta) * forms).real / weights
        rows.append({'modulus': frequency.modulus, 'min_ratio': float(ratios.min())})
        return abs(float(ratios.min()))

    fit = fit_class_exponent(sampler, 1.0, ctx.fit_moduli())
    frame = pd.DataFrame(rows)
    return CheckResult(passed=bool((frame['min_ratio'] > 0).all()),
                       values={'exponent': fit.exponent, 'r_squared': fit.r_squared,
                               'min_ratio': float(frame['min_ratio'].min())},
                       samples=frame)
