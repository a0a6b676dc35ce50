"""
Coupled elastic/acoustic solver at a single complex frequency.

Assembles the 3 x 3 block operator from the FEM and boundary integral
matrices, solves it by eliminating the FEM block, and exposes the
structural checks (factorization, rotated positivity, norms).
"""

from .system import BlockSystem, build_rhs, rhs_from_traces
from .solver import (
    FrequencySolution, CoupledProblem, solve_frequency, solve_conjugate, relative_residual,
)
from .factorization import (
    FactorizedForm, factorize, check_factorization, rotated_form, ellipticity_samples,
    skew_cancellation,
)
from .norms import ProductNorms
from .transfer import CoupledTransfer, incident_samples, solve_full_sweep, solve_sweep, trace_points

__all__ = [
    'BlockSystem',
    'build_rhs',
    'rhs_from_traces',
    'FrequencySolution',
    'CoupledProblem',
    'solve_frequency',
    'solve_conjugate',
    'relative_residual',
    'FactorizedForm',
    'factorize',
    'check_factorization',
    'rotated_form',
    'ellipticity_samples',
    'skew_cancellation',
    'ProductNorms',
    'CoupledTransfer',
    'incident_samples',
    'solve_sweep',
    'solve_full_sweep',
    'trace_points',
]
