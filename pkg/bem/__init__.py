"""
Laplace-domain boundary integral operators: Galerkin assembly of V, K, K'
and W, layer potentials off the boundary, and Cauchy data of the
fundamental solution.
"""

from .quadrature import QuadratureSettings, triangle_rule, gauss_legendre, classify_pairs
from .kernels import KernelParams, uniform_shell_potential
from .assembly import (
    OPERATORS,
    BioMatrices,
    BoundaryAssembler,
    assemble_V,
    assemble_K,
    assemble_Kp,
    assemble_W,
)
from .potentials import PotentialEvaluator, eval_potentials, check_far_field
from .cauchy import point_source_cauchy_data, calderon_residuals, dual_norm

__all__ = [
    'QuadratureSettings',
    'triangle_rule',
    'gauss_legendre',
    'classify_pairs',
    'KernelParams',
    'uniform_shell_potential',
    'OPERATORS',
    'BioMatrices',
    'BoundaryAssembler',
    'assemble_V',
    'assemble_K',
    'assemble_Kp',
    'assemble_W',
    'PotentialEvaluator',
    'eval_potentials',
    'check_far_field',
    'point_source_cauchy_data',
    'calderon_residuals',
    'dual_norm',
]
