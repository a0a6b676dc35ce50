"""
Elastic body: P1 vector finite element matrices for Omega.
"""

from .assembly import (
    FemMatrices,
    assemble_fem,
    build_A,
    gradients,
    element_stiffness,
    element_mass,
    rigid_body_modes,
)

__all__ = [
    'FemMatrices',
    'assemble_fem',
    'build_A',
    'gradients',
    'element_stiffness',
    'element_mass',
    'rigid_body_modes',
]
