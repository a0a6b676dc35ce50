"""
Cauchy data of the fundamental solution and the Calderon identities it
satisfies on the boundary.
"""

import logging
from typing import Dict, Tuple

import numpy as np
from scipy import linalg

from model.errors import SingularPointError
from model.frequency import as_frequency
from .assembly import BioMatrices
from .kernels import KernelParams
from .quadrature import triangle_rule

logger = logging.getLogger(__name__)


def point_source_cauchy_data(s, mesh, source, sound_speed: float = 1.0,
                             order: int = 5) -> Tuple[np.ndarray, np.ndarray]:
    """
    Trace and normal derivative of E(., x0) for a source x0 inside Omega:
    phi interpolated at the vertices (p1), lam as the panel mean of dE/dn (p0).
    """
    kernel = KernelParams.from_frequency(as_frequency(s), sound_speed)
    source = np.asarray(source, dtype=float).reshape(3)

    r_vertices = np.linalg.norm(mesh.vertices - source, axis=1)
    if r_vertices.min() < 1e-12:
        raise SingularPointError("point source lies on the boundary")
    phi = kernel.single_layer(r_vertices)

    bary, weights = triangle_rule(order)
    y = np.einsum('qk,tkd->tqd', bary, mesh.corners)
    offset = y - source
    r = np.linalg.norm(offset, axis=-1)
    # grad_y E(y, x0) = -F (y - x0)
    normal_derivative = -kernel.gradient_factor(r) * np.einsum('tqd,td->tq', offset, mesh.normals)
    lam = normal_derivative @ weights
    return phi, lam


def calderon_residuals(bio: BioMatrices, spaces, phi: np.ndarray, lam: np.ndarray) -> Dict[str, np.ndarray]:
    """
    Residuals of exterior Cauchy data in both boundary identities:
        first  (1/2 M - K) phi + V lam           (tested with p0)
        second W phi + (1/2 M^T + K') lam        (tested with p1)
    """
    M = spaces.dual_mass
    residuals = {'first': 0.5 * (M @ phi) - bio.K @ phi + bio.V @ lam}
    if bio.W is not None and bio.Kp is not None:
        residuals['second'] = bio.W @ phi + 0.5 * (M.T @ lam) + bio.Kp @ lam
    return residuals


def dual_norm(residual: np.ndarray, gram: np.ndarray) -> float:
    """sqrt(r^H G^{-1} r) for a real symmetric positive definite Gram matrix G"""
    factor = linalg.cho_factor(gram)
    solved = linalg.cho_solve(factor, residual)
    return float(np.sqrt(max(np.real(np.vdot(residual, solved)), 0.0)))
