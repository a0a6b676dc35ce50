"""
Single and double layer potentials at points off the boundary.
"""

import logging
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from model.errors import NearFieldError
from model.frequency import as_frequency
from .kernels import KernelParams
from .quadrature import triangle_rule

logger = logging.getLogger(__name__)

POTENTIAL_ORDER = 5


def surface_samples(mesh, order: int = POTENTIAL_ORDER) -> np.ndarray:
    """Vertices, edge midpoints and quadrature points of every panel"""
    bary, _ = triangle_rule(order)
    interior = np.einsum('qk,pkd->pqd', bary, mesh.corners).reshape(-1, 3)
    edges = mesh.edges
    midpoints = 0.5 * (mesh.vertices[edges[:, 0]] + mesh.vertices[edges[:, 1]])
    return np.vstack([mesh.vertices, midpoints, interior])


def check_far_field(mesh, points: np.ndarray, tree: Optional[cKDTree] = None) -> np.ndarray:
    """
    Distance of every point to the sampled surface; raises NearFieldError
    when any point is closer than the shortest mesh edge.
    """
    tree = tree or cKDTree(surface_samples(mesh))
    distance, _ = tree.query(points)
    h_min = mesh.h_min
    close = np.flatnonzero(distance < h_min)
    if close.size:
        first = int(close[0])
        raise NearFieldError(
            f"{close.size} evaluation point(s) closer than h_min={h_min:.3e} to the boundary, "
            f"first {points[first].tolist()} at distance {distance[first]:.3e}"
        )
    return distance


class PotentialEvaluator:
    """
    Layer potentials at a fixed point set. Distances and normal projections
    are frequency independent and computed once; each frequency only
    evaluates the kernel.
    """

    def __init__(self, mesh, points, sound_speed: float = 1.0, order: int = POTENTIAL_ORDER,
                 check_distance: bool = True):
        self.mesh = mesh
        self.points = np.atleast_2d(np.asarray(points, dtype=float))
        self.sound_speed = sound_speed
        self.bary, self.weights = triangle_rule(order)
        if check_distance and len(self.points):
            self.distance = check_far_field(mesh, self.points)

    @cached_property
    def _geometry(self):
        mesh = self.mesh
        y = np.einsum('qk,tkd->tqd', self.bary, mesh.corners)               # (n0, q, 3)
        diff = self.points[:, None, None, :] - y[None]                        # (P, n0, q, 3)
        r = np.linalg.norm(diff, axis=-1)
        normal_projection = np.einsum('ptqd,td->ptq', diff, mesh.normals)
        w = self.weights[None, :] * mesh.areas[:, None]                      # (n0, q)
        return r, normal_projection, w

    def matrices(self, s):
        """
        (S, D) with Phi = D phi - S lam: S is (P, n0) acting on p0
        coefficients, D is (P, n1) acting on p1 coefficients.
        """
        frequency = as_frequency(s)
        kernel = KernelParams.from_frequency(frequency, self.sound_speed)
        r, projection, w = self._geometry
        single, gradient = kernel.evaluate(r)
        S = np.einsum('ptq,tq->pt', single, w)
        dlp = gradient * projection * w[None]                                # (P, n0, q)
        local = np.einsum('ptq,qk->ptk', dlp, self.bary)
        D = np.zeros((len(self.points), self.mesh.n_vertices), dtype=complex)
        for k in range(3):
            np.add.at(D, (slice(None), self.mesh.triangles[:, k]), local[:, :, k])
        return S, D

    def evaluate(self, s, phi: np.ndarray, lam: np.ndarray) -> np.ndarray:
        S, D = self.matrices(s)
        return D @ phi - S @ lam


def eval_potentials(s, mesh, phi, lam, points, sound_speed: float = 1.0,
                    check_distance: bool = True) -> np.ndarray:
    """Phi = D(s) phi - S(s) lam at the given points"""
    evaluator = PotentialEvaluator(mesh, points, sound_speed, check_distance=check_distance)
    return evaluator.evaluate(s, np.asarray(phi), np.asarray(lam))
