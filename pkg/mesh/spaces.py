"""
Discrete function spaces on Gamma and Omega.

p1_surface: continuous piecewise-linear scalars on Gamma (one per vertex)
p0_surface: piecewise-constant scalars on Gamma (one per triangle)
p1_vector_volume: continuous piecewise-linear vectors on Omega,
    degree of freedom 3 * vertex + component
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from model.errors import MeshError
from .surface import SurfaceMesh
from .volume import VolumeMesh

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class DiscreteSpaces:
    """Surface and volume meshes with the index maps that link them"""
    surface: SurfaceMesh
    volume: Optional[VolumeMesh] = None
    vertex_map: Optional[np.ndarray] = field(default=None)
    boundary_map: Optional[np.ndarray] = field(default=None)

    @property
    def n_p1(self) -> int:
        return self.surface.n_vertices

    @property
    def n_p0(self) -> int:
        return self.surface.n_triangles

    @property
    def n_volume(self) -> int:
        return 0 if self.volume is None else 3 * self.volume.n_vertices

    def dimensions(self) -> dict:
        return {'p1_surface': self.n_p1, 'p0_surface': self.n_p0, 'p1_vector_volume': self.n_volume}

    @cached_property
    def dual_mass(self) -> sparse.csr_matrix:
        """Pairing <q_j, chi_t> of p1 trial against p0 test, shape (n_p0, n_p1)"""
        tri = self.surface.triangles
        rows = np.repeat(np.arange(self.n_p0), 3)
        values = np.repeat(self.surface.areas / 3.0, 3)
        return sparse.csr_matrix((values, (rows, tri.ravel())), shape=(self.n_p0, self.n_p1))

    @cached_property
    def p1_mass(self) -> sparse.csr_matrix:
        """Consistent P1 mass matrix on Gamma"""
        tri = self.surface.triangles
        local = (np.ones((3, 3)) + np.eye(3)) / 12.0
        rows = np.repeat(tri, 3, axis=1).ravel()
        cols = np.tile(tri, (1, 3)).ravel()
        values = (self.surface.areas[:, None, None] * local).ravel()
        return sparse.coo_matrix((values, (rows, cols)), shape=(self.n_p1, self.n_p1)).tocsr()

    @cached_property
    def p0_to_vertex(self) -> sparse.csr_matrix:
        """Area-weighted average of adjacent triangle values at each vertex"""
        tri = self.surface.triangles
        rows = tri.ravel()
        cols = np.repeat(np.arange(self.n_p0), 3)
        weights = np.repeat(self.surface.areas, 3)
        averaging = sparse.coo_matrix((weights, (rows, cols)), shape=(self.n_p1, self.n_p0)).tocsr()
        totals = np.asarray(averaging.sum(axis=1)).ravel()
        return sparse.diags(1.0 / totals) @ averaging

    def volume_dofs(self, surface_vertex: np.ndarray) -> np.ndarray:
        """Volume degrees of freedom of surface vertices, shape (..., 3)"""
        if self.vertex_map is None:
            raise MeshError("spaces carry no volume mesh")
        base = 3 * self.vertex_map[np.asarray(surface_vertex)]
        return base[..., None] + np.arange(3)


def build_spaces(surface: SurfaceMesh, volume: Optional[VolumeMesh] = None) -> DiscreteSpaces:
    """
    Link Gamma to the boundary of Omega. Every surface vertex must coincide
    with a volume vertex and every surface triangle with a boundary face.
    """
    if volume is None:
        return DiscreteSpaces(surface)

    tol = 1e-9 * max(volume.diameter, 1.0)
    distance, vertex_map = cKDTree(volume.vertices).query(surface.vertices)
    if np.any(distance > tol):
        worst = int(np.argmax(distance))
        raise MeshError(
            f"surface vertex {worst} has no volume vertex within {tol:.1e} (distance {distance[worst]:.3e})"
        )

    faces = volume.boundary_faces
    mapped = np.sort(vertex_map[surface.triangles], axis=1)
    boundary_map = np.empty((surface.n_triangles, 2), dtype=np.int64)
    for index, key in enumerate(map(tuple, mapped)):
        owner = faces.get(tuple(int(v) for v in key))
        if owner is None:
            raise MeshError(f"surface triangle {index} is not a boundary face of the volume mesh")
        boundary_map[index] = owner
    if len(faces) != surface.n_triangles:
        raise MeshError(
            f"volume boundary has {len(faces)} faces but the surface has {surface.n_triangles} triangles"
        )

    spaces = DiscreteSpaces(surface, volume, vertex_map, boundary_map)
    logger.info(f"Discrete spaces: {spaces.dimensions()}")
    return spaces
