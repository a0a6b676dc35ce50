"""
Tetrahedral mesh of the elastic body Omega.
"""

import logging
from functools import cached_property
from typing import Dict, Tuple

import numpy as np

from model.errors import DegenerateElementError, InvertedElementError, MeshError
from .surface import SurfaceMesh

logger = logging.getLogger(__name__)

# Local faces opposite vertex 0..3, ordered so normals point away from that vertex
OUTWARD_FACES = np.array([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])


def signed_volumes(vertices: np.ndarray, tetrahedra: np.ndarray) -> np.ndarray:
    c = vertices[tetrahedra]
    e1, e2, e3 = c[:, 1] - c[:, 0], c[:, 2] - c[:, 0], c[:, 3] - c[:, 0]
    return np.einsum('ij,ij->i', e1, np.cross(e2, e3)) / 6.0


class VolumeMesh:
    """
    Vertices and tetrahedra of Omega. With ``reorient`` set, negatively
    oriented tetrahedra are repaired by swapping two vertices; otherwise
    they raise InvertedElementError.
    """

    def __init__(self, vertices, tetrahedra, reorient: bool = True):
        vertices = np.array(vertices, dtype=float)
        tetrahedra = np.array(tetrahedra, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise MeshError(f"vertex array must be (n, 3), got {vertices.shape}")
        if tetrahedra.ndim != 2 or tetrahedra.shape[1] != 4:
            raise MeshError(f"tetrahedron array must be (m, 4), got {tetrahedra.shape}")
        if tetrahedra.size and (tetrahedra.min() < 0 or tetrahedra.max() >= len(vertices)):
            raise MeshError("tetrahedron references a vertex out of range")

        volumes = signed_volumes(vertices, tetrahedra)
        scale = float(np.linalg.norm(np.ptp(vertices, axis=0))) ** 3
        degenerate = np.flatnonzero(np.abs(volumes) <= 1e-14 * scale)
        if degenerate.size:
            raise DegenerateElementError(
                f"{degenerate.size} degenerate tetrahedra, first at index {degenerate[0]}"
            )
        inverted = volumes < 0
        if inverted.any():
            if not reorient:
                raise InvertedElementError(
                    f"{int(inverted.sum())} inverted tetrahedra, first at index {np.flatnonzero(inverted)[0]}"
                )
            tetrahedra[inverted] = tetrahedra[inverted][:, [0, 2, 1, 3]]
            logger.debug(f"Reoriented {int(inverted.sum())} tetrahedra")

        self._vertices = vertices
        self._tetrahedra = tetrahedra
        self._vertices.setflags(write=False)
        self._tetrahedra.setflags(write=False)

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def tetrahedra(self) -> np.ndarray:
        return self._tetrahedra

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_tetrahedra(self) -> int:
        return len(self._tetrahedra)

    @cached_property
    def volumes(self) -> np.ndarray:
        return signed_volumes(self._vertices, self._tetrahedra)

    @property
    def total_volume(self) -> float:
        return float(self.volumes.sum())

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(np.ptp(self._vertices, axis=0)))

    @cached_property
    def boundary_faces(self) -> Dict[Tuple[int, int, int], Tuple[int, int]]:
        """Sorted vertex triple -> (tetrahedron, local face) for faces on the boundary"""
        owners: Dict[Tuple[int, int, int], list] = {}
        for tet_index, tet in enumerate(self._tetrahedra):
            for local in range(4):
                key = tuple(sorted(int(v) for v in tet[OUTWARD_FACES[local]]))
                owners.setdefault(key, []).append((tet_index, local))
        faces = {}
        for key, found in owners.items():
            if len(found) == 1:
                faces[key] = found[0]
            elif len(found) > 2:
                raise MeshError(f"face {key} is shared by {len(found)} tetrahedra")
        return faces

    def oriented_face(self, tet_index: int, local: int) -> np.ndarray:
        return self._tetrahedra[tet_index][OUTWARD_FACES[local]]

    def boundary_surface(self) -> Tuple[SurfaceMesh, np.ndarray]:
        """
        Extract Gamma as an outward oriented SurfaceMesh over the boundary
        vertices. Returns the mesh and its surface -> volume vertex map.
        """
        faces = np.array([self.oriented_face(t, k) for t, k in self.boundary_faces.values()])
        used = np.unique(faces)
        renumber = -np.ones(self.n_vertices, dtype=np.int64)
        renumber[used] = np.arange(len(used))
        surface = SurfaceMesh(self._vertices[used], renumber[faces])
        return surface, used

    def __repr__(self) -> str:
        return f"VolumeMesh(vertices={self.n_vertices}, tetrahedra={self.n_tetrahedra})"
