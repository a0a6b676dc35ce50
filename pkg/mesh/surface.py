"""
Closed triangulated interface with outward unit normals.
"""

import logging
from functools import cached_property

import numpy as np

from model.errors import DegenerateElementError, NonClosedSurfaceError, OrientationError

logger = logging.getLogger(__name__)


def _signed_volume(vertices: np.ndarray, triangles: np.ndarray) -> float:
    c = vertices[triangles] - vertices.mean(axis=0)
    return float(np.einsum('ij,ij->i', c[:, 0], np.cross(c[:, 1], c[:, 2])).sum() / 6.0)


class SurfaceMesh:
    """
    Vertices, triangles and per-triangle outward normals of Gamma.

    Construction validates that the surface is non-degenerate, closed and
    consistently oriented, then flips every triangle if the enclosed signed
    volume is negative so normals point out of Omega.
    """

    def __init__(self, vertices, triangles, orient: bool = True):
        vertices = np.array(vertices, dtype=float)
        triangles = np.array(triangles, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise DegenerateElementError(f"vertex array must be (n, 3), got {vertices.shape}")
        if triangles.ndim != 2 or triangles.shape[1] != 3:
            raise DegenerateElementError(f"triangle array must be (m, 3), got {triangles.shape}")
        if triangles.size and (triangles.min() < 0 or triangles.max() >= len(vertices)):
            raise DegenerateElementError("triangle references a vertex out of range")

        self._vertices = vertices
        self._triangles = triangles
        self._validate()
        if orient and _signed_volume(vertices, triangles) < 0:
            logger.info("Flipping surface orientation so normals point out of the domain")
            self._triangles = triangles[:, [0, 2, 1]].copy()
        self._vertices.setflags(write=False)
        self._triangles.setflags(write=False)

    def _validate(self):
        v = self._vertices[self._triangles]
        cross = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
        areas = 0.5 * np.linalg.norm(cross, axis=1)
        extent = np.ptp(self._vertices, axis=0) if len(self._vertices) else np.zeros(3)
        bbox_sq = float(np.dot(extent, extent))
        bad = np.flatnonzero(areas <= 1e-14 * bbox_sq)
        if bad.size:
            raise DegenerateElementError(
                f"{bad.size} degenerate triangle(s), first at index {bad[0]}"
            )

        directed = self._triangles[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2)
        undirected = np.sort(directed, axis=1)
        _, edge_counts = np.unique(undirected, axis=0, return_counts=True)
        if np.any(edge_counts != 2):
            raise NonClosedSurfaceError(
                f"{int(np.sum(edge_counts != 2))} edge(s) are not shared by exactly two triangles",
            )
        _, directed_counts = np.unique(directed, axis=0, return_counts=True)
        if np.any(directed_counts != 1):
            raise OrientationError("triangles are not consistently oriented")

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def triangles(self) -> np.ndarray:
        return self._triangles

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_triangles(self) -> int:
        return len(self._triangles)

    @cached_property
    def corners(self) -> np.ndarray:
        """Triangle corner coordinates, shape (m, 3, 3)"""
        return self._vertices[self._triangles]

    @cached_property
    def _scaled_normals(self) -> np.ndarray:
        c = self.corners
        return np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])

    @cached_property
    def areas(self) -> np.ndarray:
        return 0.5 * np.linalg.norm(self._scaled_normals, axis=1)

    @cached_property
    def normals(self) -> np.ndarray:
        return self._scaled_normals / (2.0 * self.areas[:, None])

    @cached_property
    def barycentric_gradients(self) -> np.ndarray:
        """Tangential gradients of the three barycentric coordinates, shape (m, 3, 3)"""
        c = self.corners
        e1, e2 = c[:, 1] - c[:, 0], c[:, 2] - c[:, 0]
        g11 = np.einsum('ij,ij->i', e1, e1)
        g12 = np.einsum('ij,ij->i', e1, e2)
        g22 = np.einsum('ij,ij->i', e2, e2)
        det = (g11 * g22 - g12 ** 2)[:, None]
        d1 = (g22[:, None] * e1 - g12[:, None] * e2) / det
        d2 = (g11[:, None] * e2 - g12[:, None] * e1) / det
        return np.stack([-d1 - d2, d1, d2], axis=1)

    @cached_property
    def surface_curls(self) -> np.ndarray:
        """n x grad of the barycentric coordinates, shape (m, 3, 3)"""
        return np.cross(self.normals[:, None, :], self.barycentric_gradients)

    @cached_property
    def centroids(self) -> np.ndarray:
        return self.corners.mean(axis=1)

    @cached_property
    def edges(self) -> np.ndarray:
        """Unique undirected edges as sorted vertex pairs"""
        pairs = np.sort(self._triangles[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2), axis=1)
        return np.unique(pairs, axis=0)

    @cached_property
    def diameters(self) -> np.ndarray:
        c = self.corners
        lengths = np.stack([
            np.linalg.norm(c[:, 1] - c[:, 0], axis=1),
            np.linalg.norm(c[:, 2] - c[:, 1], axis=1),
            np.linalg.norm(c[:, 0] - c[:, 2], axis=1),
        ], axis=1)
        return lengths.max(axis=1)

    @property
    def h_min(self) -> float:
        e = self.edges
        return float(np.linalg.norm(self._vertices[e[:, 1]] - self._vertices[e[:, 0]], axis=1).min())

    @property
    def h_max(self) -> float:
        return float(self.diameters.max())

    @property
    def total_area(self) -> float:
        return float(self.areas.sum())

    @property
    def bbox_diagonal(self) -> float:
        return float(np.linalg.norm(np.ptp(self._vertices, axis=0)))

    @property
    def barycenter(self) -> np.ndarray:
        """Area-weighted centroid of Gamma, used as the star-shape reference point"""
        return (self.areas[:, None] * self.centroids).sum(axis=0) / self.total_area

    @property
    def enclosed_volume(self) -> float:
        """Signed volume of the cones from the vertex mean to every triangle"""
        return _signed_volume(self._vertices, self._triangles)

    @cached_property
    def vertex_normals(self) -> np.ndarray:
        """Area-weighted average of adjacent triangle normals, normalized"""
        acc = np.zeros_like(self._vertices)
        for k in range(3):
            np.add.at(acc, self._triangles[:, k], self._scaled_normals)
        return acc / np.linalg.norm(acc, axis=1)[:, None]

    def flipped(self) -> 'SurfaceMesh':
        """Copy with every triangle reversed and no orientation repair"""
        return SurfaceMesh(self._vertices.copy(), self._triangles[:, [0, 2, 1]], orient=False)

    def outward_by_ray_parity(self, index: int) -> bool:
        """Cast a ray from just outside triangle ``index`` along its normal and count crossings"""
        eps = 1e-7 * self.bbox_diagonal
        origin = self.centroids[index] + eps * self.normals[index]
        direction = self.normals[index]
        c = self.corners
        e1, e2 = c[:, 1] - c[:, 0], c[:, 2] - c[:, 0]
        p = np.cross(direction, e2)
        det = np.einsum('ij,ij->i', e1, p)
        valid = np.abs(det) > 1e-14
        inv = np.where(valid, 1.0 / np.where(valid, det, 1.0), 0.0)
        tvec = origin - c[:, 0]
        u = np.einsum('ij,ij->i', tvec, p) * inv
        q = np.cross(tvec, e1)
        v = (q @ direction) * inv
        dist = np.einsum('ij,ij->i', e2, q) * inv
        hits = valid & (u >= 0) & (v >= 0) & (u + v <= 1) & (dist > 0)
        hits[index] = False
        return int(hits.sum()) % 2 == 0

    def orientation_report(self) -> dict:
        """
        Outwardness of every normal: star-shape test against the barycenter,
        with ray parity for triangles that fail it.
        """
        star = np.einsum('ij,ij->i', self.normals, self.centroids - self.barycenter) > 0
        fallback = np.flatnonzero(~star)
        parity = np.array([self.outward_by_ray_parity(i) for i in fallback], dtype=bool)
        outward = star.copy()
        outward[fallback] = parity
        return {
            'star_shaped': bool(star.all()),
            'ray_parity_checked': int(fallback.size),
            'all_outward': bool(outward.all()),
            'inward_count': int((~outward).sum()),
        }

    def __repr__(self) -> str:
        return f"SurfaceMesh(vertices={self.n_vertices}, triangles={self.n_triangles})"
