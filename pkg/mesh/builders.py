"""
Built-in meshes: projected octahedron spheres and conforming shell balls.
"""

import logging
from typing import Dict, Tuple

import numpy as np

from .surface import SurfaceMesh
from .volume import VolumeMesh

logger = logging.getLogger(__name__)


def octahedron(radius: float = 1.0) -> SurfaceMesh:
    """Regular octahedron inscribed in the sphere of the given radius"""
    vertices = radius * np.array([
        [1, 0, 0], [-1, 0, 0],
        [0, 1, 0], [0, -1, 0],
        [0, 0, 1], [0, 0, -1],
    ], dtype=float)
    triangles = []
    for sx in (0, 1):
        for sy in (2, 3):
            for sz in (4, 5):
                tri = [sx, sy, sz]
                # an odd number of negative axes mirrors the octant
                if (sx + sy + sz - 6) % 2 == 1:
                    tri = [sx, sz, sy]
                triangles.append(tri)
    return SurfaceMesh(vertices, triangles)


def refine(mesh: SurfaceMesh, project: bool = False, radius: float = 1.0,
           center=(0.0, 0.0, 0.0)) -> SurfaceMesh:
    """
    Split every triangle 1 -> 4 at its edge midpoints. With ``project``
    set, all vertices are pushed onto the sphere of the given radius.
    """
    vertices = [tuple(v) for v in mesh.vertices]
    midpoint_index: Dict[Tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in midpoint_index:
            midpoint_index[key] = len(vertices)
            vertices.append(tuple(0.5 * (mesh.vertices[a] + mesh.vertices[b])))
        return midpoint_index[key]

    triangles = []
    for a, b, c in mesh.triangles:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        triangles.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])

    points = np.array(vertices)
    if project:
        center = np.asarray(center, dtype=float)
        offsets = points - center
        points = center + radius * offsets / np.linalg.norm(offsets, axis=1)[:, None]
    return SurfaceMesh(points, triangles)


def sphere_surface(level: int, radius: float = 1.0) -> SurfaceMesh:
    """Projected octahedron refined ``level`` times: 8 * 4**level triangles"""
    if level < 0:
        raise ValueError(f"sphere level must be non-negative, got {level}")
    mesh = octahedron(radius)
    for _ in range(level):
        mesh = refine(mesh, project=True, radius=radius)
    logger.debug(f"Built sphere level {level}: {mesh}")
    return mesh


def ball_volume(surface: SurfaceMesh, shells: int = 2,
                center=(0.0, 0.0, 0.0)) -> VolumeMesh:
    """
    Tetrahedral ball conforming to a star-shaped surface: concentric copies
    of the surface at radii j / shells, prisms between shells split into
    three tetrahedra, and a star of tetrahedra around the center.

    Each prism over sorted surface vertices i < j < k uses the diagonal from
    the inner copy of the lower index to the outer copy of the higher index
    on every side face, so neighbouring prisms share identical diagonals.
    """
    if shells < 1:
        raise ValueError(f"need at least one shell, got {shells}")
    center = np.asarray(center, dtype=float)
    nv = surface.n_vertices

    layers = [center + (surface.vertices - center) * (j / shells) for j in range(1, shells)]
    vertices = np.vstack([center[None, :]] + layers + [surface.vertices])

    def index(shell: int, vertex):
        return 1 + (shell - 1) * nv + vertex

    tris = np.sort(surface.triangles, axis=1)
    i, j, k = tris[:, 0], tris[:, 1], tris[:, 2]
    zero = np.zeros(len(tris), dtype=np.int64)
    blocks = [np.stack([zero, index(1, i), index(1, j), index(1, k)], axis=1)]
    for shell in range(2, shells + 1):
        bi, bj, bk = index(shell - 1, i), index(shell - 1, j), index(shell - 1, k)
        ti, tj, tk = index(shell, i), index(shell, j), index(shell, k)
        blocks.append(np.stack([bi, bj, bk, tk], axis=1))
        blocks.append(np.stack([bi, bj, tj, tk], axis=1))
        blocks.append(np.stack([bi, ti, tj, tk], axis=1))

    volume = VolumeMesh(vertices, np.vstack(blocks), reorient=True)
    logger.debug(f"Built ball with {shells} shell(s): {volume}")
    return volume
