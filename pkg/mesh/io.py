"""
ASCII mesh files.

Layout::

    OFFLIKE surf|vol
    <n_vertices> <n_elements>
    x y z                (n_vertices lines)
    i j k [l]            (n_elements lines, 0-based)

Blank lines and text after ``#`` are ignored.
"""

import logging
import os
from typing import Union

import numpy as np

from model.errors import MeshParseError
from .surface import SurfaceMesh
from .volume import VolumeMesh

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ('off_like_ascii',)
HEADER = 'OFFLIKE'
NODES_PER_ELEMENT = {'surf': 3, 'vol': 4}


def _content_lines(path: str):
    with open(path, 'r') as f:
        for number, raw in enumerate(f, start=1):
            text = raw.split('#', 1)[0].strip()
            if text:
                yield number, text


def load_mesh(path: str, format: str = 'off_like_ascii') -> Union[SurfaceMesh, VolumeMesh]:
    """
    Read a surface or volume mesh and validate it.

    Surfaces come back closed, consistently oriented and with outward
    normals; volume meshes come back with positively oriented tetrahedra.
    """
    if format not in SUPPORTED_FORMATS:
        raise MeshParseError(f"Unsupported mesh format: {format}")
    if not os.path.exists(path):
        raise MeshParseError(f"mesh file not found: {path}")

    lines = list(_content_lines(path))
    if not lines:
        raise MeshParseError(f"{path}: empty mesh file")

    header = lines[0][1].split()
    if len(header) != 2 or header[0] != HEADER or header[1] not in NODES_PER_ELEMENT:
        raise MeshParseError(f"{path}:{lines[0][0]}: expected 'OFFLIKE surf' or 'OFFLIKE vol' header")
    kind = header[1]
    arity = NODES_PER_ELEMENT[kind]

    try:
        n_vertices, n_elements = (int(token) for token in lines[1][1].split())
    except (IndexError, ValueError):
        raise MeshParseError(f"{path}: counts line must hold two integers")

    body = lines[2:]
    if len(body) != n_vertices + n_elements:
        raise MeshParseError(
            f"{path}: expected {n_vertices} vertex and {n_elements} element lines, found {len(body)} lines"
        )

    vertices = np.empty((n_vertices, 3))
    for row, (number, text) in enumerate(body[:n_vertices]):
        tokens = text.split()
        try:
            if len(tokens) != 3:
                raise ValueError
            vertices[row] = [float(token) for token in tokens]
        except ValueError:
            raise MeshParseError(f"{path}:{number}: vertex line needs 3 floats")

    elements = np.empty((n_elements, arity), dtype=np.int64)
    for row, (number, text) in enumerate(body[n_vertices:]):
        tokens = text.split()
        try:
            if len(tokens) != arity:
                raise ValueError
            elements[row] = [int(token) for token in tokens]
        except ValueError:
            raise MeshParseError(f"{path}:{number}: element line needs {arity} integer indices")

    if elements.size and (elements.min() < 0 or elements.max() >= n_vertices):
        raise MeshParseError(f"{path}: element index out of range 0..{n_vertices - 1}")

    if kind == 'surf':
        mesh = SurfaceMesh(vertices, elements)
    else:
        mesh = VolumeMesh(vertices, elements, reorient=True)
    logger.info(f"Loaded {mesh} from {path}")
    return mesh


def write_mesh(path: str, mesh: Union[SurfaceMesh, VolumeMesh]) -> str:
    """Write a mesh in the same ASCII layout load_mesh reads"""
    if isinstance(mesh, SurfaceMesh):
        kind, elements = 'surf', mesh.triangles
    else:
        kind, elements = 'vol', mesh.tetrahedra

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write(f"{HEADER} {kind}\n")
        f.write(f"{len(mesh.vertices)} {len(elements)}\n")
        for x, y, z in mesh.vertices:
            f.write(f"{float(x)!r} {float(y)!r} {float(z)!r}\n")
        for element in elements:
            f.write(" ".join(str(int(i)) for i in element) + "\n")
    logger.info(f"Wrote {mesh} to {path}")
    return path
