"""
Meshes of Gamma and Omega, mesh files, built-in sphere meshes and the
discrete spaces built on them.
"""

from .surface import SurfaceMesh
from .volume import VolumeMesh, OUTWARD_FACES
from .io import load_mesh, write_mesh
from .builders import octahedron, refine, sphere_surface, ball_volume
from .spaces import DiscreteSpaces, build_spaces
from .coupling import trace_coupling_matrix

__all__ = [
    'SurfaceMesh',
    'VolumeMesh',
    'OUTWARD_FACES',
    'load_mesh',
    'write_mesh',
    'octahedron',
    'refine',
    'sphere_surface',
    'ball_volume',
    'DiscreteSpaces',
    'build_spaces',
    'trace_coupling_matrix',
]
