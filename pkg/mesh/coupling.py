"""
Normal-trace coupling between the volume vector space and p1 on Gamma.
"""

import logging

import numpy as np
from scipy import sparse

from model.errors import MeshError
from .spaces import DiscreteSpaces

logger = logging.getLogger(__name__)

# Exact P1 x P1 mass on a triangle of unit area
_LOCAL_MASS = (np.ones((3, 3)) + np.eye(3)) / 12.0


def trace_coupling_matrix(spaces: DiscreteSpaces) -> sparse.csr_matrix:
    """
    Entries int_Gamma (v_i . n) q_j dGamma for vector P1 volume basis
    functions v_i and scalar P1 surface functions q_j, shape
    (3 * n_volume_vertices, n_p1). Independent of the frequency.
    """
    if spaces.volume is None:
        raise MeshError("trace coupling needs a volume mesh")
    surface = spaces.surface
    tri = surface.triangles
    dofs = spaces.volume_dofs(tri)  # (m, 3 vertices, 3 components)

    # rows: vertex a component d, cols: vertex b
    values = (surface.areas[:, None, None, None]
              * _LOCAL_MASS[None, :, None, :]
              * surface.normals[:, None, :, None])
    rows = np.broadcast_to(dofs[:, :, :, None], values.shape)
    cols = np.broadcast_to(tri[:, None, None, :], values.shape)

    matrix = sparse.coo_matrix(
        (values.ravel(), (rows.ravel(), cols.ravel())),
        shape=(spaces.n_volume, spaces.n_p1),
    ).tocsr()
    logger.debug(f"Trace coupling assembled: shape={matrix.shape}, nnz={matrix.nnz}")
    return matrix
