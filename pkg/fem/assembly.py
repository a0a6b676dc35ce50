"""
P1 vector finite elements for the transformed Lame operator on Omega.

Degrees of freedom are ordered 3 * vertex + component.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from model.errors import InvertedElementError
from model.frequency import as_frequency
from model.material import MaterialSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FemMatrices:
    """
    stiffness: int lambda div U div V + 2 mu eps(U):eps(V)
    mass:      int U . V
    """
    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    material: MaterialSystem

    @property
    def size(self) -> int:
        return self.stiffness.shape[0]

    def energy_matrix(self, modulus: float) -> sparse.csr_matrix:
        """K + rho_e |s|^2 M, the matrix of |||U|||^2_{|s|}"""
        return (self.stiffness + self.material.rho_e * modulus ** 2 * self.mass).tocsr()

    def energy_norm(self, U: np.ndarray, modulus: float) -> float:
        U = np.asarray(U)
        value = np.vdot(U, self.energy_matrix(modulus) @ U)
        return float(np.sqrt(max(value.real, 0.0)))


def gradients(vertices: np.ndarray, tetrahedra: np.ndarray):
    """Barycentric gradients (m, 4, 3) and element volumes (m,)"""
    c = vertices[tetrahedra]
    edges = np.stack([c[:, 1] - c[:, 0], c[:, 2] - c[:, 0], c[:, 3] - c[:, 0]], axis=2)
    volumes = np.linalg.det(edges) / 6.0
    if np.any(volumes <= 0):
        bad = int(np.flatnonzero(volumes <= 0)[0])
        raise InvertedElementError(f"tetrahedron {bad} has non-positive volume {volumes[bad]:.3e}")
    inverse = np.linalg.inv(edges)
    grads = np.concatenate([-inverse.sum(axis=1, keepdims=True), inverse], axis=1)
    return grads, volumes


def element_stiffness(grads: np.ndarray, volumes: np.ndarray, lame_lambda: float,
                      lame_mu: float) -> np.ndarray:
    """Local stiffness blocks (m, 4, 3, 4, 3) indexed [a, i, b, j]"""
    eye = np.eye(3)
    dots = np.einsum('eak,ebk->eab', grads, grads)
    local = (lame_lambda * np.einsum('eai,ebj->eaibj', grads, grads)
             + lame_mu * np.einsum('eaj,ebi->eaibj', grads, grads)
             + lame_mu * np.einsum('eab,ij->eaibj', dots, eye))
    return volumes[:, None, None, None, None] * local


def element_mass(volumes: np.ndarray) -> np.ndarray:
    """Local vector mass blocks (m, 4, 3, 4, 3): vol (1 + delta_ab) / 20 delta_ij"""
    scalar = (np.ones((4, 4)) + np.eye(4)) / 20.0
    return volumes[:, None, None, None, None] * np.einsum('ab,ij->aibj', scalar, np.eye(3))[None]


def _assemble(local: np.ndarray, tetrahedra: np.ndarray, size: int) -> sparse.csr_matrix:
    dofs = 3 * tetrahedra[:, :, None] + np.arange(3)
    rows = np.broadcast_to(dofs[:, :, :, None, None], local.shape)
    cols = np.broadcast_to(dofs[:, None, None, :, :], local.shape)
    return sparse.coo_matrix((local.ravel(), (rows.ravel(), cols.ravel())), shape=(size, size)).tocsr()


def assemble_fem(mesh, mat: MaterialSystem) -> FemMatrices:
    """Exact integration of the stiffness and mass forms on affine tetrahedra"""
    grads, volumes = gradients(mesh.vertices, mesh.tetrahedra)
    size = 3 * mesh.n_vertices
    stiffness = _assemble(element_stiffness(grads, volumes, mat.lame_lambda, mat.lame_mu),
                          mesh.tetrahedra, size)
    mass = _assemble(element_mass(volumes), mesh.tetrahedra, size)
    logger.info(f"Assembled FEM matrices: {size} dofs, {mesh.n_tetrahedra} elements, "
                f"stiffness nnz={stiffness.nnz}")
    return FemMatrices(stiffness, mass, mat)


def build_A(s, fem: FemMatrices, mat: MaterialSystem = None) -> sparse.csr_matrix:
    """A~(s) = (K + rho_e s^2 M) / rho_0"""
    frequency = as_frequency(s)
    mat = mat or fem.material
    matrix = (fem.stiffness + (mat.rho_e * frequency.s ** 2) * fem.mass) / mat.rho_0
    return matrix.astype(complex).tocsr()


def rigid_body_modes(vertices: np.ndarray) -> np.ndarray:
    """Three translations and three infinitesimal rotations, shape (6, 3n)"""
    center = vertices.mean(axis=0)
    x = vertices - center
    n = len(vertices)
    modes = np.zeros((6, n, 3))
    for k in range(3):
        modes[k, :, k] = 1.0
        axis = np.zeros(3)
        axis[k] = 1.0
        modes[3 + k] = np.cross(axis, x)
    return modes.reshape(6, 3 * n)
