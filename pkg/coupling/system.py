"""
The 3 x 3 block operator of the coupled problem and its right-hand side.

Unknowns x = (U, phi, lam): volume displacement, p1 trace of the fluid
potential and p0 normal derivative. Blocks:

    [ A~(s)      s G          0          ]
    [ -s G^T     W(s)        -(1/2 M^T - K') ]
    [ 0          1/2 M - K    V(s)       ]

with G the normal-trace coupling and M the p0 x p1 dual mass.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import norm as sparse_norm

from bem.assembly import BioMatrices
from bem.quadrature import triangle_rule
from model.frequency import ComplexFrequency, as_frequency
from model.incident import IncidentField

logger = logging.getLogger(__name__)

RHS_ORDER = 5


def trace_points(mesh):
    """Quadrature points and normals on which the Neumann trace is sampled"""
    bary, weights = triangle_rule(RHS_ORDER)
    points = np.einsum('qk,tkd->tqd', bary, mesh.corners).reshape(-1, 3)
    normals = np.repeat(mesh.normals, len(weights), axis=0)
    return points, normals


@dataclass(frozen=True, eq=False)
class BlockSystem:
    frequency: ComplexFrequency
    A: sparse.csr_matrix
    trace: sparse.csr_matrix
    bio: BioMatrices
    dual_mass: sparse.csr_matrix
    rhs: Tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def s(self) -> complex:
        return self.frequency.s

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return self.A.shape[0], self.bio.W.shape[0], self.bio.V.shape[0]

    @cached_property
    def L(self) -> np.ndarray:
        """1/2 M - K, shape (n0, n1)"""
        return 0.5 * self.dual_mass.toarray() - self.bio.K

    @cached_property
    def Lp(self) -> np.ndarray:
        """1/2 M^T - K', shape (n1, n0)"""
        return 0.5 * self.dual_mass.T.toarray() - self.bio.Kp

    @cached_property
    def coupling(self) -> sparse.csr_matrix:
        """s G, built once; the (2, 1) block is its negative transpose"""
        return (self.s * self.trace).tocsr()

    def blocks(self) -> List[List[Optional[object]]]:
        """Block layout with structural zeros left as None"""
        return [
            [self.A, self.coupling, None],
            [-self.coupling.T, self.bio.W, -self.Lp],
            [None, self.L, self.bio.V],
        ]

    def split(self, x: np.ndarray):
        n_u, n1, _ = self.sizes
        return x[:n_u], x[n_u:n_u + n1], x[n_u + n1:]

    @staticmethod
    def join(U, phi, lam) -> np.ndarray:
        return np.concatenate([U, phi, lam])

    @property
    def rhs_vector(self) -> np.ndarray:
        return self.join(*self.rhs)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Action of the block operator"""
        U, phi, lam = self.split(np.asarray(x))
        G = self.coupling
        return self.join(
            self.A @ U + G @ phi,
            -(G.T @ U) + self.bio.W @ phi - self.Lp @ lam,
            self.L @ phi + self.bio.V @ lam,
        )

    def dense(self) -> np.ndarray:
        """Full matrix; only for small meshes"""
        rows = []
        n_u, n1, n0 = self.sizes
        shapes = (n_u, n1, n0)
        for i, row in enumerate(self.blocks()):
            cells = []
            for j, block in enumerate(row):
                if block is None:
                    cells.append(np.zeros((shapes[i], shapes[j]), dtype=complex))
                elif sparse.issparse(block):
                    cells.append(block.toarray())
                else:
                    cells.append(np.asarray(block))
            rows.append(np.hstack(cells))
        return np.vstack(rows)

    def block_norms(self) -> dict:
        """Frobenius norm of every non-zero block"""
        names = [['A', 'sG', None], ['-sG^T', 'W', '-Lp'], [None, 'L', 'V']]
        norms = {}
        for row_names, row in zip(names, self.blocks()):
            for name, block in zip(row_names, row):
                if block is not None:
                    norms[name] = float(sparse_norm(block) if sparse.issparse(block)
                                        else np.linalg.norm(block))
        return norms

    def norm_estimate(self) -> float:
        """Frobenius norm of the full operator, an upper bound for the spectral norm"""
        return float(np.sqrt(sum(value ** 2 for value in self.block_norms().values())))


def build_rhs(s, incident: Optional[IncidentField], mesh, spaces,
              trace: Optional[sparse.csr_matrix] = None):
    """
    (d1, d2, d3) with
        d1 = -s G Phi_inc        (Phi_inc interpolated at the vertices)
        d2 = int dPhi_inc/dn q_i (quadrature on every panel)
        d3 = 0
    """
    frequency = as_frequency(s)
    n_u = spaces.n_volume
    if incident is None:
        return (np.zeros(n_u, dtype=complex), np.zeros(spaces.n_p1, dtype=complex),
                np.zeros(spaces.n_p0, dtype=complex))
    values, _ = incident.laplace(frequency, mesh.vertices)
    points, normals = trace_points(mesh)
    _, normal_derivative = incident.laplace(frequency, points, normals)
    return rhs_from_traces(frequency, values, normal_derivative, mesh, spaces, trace)


def rhs_from_traces(s, dirichlet: np.ndarray, neumann: np.ndarray, mesh, spaces,
                    trace: Optional[sparse.csr_matrix] = None):
    """
    Right-hand side from transformed incident traces: ``dirichlet`` at the
    vertices and ``neumann`` at the RHS_ORDER quadrature points of every
    panel, panel-major.
    """
    frequency = as_frequency(s)
    if trace is None:
        from mesh.coupling import trace_coupling_matrix
        trace = trace_coupling_matrix(spaces)
    bary, weights = triangle_rule(RHS_ORDER)
    neumann = np.asarray(neumann).reshape(mesh.n_triangles, len(weights))
    local = np.einsum('tq,q,qk->tk', neumann, weights, bary) * mesh.areas[:, None]
    d2 = np.zeros(mesh.n_vertices, dtype=complex)
    np.add.at(d2, mesh.triangles, local)
    d1 = -frequency.s * (trace @ np.asarray(dirichlet, dtype=complex))
    return d1, d2, np.zeros(mesh.n_triangles, dtype=complex)
