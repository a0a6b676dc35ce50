"""
Discrete energy norms on X = H1(Omega)^3 x H1/2(Gamma) x H-1/2(Gamma) and its dual.

Each component uses a fixed Gram matrix at |s| = 1:
    U   -> K + rho_e M
    phi -> Re W(1) + p1 mass
    lam -> Re V(1)
"""

import logging
from functools import cached_property

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import splu

logger = logging.getLogger(__name__)


def _sparse_solve(lu, rhs: np.ndarray) -> np.ndarray:
    rhs = np.asarray(rhs)
    if np.iscomplexobj(rhs):
        return lu.solve(np.ascontiguousarray(rhs.real)) + 1j * lu.solve(np.ascontiguousarray(rhs.imag))
    return lu.solve(rhs)


class ProductNorms:
    """X and X' norms for the coupled unknowns and data"""

    def __init__(self, problem):
        self.problem = problem
        self._sizes = (problem.fem.size, problem.spaces.n_p1, problem.spaces.n_p0)

    @cached_property
    def volume_gram(self) -> sparse.csc_matrix:
        fem = self.problem.fem
        return (fem.stiffness + fem.material.rho_e * fem.mass).tocsc()

    @cached_property
    def _volume_lu(self):
        return splu(self.volume_gram)

    @cached_property
    def _unit_bio(self):
        return self.problem.assembler.assemble(1.0, operators=('V', 'W'))

    @cached_property
    def trace_gram(self) -> np.ndarray:
        return self._unit_bio.W.real + self.problem.spaces.p1_mass.toarray()

    @cached_property
    def flux_gram(self) -> np.ndarray:
        return self._unit_bio.V.real

    @cached_property
    def _trace_cho(self):
        return linalg.cho_factor(self.trace_gram)

    @cached_property
    def _flux_cho(self):
        return linalg.cho_factor(self.flux_gram)

    def split(self, x):
        n_u, n1, _ = self._sizes
        return x[:n_u], x[n_u:n_u + n1], x[n_u + n1:]

    def components(self, x: np.ndarray):
        """(||U||, ||phi||, ||lam||) in the primal norms"""
        U, phi, lam = self.split(np.asarray(x))
        return (
            float(np.sqrt(np.vdot(U, self.volume_gram @ U).real)),
            float(np.sqrt(np.vdot(phi, self.trace_gram @ phi).real)),
            float(np.sqrt(np.vdot(lam, self.flux_gram @ lam).real)),
        )

    def norm(self, x: np.ndarray) -> float:
        return float(np.sqrt(sum(c ** 2 for c in self.components(x))))

    def dual_components(self, b: np.ndarray):
        d1, d2, d3 = self.split(np.asarray(b))
        return (
            float(np.sqrt(np.vdot(d1, _sparse_solve(self._volume_lu, d1)).real)),
            float(np.sqrt(np.vdot(d2, linalg.cho_solve(self._trace_cho, d2)).real)),
            float(np.sqrt(np.vdot(d3, linalg.cho_solve(self._flux_cho, d3)).real)),
        )

    def dual_norm(self, b: np.ndarray) -> float:
        return float(np.sqrt(sum(c ** 2 for c in self.dual_components(b))))

    def amplification(self, x: np.ndarray, b: np.ndarray) -> float:
        """||x||_X / ||b||_X'"""
        denominator = self.dual_norm(b)
        return self.norm(x) / denominator if denominator else 0.0
