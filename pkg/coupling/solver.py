"""
Frequency-domain solves of the coupled system.

The sparse FEM block is eliminated with a sparse LU factorization; the
remaining boundary system in (phi, lam) is dense and factored directly.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import splu

from bem.assembly import BoundaryAssembler
from fem.assembly import FemMatrices, build_A
from mesh.coupling import trace_coupling_matrix
from model.errors import SingularSystemError
from model.frequency import ComplexFrequency, as_frequency
from .system import BlockSystem, build_rhs, rhs_from_traces

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class FrequencySolution:
    U_hat: np.ndarray
    phi_hat: np.ndarray
    lambda_hat: np.ndarray
    frequency: ComplexFrequency
    residual: float = 0.0

    def vector(self) -> np.ndarray:
        return np.concatenate([self.U_hat, self.phi_hat, self.lambda_hat])

    def conjugate(self) -> 'FrequencySolution':
        """Solution at the conjugate frequency for conjugate data"""
        return FrequencySolution(self.U_hat.conj(), self.phi_hat.conj(), self.lambda_hat.conj(),
                                 self.frequency.conjugate(), self.residual)


def _solve_vector(system: BlockSystem, b: np.ndarray) -> np.ndarray:
    s = system.s
    d1, d2, d3 = system.split(b)
    try:
        fem_lu = splu(system.A.tocsc())
    except RuntimeError as e:
        raise SingularSystemError(f"FEM block factorization failed at s={s:.4g}: {e}")

    G = system.trace.toarray().astype(complex)
    a_inv_g = fem_lu.solve(G)
    a_inv_d1 = fem_lu.solve(np.asarray(d1, dtype=complex))

    schur = system.bio.W + (s ** 2) * (G.T @ a_inv_g)
    reduced = np.block([[schur, -system.Lp], [system.L, system.bio.V]])
    reduced_rhs = np.concatenate([d2 + s * (G.T @ a_inv_d1), d3])

    lu, piv = linalg.lu_factor(reduced, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= np.finfo(float).eps * pivots.max() * len(pivots):
        raise SingularSystemError(f"boundary system is numerically singular at s={s:.4g}")
    boundary = linalg.lu_solve((lu, piv), reduced_rhs)
    n1 = schur.shape[0]
    phi, lam = boundary[:n1], boundary[n1:]
    U = fem_lu.solve(np.asarray(d1, dtype=complex) - s * (G @ phi))
    return system.join(U, phi, lam)


def relative_residual(system: BlockSystem, x: np.ndarray, b: np.ndarray) -> float:
    """||A x - b|| / (||A|| ||x|| + ||b||) with the Frobenius estimate of ||A||"""
    scale = system.norm_estimate() * np.linalg.norm(x) + np.linalg.norm(b)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(system.apply(x) - b) / scale)


def solve_frequency(system: BlockSystem, rhs: Optional[np.ndarray] = None) -> FrequencySolution:
    """Solve A(s) x = b by eliminating the FEM block, then verify the residual"""
    b = system.rhs_vector if rhs is None else np.asarray(rhs, dtype=complex)
    started = time.perf_counter()
    if not np.any(b):
        n_u, n1, n0 = system.sizes
        zero = np.zeros(n_u + n1 + n0, dtype=complex)
        return FrequencySolution(*system.split(zero), system.frequency)

    x = _solve_vector(system, b)
    if not np.all(np.isfinite(x)):
        raise SingularSystemError(f"non-finite solution at s={system.s:.4g}")
    residual = relative_residual(system, x, b)
    if residual > RESIDUAL_TOLERANCE:
        raise SingularSystemError(
            f"residual {residual:.2e} exceeds {RESIDUAL_TOLERANCE:g} at s={system.s:.4g}"
        )
    logger.debug(f"Solved s={system.s:.4g}: residual={residual:.2e}, "
                 f"{time.perf_counter() - started:.2f}s")
    U, phi, lam = system.split(x)
    return FrequencySolution(U, phi, lam, system.frequency, residual)


def solve_conjugate(system: BlockSystem, rhs: np.ndarray) -> np.ndarray:
    """Solution at s-bar for data rhs, obtained from the system at s"""
    solution = solve_frequency(system, np.conj(rhs))
    return np.conj(solution.vector())


class CoupledProblem:
    """
    Frequency-independent pieces of the coupled problem: FEM matrices,
    normal-trace coupling and the boundary assembler. Builds a BlockSystem
    at any frequency; safe to share between threads.
    """

    def __init__(self, spaces, fem: FemMatrices, assembler: BoundaryAssembler, trace=None):
        self.spaces = spaces
        self.mesh = spaces.surface
        self.fem = fem
        self.material = fem.material
        self.assembler = assembler
        self.trace = trace if trace is not None else trace_coupling_matrix(spaces)

    def system(self, s, incident=None, rhs=None) -> BlockSystem:
        frequency = as_frequency(s)
        bio = self.assembler.assemble(frequency)
        if rhs is None:
            rhs = build_rhs(frequency, incident, self.mesh, self.spaces, self.trace)
        return BlockSystem(
            frequency=frequency,
            A=build_A(frequency, self.fem),
            trace=self.trace,
            bio=bio,
            dual_mass=self.spaces.dual_mass,
            rhs=tuple(rhs),
        )

    def system_from_traces(self, s, dirichlet, neumann) -> BlockSystem:
        frequency = as_frequency(s)
        rhs = rhs_from_traces(frequency, dirichlet, neumann, self.mesh, self.spaces, self.trace)
        return self.system(frequency, rhs=rhs)

    def solve(self, s, incident=None) -> FrequencySolution:
        return solve_frequency(self.system(s, incident))
