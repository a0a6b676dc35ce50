"""
The coupled solve as a CQ transfer map: raw incident traces in, Laplace
domain coefficients (U, phi, lam) out.
"""

import logging
from typing import List, Tuple

import numpy as np

from cq.convolution import forward_transform, frequency_sweep
from cq.grid import CQGrid
from cq.transfer import TransferMap
from .solver import CoupledProblem, FrequencySolution, solve_conjugate, solve_frequency
from .system import rhs_from_traces, trace_points

logger = logging.getLogger(__name__)

CAUSALITY_TOLERANCE = 1e-12


def incident_samples(incident, mesh, grid: CQGrid) -> np.ndarray:
    """
    Incident Dirichlet trace at the vertices and Neumann trace at the
    quadrature points, one row per time step: shape (N + 1, n1 + n0 q).
    """
    times = grid.times
    dirichlet, _ = incident.trace(mesh.vertices, times)
    points, normals = trace_points(mesh)
    _, neumann = incident.trace(points, times, normals)
    samples = np.hstack([dirichlet, neumann])
    peak = np.abs(samples).max()
    if peak > 0 and np.abs(samples[0]).max() > CAUSALITY_TOLERANCE * peak:
        logger.warning(f"Incident field on the boundary at t=0 is "
                       f"{np.abs(samples[0]).max() / peak:.2e} of its peak")
    return samples


class CoupledTransfer(TransferMap):
    """Per-frequency solve of the block system from transformed traces"""
    name = 'coupled'

    def __init__(self, problem: CoupledProblem):
        self.problem = problem
        self._split = problem.spaces.n_p1

    def system(self, s, data: np.ndarray):
        data = np.asarray(data)
        return self.problem.system_from_traces(s, data[:self._split], data[self._split:])

    def solution(self, s, data: np.ndarray) -> FrequencySolution:
        return solve_frequency(self.system(s, data))

    def conjugate_solution(self, system, data: np.ndarray) -> FrequencySolution:
        """Solution at conj(s) for ``data`` transformed at conj(s), reusing the system at s"""
        frequency = system.frequency.conjugate()
        data = np.asarray(data)
        rhs = rhs_from_traces(frequency, data[:self._split], data[self._split:], self.problem.mesh,
                              self.problem.spaces, self.problem.trace)
        vector = solve_conjugate(system, system.join(*rhs))
        return FrequencySolution(*system.split(vector), frequency)

    def apply(self, s, data):
        return self.solution(s, data).vector()


def solve_sweep(problem: CoupledProblem, incident, grid: CQGrid, threads: int = 1) -> List[FrequencySolution]:
    """Frequency solutions at every CQ sample point of the half spectrum"""
    transfer = CoupledTransfer(problem)
    spectrum = forward_transform(incident_samples(incident, problem.mesh, grid), grid)
    logger.info(f"Solving {grid.n_frequencies} frequencies: {problem.fem.size} volume, "
                f"{problem.spaces.n_p1} + {problem.spaces.n_p0} boundary unknowns")
    return frequency_sweep(lambda i, s: transfer.solution(s, spectrum[i]), grid.frequencies(), threads)


def solve_full_sweep(problem: CoupledProblem, incident, grid: CQGrid,
                     threads: int = 1) -> Tuple[List[FrequencySolution], List[FrequencySolution]]:
    """
    Half-spectrum solutions plus the solutions at the remaining rows
    l = L // 2 + 1 .. N, each solved from its own transformed data row at
    s_l = conj(s_{L-l}). The second list follows ``grid.mirror_indices()``.
    """
    transfer = CoupledTransfer(problem)
    spectrum = forward_transform(incident_samples(incident, problem.mesh, grid), grid, full=True)
    partners = {int(k): grid.length - int(k) for k in grid.mirror_indices()}
    logger.info(f"Solving {grid.n_frequencies} frequencies and {len(partners)} conjugate rows: "
                f"{problem.fem.size} volume, {problem.spaces.n_p1} + {problem.spaces.n_p0} boundary unknowns")

    def solve_pair(index, s):
        system = transfer.system(s, spectrum[index])
        primary = solve_frequency(system)
        if index not in partners:
            return primary, None
        return primary, transfer.conjugate_solution(system, spectrum[partners[index]])

    pairs = frequency_sweep(solve_pair, grid.frequencies(), threads)
    return [primary for primary, _ in pairs], [pairs[k][1] for k in grid.mirror_indices()]
