"""
Dense Galerkin matrices of the four boundary integral operators.

Pairings:
    V  (p0 x p0)  <V chi_u, chi_t>
    K  (p0 x p1)  <K q_j, chi_t>
    Kp (p1 x p0)  <K' chi_u, q_i>
    W  (p1 x p1)  <W q_j, q_i>, through the surface-curl regularization
                  int int E [curl q_j(y) . curl q_i(x) + kappa^2 n_x.n_y q_j q_i]
"""

import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Optional, Sequence

import numpy as np

from model.errors import MeshError
from model.frequency import ComplexFrequency, as_frequency
from .kernels import KernelParams
from .quadrature import (
    PairPoints,
    QuadratureSettings,
    classify_pairs,
    points_per_pair,
    product_rule,
    singular_rule,
)

logger = logging.getLogger(__name__)

OPERATORS = ('V', 'K', 'Kp', 'W')
BLOCK_POINTS = 400_000


@dataclass(frozen=True, eq=False)
class BioMatrices:
    """Boundary operator matrices at one frequency; operators not requested are None"""
    frequency: ComplexFrequency
    V: Optional[np.ndarray] = None
    K: Optional[np.ndarray] = None
    Kp: Optional[np.ndarray] = None
    W: Optional[np.ndarray] = None

    def available(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in OPERATORS if getattr(self, name) is not None}

    def norms(self) -> Dict[str, float]:
        return {name: float(np.linalg.norm(matrix, 2)) for name, matrix in self.available().items()}


def _chunks(count: int, size: int) -> Iterator[slice]:
    for start in range(0, count, size):
        yield slice(start, min(start + size, count))


class _Accumulator:
    """Scatters per-pair local integrals into the global matrices"""

    def __init__(self, mesh, kernel: KernelParams, wanted):
        n0, n1 = mesh.n_triangles, mesh.n_vertices
        self.mesh = mesh
        self.kappa = kernel.kappa
        self.V = np.zeros((n0, n0), dtype=complex)
        self.K = np.zeros((n0, n1), dtype=complex) if 'K' in wanted else None
        self.Kp = np.zeros((n1, n0), dtype=complex) if 'Kp' in wanted else None
        self.W = np.zeros((n1, n1), dtype=complex) if 'W' in wanted else None

    def add(self, a: np.ndarray, b: np.ndarray, values: Dict[str, np.ndarray]):
        tri = self.mesh.triangles
        np.add.at(self.V, (a, b), values['V'])
        if self.K is not None:
            np.add.at(self.K, (a[:, None], tri[b]), values['K'])
        if self.Kp is not None:
            np.add.at(self.Kp, (tri[a], b[:, None]), values['Kp'])
        if self.W is not None:
            curls = self.mesh.surface_curls
            normals = self.mesh.normals
            curl_products = np.einsum('pkd,pld->pkl', curls[a], curls[b])
            normal_products = np.einsum('pd,pd->p', normals[a], normals[b])
            local = (values['V'][:, None, None] * curl_products
                     + self.kappa ** 2 * normal_products[:, None, None] * values['S'])
            np.add.at(self.W, (tri[a][:, :, None], tri[b][:, None, :]), local)


def pair_integrals(kernel: KernelParams, mesh, a: np.ndarray, b: np.ndarray,
                   points: PairPoints, wanted) -> Dict[str, np.ndarray]:
    """Local integrals of every requested kernel over a batch of panel pairs"""
    diff = points.x - points.y
    r = np.linalg.norm(diff, axis=-1)
    single, gradient = kernel.evaluate(r)
    weighted = points.w * single
    values = {'V': weighted.sum(axis=1)}
    if 'K' in wanted:
        dlp = points.w * gradient * np.einsum('pqd,pd->pq', diff, mesh.normals[b])
        values['K'] = np.einsum('pq,pql->pl', dlp, points.by)
    if 'Kp' in wanted:
        adjoint = -points.w * gradient * np.einsum('pqd,pd->pq', diff, mesh.normals[a])
        values['Kp'] = np.einsum('pq,pqk->pk', adjoint, points.bx)
    if 'W' in wanted:
        values['S'] = np.einsum('pq,pqk,pql->pkl', weighted, points.bx, points.by)
    return values


class BoundaryAssembler:
    """
    Assembles boundary operator matrices for one surface mesh at any number
    of frequencies. Pair classification is computed once; quadrature points
    are regenerated per frequency so concurrent calls share nothing mutable.
    """

    def __init__(self, mesh, settings: Optional[QuadratureSettings] = None, sound_speed: float = 1.0):
        self.mesh = mesh
        self.settings = settings or QuadratureSettings()
        self.sound_speed = sound_speed
        self._points = points_per_pair(self.settings)

    @cached_property
    def pairs(self):
        return classify_pairs(self.mesh, self.settings)

    def _far_pairs(self, kernel: KernelParams) -> Iterator[tuple]:
        mesh = self.mesh
        n0 = mesh.n_triangles
        rows_per_block = max(1, BLOCK_POINTS // max(1, n0 * self._points['far']))
        decay_rate = kernel.kappa.real
        special = self.pairs.special
        for rows in _chunks(n0, rows_per_block):
            index = np.arange(rows.start, rows.stop)
            gap = (np.linalg.norm(mesh.centroids[index, None, :] - mesh.centroids[None, :, :], axis=-1)
                   - mesh.diameters[index, None] - mesh.diameters[None, :])
            keep = (decay_rate * np.maximum(gap, 0.0) <= self.settings.decay_cutoff)
            keep &= ~special[index].toarray()
            local_a, b = np.nonzero(keep)
            yield index[local_a], b

    def _integrate(self, kernel, accumulator, a, b, rule, per_pair, wanted):
        step = max(1, BLOCK_POINTS // per_pair)
        for part in _chunks(len(a), step):
            aa, bb = a[part], b[part]
            points = rule(aa, bb)
            accumulator.add(aa, bb, pair_integrals(kernel, self.mesh, aa, bb, points, wanted))

    def assemble(self, s, operators: Sequence[str] = OPERATORS) -> BioMatrices:
        frequency = as_frequency(s)
        wanted = set(operators)
        unknown = wanted.difference(OPERATORS)
        if unknown:
            raise ValueError(f"Unknown boundary operator(s): {sorted(unknown)}")
        kernel = KernelParams.from_frequency(frequency, self.sound_speed)
        started = time.perf_counter()

        acc = _Accumulator(self.mesh, kernel, wanted)
        settings = self.settings
        mesh = self.mesh

        for a, b in self._far_pairs(kernel):
            self._integrate(kernel, acc, a, b,
                            lambda aa, bb: product_rule(mesh, aa, bb, settings.regular_order),
                            self._points['far'], wanted)
        near = self.pairs.near
        self._integrate(kernel, acc, near[:, 0], near[:, 1],
                        lambda aa, bb: product_rule(mesh, aa, bb, settings.near_order),
                        self._points['near'], wanted)
        singular = self.pairs.singular
        self._integrate(kernel, acc, singular[:, 0], singular[:, 1],
                        lambda aa, bb: singular_rule(mesh, aa, bb, settings),
                        self._points['singular'], wanted)

        logger.debug(f"Assembled {sorted(wanted)} at s={frequency.s:.4g} "
                     f"on {mesh.n_triangles} panels in {time.perf_counter() - started:.2f}s")
        return BioMatrices(
            frequency,
            V=acc.V if 'V' in wanted else None,
            K=acc.K,
            Kp=acc.Kp,
            W=acc.W,
        )


def _assembler(mesh, spaces, settings, sound_speed) -> BoundaryAssembler:
    if spaces is not None and (spaces.n_p0 != mesh.n_triangles or spaces.n_p1 != mesh.n_vertices):
        raise MeshError("discrete spaces do not belong to this surface mesh")
    return BoundaryAssembler(mesh, settings, sound_speed)


def assemble_V(s, mesh, spaces=None, settings: Optional[QuadratureSettings] = None,
               sound_speed: float = 1.0) -> np.ndarray:
    return _assembler(mesh, spaces, settings, sound_speed).assemble(s, ('V',)).V


def assemble_K(s, mesh, spaces=None, settings: Optional[QuadratureSettings] = None,
               sound_speed: float = 1.0) -> np.ndarray:
    return _assembler(mesh, spaces, settings, sound_speed).assemble(s, ('K',)).K


def assemble_Kp(s, mesh, spaces=None, settings: Optional[QuadratureSettings] = None,
                sound_speed: float = 1.0) -> np.ndarray:
    return _assembler(mesh, spaces, settings, sound_speed).assemble(s, ('Kp',)).Kp


def assemble_W(s, mesh, spaces=None, settings: Optional[QuadratureSettings] = None,
               sound_speed: float = 1.0) -> np.ndarray:
    return _assembler(mesh, spaces, settings, sound_speed).assemble(s, ('W',)).W
