"""
Algebraic structure checks of the block operator.

A(s) = P'(s) C(s) P(s)^-1 with

    P^-1 (v, psi, eta)   = (v, psi, eta + V^-1 L psi)
    C    (v, psi, chi)   = (A~ v + s G psi, -s G^T v + B psi, V chi),  B = W + L' V^-1 L
    P'   (z1, z2, z3)    = (z1, z2 - L' V^-1 z3, z3)

where L = 1/2 M - K and L' = 1/2 M^T - K'. The rotated form
Re <Theta C y, conj(y)> is strictly positive and the skew coupling cancels
under the rotation Theta = diag(e^-i theta, e^-i theta, e^+i theta).
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .system import BlockSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FactorizedForm:
    system: BlockSystem
    v_lu: tuple
    schur: np.ndarray

    def v_solve(self, rhs: np.ndarray) -> np.ndarray:
        return linalg.lu_solve(self.v_lu, rhs)

    def p_inverse(self, x: np.ndarray):
        U, phi, lam = self.system.split(x)
        return U, phi, lam + self.v_solve(self.system.L @ phi)

    def middle(self, v, psi, chi):
        sys_ = self.system
        G = sys_.coupling
        return (sys_.A @ v + G @ psi,
                -(G.T @ v) + self.schur @ psi,
                sys_.bio.V @ chi)

    def p_dual(self, z1, z2, z3) -> np.ndarray:
        return self.system.join(z1, z2 - self.system.Lp @ self.v_solve(z3), z3)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.p_dual(*self.middle(*self.p_inverse(x)))


def factorize(system: BlockSystem) -> FactorizedForm:
    v_lu = linalg.lu_factor(system.bio.V)
    schur = system.bio.W + system.Lp @ linalg.lu_solve(v_lu, system.L)
    return FactorizedForm(system, v_lu, schur)


def check_factorization(system: BlockSystem, x: np.ndarray) -> float:
    """||A x - P' C P^-1 x|| relative to ||A||_F ||x||"""
    form = factorize(system)
    x = np.asarray(x, dtype=complex)
    scale = system.norm_estimate() * np.linalg.norm(x)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(system.apply(x) - form.apply(x)) / scale)


def rotated_form(system: BlockSystem, y: np.ndarray, form: FactorizedForm = None) -> complex:
    """<Theta C y, conj(y)>"""
    form = form or factorize(system)
    v, psi, chi = system.split(np.asarray(y, dtype=complex))
    c1, c2, c3 = form.middle(v, psi, chi)
    rotation = np.exp(-1j * system.frequency.theta)
    return complex(rotation * (np.vdot(v, c1) + np.vdot(psi, c2))
                   + np.conj(rotation) * np.vdot(chi, c3))


def ellipticity_samples(system: BlockSystem, rng: np.random.Generator, count: int = 100) -> np.ndarray:
    """Re <Theta C y, conj(y)> / ||y||^2 for random complex y"""
    form = factorize(system)
    size = sum(system.sizes)
    values = np.empty(count)
    for i in range(count):
        y = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        values[i] = rotated_form(system, y, form).real / np.vdot(y, y).real
    logger.debug(f"Ellipticity at s={system.s:.4g}: min={values.min():.3e}")
    return values


def skew_cancellation(system: BlockSystem, rng: np.random.Generator) -> float:
    """
    Real part of the rotated coupling contribution
    e^-i theta (conj(v)^T s G psi - conj(psi)^T s G^T v) relative to its size.
    """
    n_u, n1, _ = system.sizes
    v = rng.standard_normal(n_u) + 1j * rng.standard_normal(n_u)
    psi = rng.standard_normal(n1) + 1j * rng.standard_normal(n1)
    G = system.coupling
    forward = np.vdot(v, G @ psi)
    backward = np.vdot(psi, G.T @ v)
    rotated = np.exp(-1j * system.frequency.theta) * (forward - backward)
    size = abs(forward) + abs(backward)
    return float(abs(rotated.real) / size) if size else 0.0
