"""
Smooth causal pulse profiles with closed-form Laplace transforms.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Any

import numpy as np
from scipy.special import erfcx

from .errors import IncidentFieldError

logger = logging.getLogger(__name__)

CAUSALITY_TOLERANCE = 1e-12
MAX_DERIVATIVE_ORDER = 4


@dataclass(frozen=True)
class ModulatedGaussianPulse:
    """
    psi(t) = A exp(-(t - t_c)^2 / w^2) sin(omega_0 (t - t_c) + phi_0)

    Written as A Im(exp(i phi_0) g(tau)) with g = exp(-tau^2/w^2 + i omega_0 tau),
    so every derivative is a polynomial in tau times g.
    """
    amplitude: float = 1.0
    center: float = 1.0
    width: float = 0.1
    carrier: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise IncidentFieldError(f"pulse width must be positive, got {self.width}")
        if self.center / self.width > 25.0:
            raise IncidentFieldError(
                f"pulse center/width ratio {self.center / self.width:.1f} exceeds 25 "
                "and overflows the closed-form transform"
            )
        leak = self.causality_leak()
        if leak > CAUSALITY_TOLERANCE:
            raise IncidentFieldError(
                f"pulse and its first {MAX_DERIVATIVE_ORDER} derivatives reach "
                f"{leak:.2e} of the peak for t <= 0 (tolerance {CAUSALITY_TOLERANCE:g}); "
                "move the center later or narrow the width"
            )

    @property
    def peak(self) -> float:
        return abs(self.amplitude)

    @property
    def support_start(self) -> float:
        """Earliest time where the envelope reaches the causality tolerance"""
        return self.center - self.width * np.sqrt(np.log(1.0 / CAUSALITY_TOLERANCE))

    def _derivative_factor(self, tau: np.ndarray, order: int) -> np.ndarray:
        w2 = self.width ** 2
        q1 = -2.0 * tau / w2 + 1j * self.carrier
        q2 = -2.0 / w2
        if order == 0:
            return np.ones_like(q1)
        if order == 1:
            return q1
        if order == 2:
            return q1 ** 2 + q2
        if order == 3:
            return q1 ** 3 + 3.0 * q1 * q2
        if order == 4:
            return q1 ** 4 + 6.0 * q1 ** 2 * q2 + 3.0 * q2 ** 2
        raise ValueError(f"derivative order {order} not supported")

    def derivative(self, t, order: int = 1) -> np.ndarray:
        tau = np.asarray(t, dtype=float) - self.center
        g = np.exp(-tau ** 2 / self.width ** 2 + 1j * self.carrier * tau)
        values = self.amplitude * np.imag(
            np.exp(1j * self.phase) * self._derivative_factor(tau, order) * g
        )
        return values

    def __call__(self, t) -> np.ndarray:
        return self.derivative(t, order=0)

    def causality_leak(self) -> float:
        """Largest |psi^(k)(t)| / peak over t <= 0 and k <= 4"""
        t = np.linspace(-10.0 * self.width, 0.0, 401)
        tau = t - self.center
        envelope = np.exp(-tau ** 2 / self.width ** 2)
        leak = 0.0
        for order in range(MAX_DERIVATIVE_ORDER + 1):
            bound = np.abs(self._derivative_factor(tau, order)) * envelope
            leak = max(leak, float(bound.max()))
        return leak

    def _half_line_gaussian(self, p: np.ndarray) -> np.ndarray:
        # int_0^inf exp(-p t) exp(-(t - t_c)^2 / w^2) dt
        w, tc = self.width, self.center
        return (0.5 * w * np.sqrt(np.pi) * np.exp(-(tc / w) ** 2)
                * erfcx(0.5 * p * w - tc / w))

    def laplace(self, s) -> np.ndarray:
        """Closed-form Laplace transform, vectorized over s"""
        s = np.asarray(s, dtype=complex)
        w0, tc, phi = self.carrier, self.center, self.phase
        plus = np.exp(1j * (phi - w0 * tc)) * self._half_line_gaussian(s - 1j * w0)
        minus = np.exp(-1j * (phi - w0 * tc)) * self._half_line_gaussian(s + 1j * w0)
        return self.amplitude * (plus - minus) / 2j

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ModulatedGaussianPulse':
        return cls(**{k: float(v) for k, v in data.items() if k in cls.__annotations__})


def gaussian_pulse(amplitude: float = 1.0, center: float = 1.0,
                   width: float = 0.1, **_ignored) -> ModulatedGaussianPulse:
    """Plain Gaussian: zero carrier with a quarter-period phase"""
    return ModulatedGaussianPulse(amplitude=amplitude, center=center,
                                  width=width, carrier=0.0, phase=np.pi / 2)


PULSE_REGISTRY = {
    'gaussian': gaussian_pulse,
    'gaussian_modulated_sine': ModulatedGaussianPulse,
}


def get_pulse(shape: str = 'gaussian', **kwargs) -> ModulatedGaussianPulse:
    """
    Factory function for pulse profiles
    """
    pulse_factory = PULSE_REGISTRY.get(shape)
    if not pulse_factory:
        raise IncidentFieldError(f"Unsupported pulse shape: {shape}")
    pulse = pulse_factory(**kwargs)
    logger.debug(f"Built {shape} pulse: center={pulse.center}, width={pulse.width}")
    return pulse
