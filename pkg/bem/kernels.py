"""
Fundamental solution of -Laplace + kappa^2 and its normal derivatives.
"""

from dataclasses import dataclass

import numpy as np

from model.errors import FrequencyError
from model.frequency import ComplexFrequency

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class KernelParams:
    """Wavenumber kappa = s / c of the transformed wave operator"""
    kappa: complex

    def __post_init__(self):
        kappa = complex(self.kappa)
        if not np.isfinite(kappa) or kappa.real <= 0:
            raise FrequencyError(f"wavenumber must have positive real part, got {kappa}", module='laplace_bio')
        object.__setattr__(self, 'kappa', kappa)

    @classmethod
    def from_frequency(cls, frequency: ComplexFrequency, sound_speed: float = 1.0) -> 'KernelParams':
        return cls(frequency.wavenumber(sound_speed))

    def single_layer(self, r: np.ndarray) -> np.ndarray:
        """E(r) = exp(-kappa r) / (4 pi r)"""
        return np.exp(-self.kappa * r) / (FOUR_PI * r)

    def gradient_factor(self, r: np.ndarray) -> np.ndarray:
        """
        F(r) with grad_y E(x, y) = F(r) (x - y), so that
        dE/dn_y = F (x - y).n_y and dE/dn_x = -F (x - y).n_x
        """
        kr = self.kappa * r
        return np.exp(-kr) * (1.0 + kr) / (FOUR_PI * r ** 3)

    def evaluate(self, r: np.ndarray):
        """Both factors sharing a single exponential"""
        kr = self.kappa * r
        decay = np.exp(-kr) / (FOUR_PI * r)
        return decay, decay * (1.0 + kr) / r ** 2


def uniform_shell_potential(kappa: complex, radius: float = 1.0) -> complex:
    """
    Single layer potential of unit density on a sphere, evaluated on the
    sphere: R exp(-kappa R) sinh(kappa R) / (kappa R).
    """
    kr = complex(kappa) * radius
    if abs(kr) < 1e-8:
        return radius
    return radius * np.exp(-kr) * np.sinh(kr) / kr
