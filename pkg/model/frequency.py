"""
Points of the open right half-plane where Laplace-domain operators live.
"""

import cmath
from dataclasses import dataclass, field

from .errors import FrequencyError


@dataclass(frozen=True)
class ComplexFrequency:
    """
    A Laplace variable s with Re s > 0 and its derived quantities
    sigma = Re s, sigma_bar = min(1, sigma), theta = Arg s.
    """
    s: complex
    sigma: float = field(init=False)
    sigma_bar: float = field(init=False)
    theta: float = field(init=False)

    def __post_init__(self):
        s = complex(self.s)
        if not (s.real > 0) or not cmath.isfinite(s):
            raise FrequencyError(f"frequency {s} is not in the open right half-plane")
        object.__setattr__(self, 's', s)
        object.__setattr__(self, 'sigma', s.real)
        object.__setattr__(self, 'sigma_bar', min(1.0, s.real))
        object.__setattr__(self, 'theta', cmath.phase(s))

    @property
    def modulus(self) -> float:
        return abs(self.s)

    def conjugate(self) -> 'ComplexFrequency':
        return ComplexFrequency(self.s.conjugate())

    def wavenumber(self, sound_speed: float) -> complex:
        """kappa = s / c of the kernel exp(-kappa r) / (4 pi r)"""
        return self.s / sound_speed

    @classmethod
    def on_ray(cls, sigma: float, modulus: float) -> 'ComplexFrequency':
        """Frequency with the given real part and modulus, Im s >= 0"""
        if modulus < sigma:
            raise FrequencyError(f"|s| = {modulus} is smaller than sigma = {sigma}")
        return cls(complex(sigma, (modulus ** 2 - sigma ** 2) ** 0.5))

    def __complex__(self) -> complex:
        return self.s


def as_frequency(value) -> ComplexFrequency:
    """Accept either a ComplexFrequency or a bare complex number"""
    if isinstance(value, ComplexFrequency):
        return value
    return ComplexFrequency(value)
