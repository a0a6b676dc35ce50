"""
Time grid and Laplace-domain sample points of convolution quadrature.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List

import numpy as np

from model.errors import GridConfigError
from model.frequency import ComplexFrequency

logger = logging.getLogger(__name__)


def _bdf2(zeta):
    return 1.5 - 2.0 * zeta + 0.5 * zeta ** 2


def _backward_euler(zeta):
    return 1.0 - zeta


SCHEMES: Dict[str, Callable] = {
    'bdf2': _bdf2,
    'backward_euler': _backward_euler,
}

SCHEME_ORDER = {'bdf2': 2, 'backward_euler': 1}


@dataclass(frozen=True)
class CQGrid:
    """
    N uniform steps of size dt = T / N; the transform uses N + 1 samples
    on a circle of radius lambda = eps_cq ** (1 / N).
    """
    horizon: float = 4.0
    steps: int = 128
    scheme: str = 'bdf2'
    eps_cq: float = 1e-10
    dt: float = field(init=False)

    def __post_init__(self):
        errors = []
        if not (self.horizon > 0 and np.isfinite(self.horizon)):
            errors.append(f"horizon must be positive, got {self.horizon}")
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 2:
            errors.append(f"steps must be an integer >= 2, got {self.steps}")
        elif self.steps & (self.steps - 1):
            errors.append(f"steps must be a power of two, got {self.steps}")
        if self.scheme not in SCHEMES:
            errors.append(f"unknown scheme '{self.scheme}', available: {sorted(SCHEMES)}")
        if not 0.0 < self.eps_cq < 1.0:
            errors.append(f"eps_cq must lie in (0, 1), got {self.eps_cq}")
        if errors:
            raise GridConfigError('; '.join(errors))
        object.__setattr__(self, 'steps', int(self.steps))
        object.__setattr__(self, 'dt', self.horizon / self.steps)

    @property
    def length(self) -> int:
        """Transform length N + 1"""
        return self.steps + 1

    @property
    def radius(self) -> float:
        return self.eps_cq ** (1.0 / self.steps)

    @property
    def order(self) -> int:
        return SCHEME_ORDER[self.scheme]

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.length)

    @property
    def n_frequencies(self) -> int:
        """Frequencies actually solved: l = 0 .. (N+1) // 2"""
        return self.length // 2 + 1

    def delta(self, zeta):
        return SCHEMES[self.scheme](zeta)

    def scaling(self) -> np.ndarray:
        """radius ** n for n = 0 .. N"""
        return self.radius ** np.arange(self.length)

    def mirror_indices(self) -> np.ndarray:
        """Half-spectrum index L - l of every row l = L // 2 + 1 .. N, in row order"""
        return np.arange(self.length - self.n_frequencies, 0, -1)

    def sample_points(self) -> np.ndarray:
        """s_l = delta(radius * exp(-2 pi i l / (N+1))) / dt on the half spectrum"""
        l = np.arange(self.n_frequencies)
        zeta = self.radius * np.exp(-2j * np.pi * l / self.length)
        return self.delta(zeta) / self.dt

    def frequencies(self) -> List[ComplexFrequency]:
        points = self.sample_points()
        bad = np.flatnonzero(~(points.real > 0))
        if bad.size:
            raise GridConfigError(f"sample point {bad[0]} has Re s <= 0: {points[bad[0]]}")
        return [ComplexFrequency(complex(p)) for p in points]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CQGrid':
        allowed = {'horizon', 'steps', 'scheme', 'eps_cq'}
        return cls(**{k: v for k, v in data.items() if k in allowed})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def grid_frequencies(T: float, N: int, scheme: str = 'bdf2', eps_cq: float = 1e-10) -> List[ComplexFrequency]:
    return CQGrid(T, N, scheme, eps_cq).frequencies()
