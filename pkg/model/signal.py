"""
Uniformly sampled causal time series.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import FsiError


@dataclass(frozen=True, eq=False)
class TimeSignal:
    """
    Samples at t_n = n dt, n = 0..N. The leading axis is time; trailing axes
    hold scalar, vector or coefficient-vector values. With ``causal`` set the
    t = 0 sample must vanish relative to the peak.
    """
    dt: float
    samples: np.ndarray
    causal: bool = True

    def __post_init__(self):
        samples = np.array(self.samples, copy=True)
        if samples.ndim == 0 or samples.shape[0] < 2:
            raise FsiError("a time signal needs at least two samples")
        if not self.dt > 0:
            raise FsiError(f"time step must be positive, got {self.dt}")
        if not np.all(np.isfinite(samples)):
            raise FsiError("time signal contains non-finite samples")
        if self.causal:
            peak = float(np.abs(samples).max())
            if peak > 0 and float(np.abs(samples[0]).max()) > 1e-12 * peak:
                raise FsiError("causal signal does not vanish at t = 0")
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)

    @property
    def steps(self) -> int:
        return self.samples.shape[0] - 1

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.samples.shape[0])

    @property
    def peak(self) -> float:
        return float(np.abs(self.samples).max())

    def scaled(self, factor) -> 'TimeSignal':
        return TimeSignal(self.dt, factor * self.samples, self.causal)

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], dt: float,
                      steps: int, causal: bool = True) -> 'TimeSignal':
        times = dt * np.arange(steps + 1)
        return cls(dt, np.asarray(func(times)), causal)
