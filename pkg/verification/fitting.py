"""
Least-squares fits of growth exponents and convergence orders.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from model.errors import FitError
from model.frequency import ComplexFrequency

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 4


@dataclass(frozen=True)
class PowerFit:
    """value ~ constant * x ** exponent"""
    exponent: float
    constant: float
    r_squared: float
    samples: int

    def predict(self, x) -> np.ndarray:
        return self.constant * np.asarray(x, dtype=float) ** self.exponent


def fit_power_law(x: Sequence[float], y: Sequence[float], min_samples: int = 2) -> PowerFit:
    """
    Slope of log y against log x.

    Raises:
        FitError: too few samples, non-positive or non-finite values, or
            coinciding abscissae
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < min_samples:
        raise FitError(f"need at least {min_samples} samples, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise FitError("non-finite sample in fit")
    if np.any(x <= 0) or np.any(y <= 0):
        raise FitError("power-law fit needs positive samples")
    if np.unique(x).size < 2:
        raise FitError("all abscissae coincide")
    result = stats.linregress(np.log(x), np.log(y))
    return PowerFit(float(result.slope), float(np.exp(result.intercept)),
                    float(result.rvalue ** 2), int(x.size))


def fit_class_exponent(sampler: Callable[[ComplexFrequency], float], sigma: float,
                       moduli: Sequence[float]) -> PowerFit:
    """
    Fitted mu in ||F(s)|| <= C |s|^mu along the ray Re s = sigma.

    Raises:
        FitError: fewer than four magnitudes or degenerate samples
    """
    moduli = np.asarray(moduli, dtype=float)
    if moduli.size < MIN_FIT_SAMPLES:
        raise FitError(f"need at least {MIN_FIT_SAMPLES} sample magnitudes, got {moduli.size}")
    values = [float(sampler(ComplexFrequency.on_ray(sigma, max(m, sigma)))) for m in moduli]
    fit = fit_power_law(np.maximum(moduli, sigma), values, MIN_FIT_SAMPLES)
    logger.debug(f"Class exponent along sigma={sigma}: mu={fit.exponent:.3f} (R^2={fit.r_squared:.3f})")
    return fit


def reduction_factors(errors: Sequence[float]) -> np.ndarray:
    """errors[k] / errors[k + 1] for successive refinements"""
    errors = np.asarray(errors, dtype=float)
    return errors[:-1] / errors[1:]


def observed_orders(errors: Sequence[float], steps: Sequence[float]) -> np.ndarray:
    """log(e_k / e_{k+1}) / log(n_{k+1} / n_k)"""
    errors = np.asarray(errors, dtype=float)
    steps = np.asarray(steps, dtype=float)
    return np.log(errors[:-1] / errors[1:]) / np.log(steps[1:] / steps[:-1])
