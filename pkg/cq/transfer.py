"""
Laplace-domain transfer operators F(s) applied by convolution quadrature.
"""

import abc
import cmath
import logging
from typing import Callable, Dict

import numpy as np

from model.frequency import ComplexFrequency

logger = logging.getLogger(__name__)


class TransferMap(abc.ABC):
    """
    Abstract base class for a linear map data -> output depending
    analytically on s in the right half-plane.
    """
    name = 'abstract'

    @abc.abstractmethod
    def apply(self, s: ComplexFrequency, data: np.ndarray) -> np.ndarray:
        """Apply F(s) to one transformed data vector"""

    def __call__(self, s: ComplexFrequency, data: np.ndarray) -> np.ndarray:
        return self.apply(s, data)


class ScalarTransfer(TransferMap):
    """Multiplication by a scalar symbol F(s)"""

    def __init__(self, symbol: Callable[[complex], complex], name: str = 'scalar'):
        self.symbol = symbol
        self.name = name

    def apply(self, s, data):
        return self.symbol(complex(s)) * np.asarray(data)

    def __repr__(self) -> str:
        return f"ScalarTransfer({self.name})"


def identity() -> ScalarTransfer:
    return ScalarTransfer(lambda s: 1.0, 'identity')


def integrator() -> ScalarTransfer:
    return ScalarTransfer(lambda s: 1.0 / s, 'integrator')


def differentiator() -> ScalarTransfer:
    return ScalarTransfer(lambda s: s, 'differentiator')


def delay(tau: float) -> ScalarTransfer:
    if tau < 0:
        raise ValueError(f"delay must be non-negative, got {tau}")
    return ScalarTransfer(lambda s: cmath.exp(-s * tau), f'delay({tau:g})')


TRANSFER_REGISTRY: Dict[str, Callable[..., TransferMap]] = {
    'identity': identity,
    'integrator': integrator,
    'differentiator': differentiator,
    'delay': delay,
}


def get_transfer(name: str, **kwargs) -> TransferMap:
    """
    Factory for the built-in scalar transfer maps.

    Raises:
        ValueError: if the name is unknown
    """
    if name not in TRANSFER_REGISTRY:
        raise ValueError(f"Unknown transfer map: {name}. Available: {list(TRANSFER_REGISTRY.keys())}")
    return TRANSFER_REGISTRY[name](**kwargs)
