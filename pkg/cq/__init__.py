"""
Convolution quadrature engine: time grid, transfer maps, scaled FFT
convolution and contour inversion of Laplace transforms.
"""

from .grid import CQGrid, SCHEMES, grid_frequencies
from .transfer import TransferMap, ScalarTransfer, TRANSFER_REGISTRY, get_transfer
from .convolution import (
    forward_transform, inverse_transform, reality_residue, frequency_sweep, cq_convolve,
)
from .inversion import contour_invert

__all__ = [
    'CQGrid',
    'SCHEMES',
    'grid_frequencies',
    'TransferMap',
    'ScalarTransfer',
    'TRANSFER_REGISTRY',
    'get_transfer',
    'forward_transform',
    'inverse_transform',
    'reality_residue',
    'frequency_sweep',
    'cq_convolve',
    'contour_invert',
]
