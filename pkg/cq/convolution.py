"""
Convolution quadrature by scaled FFT.

With lambda = eps_cq ** (1/N) and L = N + 1:

    g^_l = sum_n lambda^n g_n exp(-2 pi i l n / L)
    u_n  = lambda^-n / L sum_l F(s_l) g^_l exp(2 pi i l n / L)

Real data gives conjugate-symmetric spectra, so only l <= L // 2 is
evaluated and the rest follows by conjugation (rfft / irfft).
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence

import numpy as np

from model.errors import TransferEvaluationError
from model.frequency import ComplexFrequency
from model.signal import TimeSignal
from .grid import CQGrid

logger = logging.getLogger(__name__)


def forward_transform(samples: np.ndarray, grid: CQGrid, full: bool = False) -> np.ndarray:
    """Half spectrum of lambda^n g_n, shape (L // 2 + 1, ...); all L rows when ``full``"""
    samples = np.asarray(samples, dtype=float)
    if samples.shape[0] != grid.length:
        raise ValueError(f"expected {grid.length} samples, got {samples.shape[0]}")
    scale = grid.scaling().reshape((-1,) + (1,) * (samples.ndim - 1))
    if full:
        return np.fft.fft(scale * samples, axis=0)
    return np.fft.rfft(scale * samples, n=grid.length, axis=0)


def inverse_transform(spectrum: np.ndarray, grid: CQGrid) -> np.ndarray:
    """Real time samples u_0 .. u_N from a half spectrum"""
    spectrum = np.asarray(spectrum)
    samples = np.fft.irfft(spectrum, n=grid.length, axis=0)
    unscale = (1.0 / grid.scaling()).reshape((-1,) + (1,) * (samples.ndim - 1))
    return unscale * samples


def reality_residue(spectrum: np.ndarray, grid: CQGrid) -> float:
    """
    max |Im u_n| / max |u_n| after the complex inverse transform of all L
    rows of ``spectrum``. Rows above L // 2 must come from their own
    frequencies, not from conjugating the half spectrum.
    """
    spectrum = np.asarray(spectrum)
    if spectrum.shape[0] != grid.length:
        raise ValueError(f"expected the full spectrum of {grid.length} rows, got {spectrum.shape[0]}")
    unscale = (1.0 / grid.scaling()).reshape((-1,) + (1,) * (spectrum.ndim - 1))
    samples = unscale * np.fft.ifft(spectrum, axis=0)
    peak = np.abs(samples).max()
    return float(np.abs(samples.imag).max() / peak) if peak > 0 else 0.0


def frequency_sweep(func: Callable[[int, ComplexFrequency], object],
                    frequencies: Sequence[ComplexFrequency], threads: int = 1) -> List[object]:
    """
    Evaluate ``func(index, s)`` at every frequency, in parallel when
    threads > 1. Results keep the order of ``frequencies``.

    Raises:
        TransferEvaluationError: carrying the index of the first failing frequency
    """
    def evaluate(index: int):
        try:
            return func(index, frequencies[index])
        except TransferEvaluationError:
            raise
        except Exception as e:
            raise TransferEvaluationError(
                f"transfer evaluation failed at s={frequencies[index].s:.4g}: {e}", index
            ) from e

    started = time.perf_counter()
    indices = range(len(frequencies))
    if threads <= 1:
        results = [evaluate(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, indices))
    logger.info(f"Evaluated {len(frequencies)} frequencies on {max(1, threads)} thread(s) "
                f"in {time.perf_counter() - started:.2f}s")
    return results


def cq_convolve(F, g, grid: CQGrid, threads: int = 1):
    """
    Apply the transfer map F to the causal samples g on ``grid``.

    ``g`` is either a TimeSignal or an array of shape (N + 1, ...) whose
    trailing axes form the data vector passed to F. The result has the same
    container type.
    """
    samples = g.samples if isinstance(g, TimeSignal) else np.asarray(g)
    if isinstance(g, TimeSignal) and not np.isclose(g.dt, grid.dt, rtol=1e-12):
        raise ValueError(f"signal step {g.dt} does not match grid step {grid.dt}")
    spectrum = forward_transform(samples, grid)
    frequencies = grid.frequencies()
    outputs = frequency_sweep(lambda i, s: np.asarray(F(s, spectrum[i])), frequencies, threads)
    result = inverse_transform(np.stack(outputs), grid)
    if isinstance(g, TimeSignal):
        return TimeSignal(grid.dt, result, causal=False)
    return result
