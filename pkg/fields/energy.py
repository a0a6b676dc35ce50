"""
Elastic energy of the reconstructed displacement.
"""

import logging
from typing import Dict

import numpy as np
import pandas as pd

from model.errors import ObservationError

logger = logging.getLogger(__name__)

MONOTONE_TOLERANCE = 0.05


def energy_report(trace, fem) -> pd.DataFrame:
    """
    Kinetic, strain and total energy 1/2 (v^T rho_e M v + u^T K u) at every step.

    Raises:
        ObservationError: if the trace carries no volume displacement
    """
    if trace.displacement is None or trace.velocity is None:
        raise ObservationError("energy report needs the volume displacement trace")
    u = trace.displacement.samples
    v = trace.velocity.samples
    kinetic = 0.5 * fem.material.rho_e * np.einsum('ni,ni->n', v, (fem.mass @ v.T).T)
    strain = 0.5 * np.einsum('ni,ni->n', u, (fem.stiffness @ u.T).T)
    return pd.DataFrame({
        't': trace.displacement.times,
        'kinetic': kinetic,
        'strain': strain,
        'total': kinetic + strain,
    })


def trailing_decay(frame: pd.DataFrame, start: float,
                   tolerance: float = MONOTONE_TOLERANCE) -> Dict[str, float]:
    """
    Largest step-to-step increase of the total energy after ``start``,
    relative to the window peak. Logs a warning when it exceeds ``tolerance``.
    """
    window = frame.loc[frame['t'] >= start, 'total'].to_numpy()
    if window.size < 2 or window.max() <= 0:
        return {'start': start, 'max_increase': 0.0, 'monotone': True, 'samples': int(window.size)}
    increase = float(np.max(np.diff(window)) / window.max())
    monotone = increase <= tolerance
    if not monotone:
        logger.warning(f"Elastic energy grows by {increase:.1%} of its peak after t={start:.3g}")
    return {'start': start, 'max_increase': max(increase, 0.0), 'monotone': monotone,
            'samples': int(window.size)}


def pulse_passed_time(incident, mesh) -> float:
    """Time after which the incident pulse has left every point of Gamma"""
    pulse = incident.pulse
    tail = pulse.center + (pulse.center - pulse.support_start)
    return float(tail + np.max(incident.delay(mesh.vertices)))
