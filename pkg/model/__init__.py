"""
Core model: physical constants, complex frequencies, incident fields and
causal time signals shared by every other package.
"""

from .errors import FsiError
from .material import MaterialSystem
from .frequency import ComplexFrequency, as_frequency
from .pulse import ModulatedGaussianPulse, PULSE_REGISTRY, get_pulse
from .incident import (
    IncidentField,
    PlaneWave,
    PointSource,
    INCIDENT_REGISTRY,
    get_incident,
    eval_incident_trace,
    laplace_of_incident,
)
from .signal import TimeSignal

__all__ = [
    'FsiError',
    'MaterialSystem',
    'ComplexFrequency',
    'as_frequency',
    'ModulatedGaussianPulse',
    'PULSE_REGISTRY',
    'get_pulse',
    'IncidentField',
    'PlaneWave',
    'PointSource',
    'INCIDENT_REGISTRY',
    'get_incident',
    'eval_incident_trace',
    'laplace_of_incident',
    'TimeSignal',
]
