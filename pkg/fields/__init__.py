"""
Time-domain outputs: probe traces of displacement, potential and pressure,
the interior null field and the elastic energy history.
"""

from .observation import ObservationSet, PROBE_KINDS, winding_number, arrival_time, precursor_ratio
from .reconstruct import ProbeTrace, SolutionTrace, PRESSURE_FIELDS, reconstruct
from .energy import energy_report, trailing_decay, pulse_passed_time

__all__ = [
    'ObservationSet',
    'PROBE_KINDS',
    'winding_number',
    'arrival_time',
    'precursor_ratio',
    'ProbeTrace',
    'SolutionTrace',
    'PRESSURE_FIELDS',
    'reconstruct',
    'energy_report',
    'trailing_decay',
    'pulse_passed_time',
]
