"""
Run assembly and orchestration: builders from configuration, the coupled
time-domain simulation, and (in ``pipeline.runner`` / ``pipeline.cli``)
the command-line pipeline
"""

from .builders import (
    Scenario,
    build_grid,
    build_incident,
    build_material,
    build_observation,
    build_scenario,
    build_settings,
    build_spaces_from_config,
    check_source,
    sphere_spaces,
)
from .simulation import SimulationResult, simulate

__all__ = [
    'Scenario',
    'SimulationResult',
    'build_grid',
    'build_incident',
    'build_material',
    'build_observation',
    'build_scenario',
    'build_settings',
    'build_spaces_from_config',
    'check_source',
    'simulate',
    'sphere_spaces',
]
