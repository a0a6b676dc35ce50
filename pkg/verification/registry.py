"""
Registry of verified properties, one entry per invariant of every package.
"""

import importlib
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List

logger = logging.getLogger(__name__)

EXPECTED_PROPERTIES = {
    'core_model': (
        'frequency_right_half_plane',
        'incident_causality',
        'incident_conjugation',
        'pulse_laplace_oracle',
    ),
    'mesh': (
        'surface_orientation',
        'refinement_invariants',
        'boundary_map_roundtrip',
    ),
    'laplace_bio': (
        'uniform_shell_oracle',
        'v_positivity',
        'v_coercivity_scaling',
        'v_bound_scaling',
        'bio_conjugation',
        'calderon_first_refinement',
        'calderon_second_identity',
    ),
    'elastic_fem': (
        'fem_energy_identity',
        'fem_norm_sandwich',
        'rigid_body_kernel',
    ),
    'coupled_solver': (
        'structural_zeros',
        'skew_coupling',
        'solve_conjugate_symmetry',
        'operator_growth',
        'factorization_residual',
        'strong_ellipticity',
        'solution_amplification',
        'schur_coercivity',
    ),
    'cq_engine': (
        'cq_causality',
        'cq_conjugate_economy',
        'cq_linearity',
        'cq_growth_shape',
        'cq_order',
        'contour_inversion_oracle',
    ),
    'field_eval': (
        'reconstruction_linearity',
        'interior_null_field',
        'end_to_end_causality',
        'energy_decay',
    ),
    'verify_suite': (
        'solution_growth',
        'calderon_sign_sabotage',
        'frequency_guard',
        'registry_completeness',
    ),
    'cli_pipeline': (
        'deterministic_outputs',
    ),
}


@dataclass(frozen=True)
class PropertySpec:
    name: str
    module: str
    func: Callable
    asserted: bool = True


_REGISTRATIONS: List[PropertySpec] = []


def register(name: str, module: str, asserted: bool = True):
    """Decorator adding a check function to the registry"""
    def decorator(func):
        _REGISTRATIONS.append(PropertySpec(name, module, func, asserted))
        return func
    return decorator


def load_checks() -> None:
    importlib.import_module('verification.checks')


def registered() -> Dict[str, PropertySpec]:
    load_checks()
    return {spec.name: spec for spec in _REGISTRATIONS}


def check_completeness(registrations: List[PropertySpec] = None) -> List[str]:
    """
    Every expected property registered exactly once under its module, and
    nothing registered that is not expected. Returns the problems found.
    """
    if registrations is None:
        load_checks()
        registrations = _REGISTRATIONS
    counts = Counter(spec.name for spec in registrations)
    modules = {spec.name: spec.module for spec in registrations}
    problems = []
    expected = {}
    for module, names in EXPECTED_PROPERTIES.items():
        for name in names:
            expected[name] = module
    for name, module in expected.items():
        if counts[name] != 1:
            problems.append(f"{name} registered {counts[name]} time(s)")
        elif modules[name] != module:
            problems.append(f"{name} registered under {modules[name]}, expected {module}")
    for name in counts:
        if name not in expected:
            problems.append(f"{name} is registered but not expected")
    return problems
