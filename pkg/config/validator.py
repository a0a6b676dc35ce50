"""
Configuration validation with detailed error messages
"""

import logging
import os
from typing import Any, Dict, List

from model.errors import FsiError

logger = logging.getLogger(__name__)

MODES = ('solve', 'verify', 'both')
SCHEMES = ('bdf2', 'backward_euler')
INCIDENT_KINDS = ('plane_wave', 'point_source')
PULSE_SHAPES = ('gaussian', 'gaussian_modulated_sine')
PRESSURE_FIELDS = ('scattered', 'total')
MIN_ORDERS = {'regular_order': 1, 'near_order': 2, 'singular_order': 2}


class ConfigValidationError(FsiError):
    """Raised when configuration validation fails"""
    default_module = 'config'


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_vector(value) -> bool:
    return isinstance(value, (list, tuple)) and len(value) == 3 and all(_is_number(v) for v in value)


class ConfigValidator:
    """Validates configuration dictionaries"""

    def validate(self, config: Dict[str, Any]) -> None:
        """
        Validate complete configuration

        Args:
            config: Configuration dictionary to validate

        Raises:
            ConfigValidationError: If validation fails
        """
        errors = []
        checks = {
            'run': self._validate_run,
            'material': self._validate_material,
            'mesh': self._validate_mesh,
            'pulse': self._validate_pulse,
            'grid': self._validate_grid,
            'quadrature': self._validate_quadrature,
            'observation': self._validate_observation,
            'output': self._validate_output,
            'verify': self._validate_verify,
            'logging': self._validate_logging,
        }
        for section, check in checks.items():
            if section in config:
                if not isinstance(config[section], dict):
                    errors.append(f"{section} must be a section of key = value pairs")
                else:
                    errors.extend(check(config[section]))

        if errors:
            raise ConfigValidationError("Configuration validation failed:\n" + "\n".join(errors))

    def _validate_run(self, run: Dict[str, Any]) -> List[str]:
        errors = []
        if run.get('mode', 'solve') not in MODES:
            errors.append(f"run.mode must be one of: {', '.join(MODES)}")
        threads = run.get('threads')
        if threads is not None and (not _is_int(threads) or threads < 1):
            errors.append("run.threads must be a positive integer")
        if not _is_int(run.get('seed', 0)) or run.get('seed', 0) < 0:
            errors.append("run.seed must be a non-negative integer")
        return errors

    def _validate_material(self, material: Dict[str, Any]) -> List[str]:
        errors = []
        for key in ('rho_e', 'lame_lambda', 'lame_mu', 'rho_0', 'sound_speed', 'horizon'):
            if key in material and not _is_number(material[key]):
                errors.append(f"material.{key} must be a number")
        if errors:
            return errors
        mu = material.get('lame_mu', 1.0)
        lam = material.get('lame_lambda', 0.0)
        if mu <= 0:
            errors.append("material.lame_mu must be positive")
        if 3 * lam + 2 * mu < 0:
            errors.append("material: 3*lame_lambda + 2*lame_mu must be non-negative")
        for key in ('rho_e', 'rho_0', 'sound_speed', 'horizon'):
            if key in material and material[key] <= 0:
                errors.append(f"material.{key} must be positive")
        return errors

    def _validate_mesh(self, mesh: Dict[str, Any]) -> List[str]:
        errors = []
        level = mesh.get('sphere_level', 0)
        if not _is_int(level) or level < 0:
            errors.append("mesh.sphere_level must be a non-negative integer")
        shells = mesh.get('shells', 1)
        if not _is_int(shells) or shells < 1:
            errors.append("mesh.shells must be a positive integer")
        if not _is_number(mesh.get('radius', 1.0)) or mesh.get('radius', 1.0) <= 0:
            errors.append("mesh.radius must be positive")
        for key in ('surface_file', 'volume_file'):
            path = mesh.get(key)
            if path and not os.path.exists(path):
                errors.append(f"mesh.{key} does not exist: {path}")
        if mesh.get('surface_file') and not mesh.get('volume_file'):
            errors.append("mesh.surface_file needs a matching mesh.volume_file")
        return errors

    def _validate_pulse(self, pulse: Dict[str, Any]) -> List[str]:
        errors = []
        kind = pulse.get('kind', 'plane_wave')
        if kind not in INCIDENT_KINDS:
            errors.append(f"pulse.kind must be one of: {', '.join(INCIDENT_KINDS)}")
        if pulse.get('shape', 'gaussian') not in PULSE_SHAPES:
            errors.append(f"pulse.shape must be one of: {', '.join(PULSE_SHAPES)}")
        width = pulse.get('width', 1.0)
        if not _is_number(width) or width <= 0:
            errors.append("pulse.width must be positive")
        for key in ('amplitude', 'center', 'carrier', 'phase'):
            if key in pulse and not _is_number(pulse[key]):
                errors.append(f"pulse.{key} must be a number")
        if kind == 'plane_wave':
            direction = pulse.get('direction')
            if not _is_vector(direction) or not any(direction):
                errors.append("pulse.direction must be a non-zero [x, y, z] vector")
        if kind == 'point_source' and not _is_vector(pulse.get('source')):
            errors.append("pulse.source must be an [x, y, z] point")
        return errors

    def _validate_grid(self, grid: Dict[str, Any]) -> List[str]:
        errors = []
        steps = grid.get('steps', 2)
        if not _is_int(steps) or steps < 2 or steps & (steps - 1):
            errors.append(f"grid.steps must be a power of two >= 2, got {steps}")
        if grid.get('scheme', 'bdf2') not in SCHEMES:
            errors.append(f"grid.scheme must be one of: {', '.join(SCHEMES)}")
        eps = grid.get('eps_cq', 1e-10)
        if not _is_number(eps) or not 0 < eps < 1:
            errors.append("grid.eps_cq must lie strictly between 0 and 1")
        return errors

    def _validate_quadrature(self, quadrature: Dict[str, Any]) -> List[str]:
        errors = []
        for key, minimum in MIN_ORDERS.items():
            value = quadrature.get(key, minimum)
            if not _is_int(value) or value < minimum:
                errors.append(f"quadrature.{key} must be an integer >= {minimum}")
        if not _is_number(quadrature.get('near_factor', 1.0)) or quadrature.get('near_factor', 1.0) <= 0:
            errors.append("quadrature.near_factor must be positive")
        if not _is_number(quadrature.get('decay_cutoff', 1.0)) or quadrature.get('decay_cutoff', 1.0) <= 0:
            errors.append("quadrature.decay_cutoff must be positive")
        return errors

    def _validate_observation(self, observation: Dict[str, Any]) -> List[str]:
        errors = []
        for key in ('exterior_points', 'interior_points'):
            points = observation.get(key) or []
            if not isinstance(points, list) or not all(_is_vector(p) for p in points):
                errors.append(f"observation.{key} must be a list of [x, y, z] points")
        for key in ('surface_probes', 'volume_probes'):
            probes = observation.get(key) or []
            if not isinstance(probes, list) or not all(_is_int(p) and p >= 0 for p in probes):
                errors.append(f"observation.{key} must be a list of non-negative vertex indices")
        if observation.get('pressure_field', 'scattered') not in PRESSURE_FIELDS:
            errors.append(f"observation.pressure_field must be one of: {', '.join(PRESSURE_FIELDS)}")
        return errors

    def _validate_output(self, output: Dict[str, Any]) -> List[str]:
        errors = []
        directory = output.get('directory')
        if directory and not os.path.isdir(directory):
            try:
                os.makedirs(directory)
            except Exception as e:
                errors.append(f"Cannot create output directory {directory}: {e}")
        snapshots = output.get('snapshots') or []
        if not isinstance(snapshots, list) or not all(_is_int(n) and n >= 0 for n in snapshots):
            errors.append("output.snapshots must be a list of non-negative step indices")
        return errors

    def _validate_verify(self, verify: Dict[str, Any]) -> List[str]:
        errors = []
        levels = verify.get('levels', [])
        if not isinstance(levels, list) or len(levels) < 2 or not all(_is_int(k) and k >= 0 for k in levels):
            errors.append("verify.levels must list at least two sphere levels")
        shell_levels = verify.get('shell_levels', [2, 3, 4])
        if (not isinstance(shell_levels, list) or len(shell_levels) < 2
                or not all(_is_int(k) and k >= 0 for k in shell_levels)):
            errors.append("verify.shell_levels must list at least two sphere levels")
        if not _is_int(verify.get('samples', 1)) or verify.get('samples', 1) < 1:
            errors.append("verify.samples must be a positive integer")
        horizons = verify.get('horizons', [])
        if not isinstance(horizons, list) or len(horizons) < 2 or not all(_is_number(h) and h > 0 for h in horizons):
            errors.append("verify.horizons must list at least two positive horizons")
        steps = verify.get('steps_per_unit', 32)
        if not _is_int(steps) or steps < 2 or steps & (steps - 1):
            errors.append("verify.steps_per_unit must be a power of two")
        for key in ('frequencies', 'sigmas'):
            values = verify.get(key, [])
            if not isinstance(values, list) or not values or not all(_is_number(v) and v > 0 for v in values):
                errors.append(f"verify.{key} must be a list of positive numbers")
        return errors

    def _validate_logging(self, logging_config: Dict[str, Any]) -> List[str]:
        """Validate logging configuration"""
        errors = []

        level = str(logging_config.get('level', 'INFO'))
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if level.upper() not in valid_levels:
            errors.append(f"logging.level must be one of: {', '.join(valid_levels)}")

        file_path = logging_config.get('file_path')
        if file_path:
            log_dir = os.path.dirname(os.path.abspath(file_path))
            if not os.path.exists(log_dir):
                try:
                    os.makedirs(log_dir)
                except Exception as e:
                    errors.append(f"Cannot create log directory {log_dir}: {e}")

        return errors
