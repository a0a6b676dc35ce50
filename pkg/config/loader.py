"""
Configuration loader for YAML and key = value files plus environment variables
"""

import configparser
import logging
import os
import re
from typing import Any, Dict, Optional

import yaml

from .defaults import get_default_config
from .models import RunConfig
from .validator import ConfigValidationError, ConfigValidator

logger = logging.getLogger(__name__)

YAML_SUFFIXES = ('.yaml', '.yml')
KEY_VALUE_SUFFIXES = ('.cfg', '.ini', '.conf')


class ConfigYamlLoader(yaml.SafeLoader):
    """SafeLoader that also reads 1e-8 and 5E3 (no decimal point) as floats"""


ConfigYamlLoader.add_implicit_resolver(
    'tag:yaml.org,2002:float',
    re.compile(r'''^[-+]?(?:[0-9][0-9_]*)(?:\.[0-9_]*)?[eE][-+]?[0-9]+$'''),
    list('-+0123456789'),
)


def load_yaml(stream) -> Any:
    return yaml.load(stream, Loader=ConfigYamlLoader)


class ConfigLoader:
    """
    Loads and validates configuration from multiple sources
    """

    env_mappings = {
        'FSI_THREADS': ['run', 'threads'],
        'FSI_SEED': ['run', 'seed'],
        'FSI_MODE': ['run', 'mode'],
        'FSI_LOG_LEVEL': ['logging', 'level'],
        'FSI_OUTPUT_DIR': ['output', 'directory'],
    }

    def __init__(self):
        self.validator = ConfigValidator()

    def load(self, config_path: Optional[str] = None,
             overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
        """
        Load configuration: defaults, then the file, then environment
        variables, then explicit overrides.

        Args:
            config_path: Path to a .yaml/.yml or .cfg/.ini/.conf file
            overrides: Nested dictionary applied last (CLI flags)

        Returns:
            Validated RunConfig instance
        """
        config_dict = get_default_config()

        if config_path:
            file_config = self._load_from_file(config_path)
            config_dict = self._merge_configs(config_dict, file_config)

        env_var_config = self._load_from_env_vars()
        config_dict = self._merge_configs(config_dict, env_var_config)

        if overrides:
            config_dict = self._merge_configs(config_dict, overrides)

        self._resolve_relative_paths(config_dict, config_path)
        self.validator.validate(config_dict)

        config = RunConfig.from_dict(config_dict)
        logger.debug(f"Loaded configuration from {config_path or 'defaults'}")
        return config

    def _load_from_file(self, file_path: str) -> Dict[str, Any]:
        """Load configuration from a YAML or key = value file"""
        if not os.path.exists(file_path):
            raise ConfigValidationError(f"Configuration file not found: {file_path}")
        try:
            if file_path.endswith(YAML_SUFFIXES):
                with open(file_path, 'r') as f:
                    data = load_yaml(f) or {}
            elif file_path.endswith(KEY_VALUE_SUFFIXES):
                data = self._load_key_value(file_path)
            else:
                raise ConfigValidationError(f"Unsupported config file format: {file_path}")
        except (yaml.YAMLError, configparser.Error) as e:
            raise ConfigValidationError(f"Cannot parse {file_path}: {e}")
        if not isinstance(data, dict):
            raise ConfigValidationError(f"Top level of {file_path} must be a mapping of sections")
        return data

    def _load_key_value(self, file_path: str) -> Dict[str, Any]:
        """[section] headers with key = value lines; values parsed as YAML scalars"""
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str
        with open(file_path, 'r') as f:
            parser.read_file(f)
        return {
            section: {key: self._coerce(value) for key, value in parser.items(section)}
            for section in parser.sections()
        }

    def _coerce(self, value: str) -> Any:
        try:
            return load_yaml(value)
        except yaml.YAMLError:
            return value

    def _load_from_env_vars(self) -> Dict[str, Any]:
        """Load configuration from environment variables"""
        config = {}
        for env_var, config_path in self.env_mappings.items():
            value = os.getenv(env_var)
            if value is not None and value != '':
                converted_value = self._convert_env_value(value, config_path)
                self._set_nested_value(config, config_path, converted_value)
        return config

    def _convert_env_value(self, value: str, config_path: list) -> Any:
        """Convert environment variable string to appropriate type"""
        if config_path[-1] in ('threads', 'seed'):
            try:
                return int(value)
            except ValueError:
                return value
        return value

    def _set_nested_value(self, config: Dict[str, Any], path: list, value: Any):
        """Set a nested configuration value"""
        current = config
        for key in path[:-1]:
            if key not in current:
                current[key] = {}
            current = current[key]
        current[path[-1]] = value

    def _merge_configs(self, base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """Deep merge two configuration dictionaries"""
        result = base.copy()

        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value

        return result

    def _resolve_relative_paths(self, config: Dict[str, Any], config_path: Optional[str]):
        """Mesh files are relative to the directory of the config file"""
        if not config_path:
            return
        base = os.path.dirname(os.path.abspath(config_path))
        mesh = config.get('mesh') or {}
        for key in ('surface_file', 'volume_file'):
            value = mesh.get(key)
            if isinstance(value, str) and value and not os.path.isabs(value):
                mesh[key] = os.path.join(base, value)
