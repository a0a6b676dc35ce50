"""
Run configuration: dataclass sections, YAML and key = value loading,
environment overrides and validation
"""

from .loader import ConfigLoader
from .models import (
    RunConfig,
    RunSection,
    MaterialConfig,
    MeshConfig,
    PulseConfig,
    GridConfig,
    QuadratureConfig,
    ObservationConfig,
    OutputConfig,
    VerifyConfig,
    LoggingConfig,
)
from .validator import ConfigValidationError, ConfigValidator

# Global configuration instance
_config = None


def load_config(config_path=None, overrides=None):
    """
    Load configuration from file and environment

    Args:
        config_path (str): Path to configuration file
        overrides (dict): Nested values applied after the environment

    Returns:
        RunConfig: Loaded and validated configuration
    """
    global _config

    if _config is None:
        loader = ConfigLoader()
        _config = loader.load(config_path=config_path, overrides=overrides)

    return _config


def get_config():
    """Get the current configuration instance"""
    global _config

    if _config is None:
        _config = load_config()

    return _config


def reload_config(config_path=None, overrides=None):
    """Force reload configuration"""
    global _config
    _config = None
    return load_config(config_path=config_path, overrides=overrides)


__all__ = [
    'load_config',
    'get_config',
    'reload_config',
    'ConfigLoader',
    'ConfigValidator',
    'ConfigValidationError',
    'RunConfig',
    'RunSection',
    'MaterialConfig',
    'MeshConfig',
    'PulseConfig',
    'GridConfig',
    'QuadratureConfig',
    'ObservationConfig',
    'OutputConfig',
    'VerifyConfig',
    'LoggingConfig',
]
