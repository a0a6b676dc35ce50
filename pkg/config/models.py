"""
Run configuration data models
"""

import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class RunSection:
    """What to run and how many threads the frequency sweep may use"""
    mode: str = 'solve'
    threads: Optional[int] = None
    seed: int = 20240611

    def __post_init__(self):
        if not self.threads:
            self.threads = os.cpu_count() or 1

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunSection':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class MaterialConfig:
    """Nondimensional steel-like solid in a water-like fluid"""
    rho_e: float = 7.85
    lame_lambda: float = 52.5
    lame_mu: float = 35.2
    rho_0: float = 1.0
    sound_speed: float = 1.0
    horizon: float = 4.0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MaterialConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class MeshConfig:
    sphere_level: int = 2
    shells: int = 2
    radius: float = 1.0
    surface_file: Optional[str] = None
    volume_file: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MeshConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class PulseConfig:
    """Incident field kind and the parameters of its pulse profile"""
    kind: str = 'plane_wave'
    shape: str = 'gaussian_modulated_sine'
    direction: List[float] = field(default_factory=lambda: [1.0, 0.0, 0.0])
    source: List[float] = field(default_factory=lambda: [-3.0, 0.0, 0.0])
    amplitude: float = 1.0
    center: float = 1.9
    width: float = 0.15
    carrier: float = 6.0
    phase: float = 1.5707963267948966

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PulseConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})

    def pulse_parameters(self) -> Dict[str, float]:
        params = {'amplitude': self.amplitude, 'center': self.center, 'width': self.width}
        if self.shape != 'gaussian':
            params.update(carrier=self.carrier, phase=self.phase)
        return params


@dataclass
class GridConfig:
    steps: int = 128
    scheme: str = 'bdf2'
    eps_cq: float = 1e-10

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GridConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class QuadratureConfig:
    regular_order: int = 4
    near_order: int = 5
    singular_order: int = 3
    near_factor: float = 3.0
    decay_cutoff: float = 46.0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'QuadratureConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class ObservationConfig:
    exterior_points: List[List[float]] = field(default_factory=lambda: [[0.0, 0.0, 2.0]])
    interior_points: List[List[float]] = field(default_factory=lambda: [[0.2, 0.1, -0.1]])
    surface_probes: List[int] = field(default_factory=lambda: [0, 1])
    volume_probes: List[int] = field(default_factory=lambda: [0])
    pressure_field: str = 'scattered'

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ObservationConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class OutputConfig:
    directory: str = 'output'
    snapshots: List[int] = field(default_factory=list)
    dump_matrices: bool = False

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'OutputConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class VerifyConfig:
    """Meshes, sample counts and grids used by the verification suite"""
    level: int = 2
    levels: List[int] = field(default_factory=lambda: [1, 2, 3])
    # refinement levels of the uniform-shell oracle
    shell_levels: List[int] = field(default_factory=lambda: [2, 3, 4])
    samples: int = 100
    horizons: List[float] = field(default_factory=lambda: [1.0, 2.0, 4.0])
    steps_per_unit: int = 32
    # |s| moduli sampled on every ray Re s = sigma
    frequencies: List[float] = field(default_factory=lambda: [1.0, 5.0, 20.0])
    sigmas: List[float] = field(default_factory=lambda: [0.5, 1.0, 2.0])

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'VerifyConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


@dataclass
class LoggingConfig:
    """Logging configuration"""
    level: str = 'INFO'
    format: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    file_path: Optional[str] = None
    max_file_size: str = '10MB'
    backup_count: int = 5

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LoggingConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})


SECTIONS = {
    'run': RunSection,
    'material': MaterialConfig,
    'mesh': MeshConfig,
    'pulse': PulseConfig,
    'grid': GridConfig,
    'quadrature': QuadratureConfig,
    'observation': ObservationConfig,
    'output': OutputConfig,
    'verify': VerifyConfig,
    'logging': LoggingConfig,
}


@dataclass
class RunConfig:
    """Main configuration class containing every section"""
    run: RunSection = field(default_factory=RunSection)
    material: MaterialConfig = field(default_factory=MaterialConfig)
    mesh: MeshConfig = field(default_factory=MeshConfig)
    pulse: PulseConfig = field(default_factory=PulseConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    observation: ObservationConfig = field(default_factory=ObservationConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """Create configuration from dictionary"""
        config = cls()
        for name, section_cls in SECTIONS.items():
            if isinstance(data.get(name), dict):
                setattr(config, name, section_cls.from_dict(data[name]))
        return config

    def to_dict(self) -> Dict[str, Any]:
        return {name: asdict(getattr(self, name)) for name in SECTIONS}

    def setup_logging(self):
        """Setup logging based on configuration"""
        level = getattr(logging, self.logging.level.upper(), logging.INFO)

        handlers = []

        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter(self.logging.format))
        handlers.append(console_handler)

        if self.logging.file_path:
            from logging.handlers import RotatingFileHandler
            file_handler = RotatingFileHandler(
                self.logging.file_path,
                maxBytes=self._parse_size(self.logging.max_file_size),
                backupCount=self.logging.backup_count
            )
            file_handler.setFormatter(logging.Formatter(self.logging.format))
            handlers.append(file_handler)

        logging.basicConfig(
            level=level,
            handlers=handlers,
            force=True
        )

    def _parse_size(self, size_str: str) -> int:
        """Parse size string like '10MB' to bytes"""
        size_str = str(size_str).upper()
        if size_str.endswith('KB'):
            return int(size_str[:-2]) * 1024
        elif size_str.endswith('MB'):
            return int(size_str[:-2]) * 1024 * 1024
        elif size_str.endswith('GB'):
            return int(size_str[:-2]) * 1024 * 1024 * 1024
        else:
            return int(size_str)
