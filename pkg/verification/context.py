"""
Shared, cached inputs of the verification checks: meshes per refinement
level, frequency grids, seeded random generators and one coupled run.
"""

import logging
import zlib
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from coupling.norms import ProductNorms
from coupling.system import BlockSystem
from cq.grid import CQGrid
from model.frequency import ComplexFrequency
from pipeline.builders import (
    Scenario, build_grid, build_incident, build_material, build_observation, build_scenario,
    build_settings, sphere_spaces,
)
from pipeline.simulation import SimulationResult, simulate

logger = logging.getLogger(__name__)

FIT_POINTS = 5


class VerificationContext:
    def __init__(self, config):
        self.config = config
        self.verify = config.verify
        self.seed = int(config.run.seed)
        self.threads = int(config.run.threads or 1)
        self.material = build_material(config)
        self.settings = build_settings(config)
        self._scenarios: Dict[int, Scenario] = {}
        self._systems: Dict[Tuple[int, complex], BlockSystem] = {}
        self._run = None
        self._norms: Dict[int, ProductNorms] = {}
        self._memo: Dict[Any, Any] = {}

    def rng(self, name: str) -> np.random.Generator:
        """Generator seeded from the run seed and the property name"""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    @property
    def level(self) -> int:
        return int(self.verify.level)

    @property
    def levels(self) -> List[int]:
        return [int(k) for k in self.verify.levels]

    @property
    def shell_levels(self) -> List[int]:
        return [int(k) for k in self.verify.shell_levels]

    def scenario(self, level: int) -> Scenario:
        if level not in self._scenarios:
            spaces = sphere_spaces(level, self.config.mesh.shells, self.config.mesh.radius)
            self._scenarios[level] = build_scenario(spaces, self.material, self.settings)
        return self._scenarios[level]

    def incident(self, **overrides):
        return build_incident(self.config, **overrides)

    def frequency_grid(self) -> List[ComplexFrequency]:
        """Every sigma with every modulus; moduli below sigma collapse onto s = sigma"""
        return [ComplexFrequency.on_ray(sigma, max(modulus, sigma))
                for sigma in self.verify.sigmas for modulus in self.verify.frequencies]

    def fit_moduli(self) -> np.ndarray:
        low, high = min(self.verify.frequencies), max(self.verify.frequencies)
        return np.geomspace(low, high, FIT_POINTS)

    def system(self, level: int, s) -> BlockSystem:
        """Block system with plane-wave data, cached per level and frequency"""
        frequency = s if isinstance(s, ComplexFrequency) else ComplexFrequency(s)
        key = (level, frequency.s)
        if key not in self._systems:
            self._systems[key] = self.scenario(level).problem.system(frequency, self.incident())
        return self._systems[key]

    def grid(self, horizon: float = None, steps: int = None) -> CQGrid:
        return build_grid(self.config, horizon, steps)

    def coupled_run(self) -> SimulationResult:
        """The configured end-to-end run on the verification level, computed once"""
        if self._run is None:
            self._run = simulate(self.scenario(self.level), self.incident(), self.grid(),
                                 build_observation(self.config), self.threads,
                                 self.config.observation.pressure_field)
        return self._run

    def norms(self, level: int) -> ProductNorms:
        if level not in self._norms:
            self._norms[level] = ProductNorms(self.scenario(level).problem)
        return self._norms[level]

    def memo(self, key, compute: Callable[[], Any]):
        """Result shared by several checks, computed on first use"""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]
