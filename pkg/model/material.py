"""
Physical constants of the elastic body and the surrounding fluid.
"""

from dataclasses import dataclass, asdict
from typing import Dict, Any

from .errors import MaterialError


@dataclass(frozen=True)
class MaterialSystem:
    """
    Solid density and Lamé constants, fluid rest density and sound speed,
    plus the time horizon of the run. Units are SI but never checked, so
    every constant may be set to 1 for nondimensional runs.
    """
    rho_e: float
    lame_lambda: float
    lame_mu: float
    rho_0: float
    sound_speed: float
    horizon: float

    def __post_init__(self):
        errors = []
        if self.lame_mu < 0:
            errors.append(f"lame_mu must be non-negative, got {self.lame_mu}")
        elif self.lame_mu == 0:
            errors.append("lame_mu = 0 is unsupported (coercivity needs mu > 0)")
        if 3 * self.lame_lambda + 2 * self.lame_mu < 0:
            errors.append("3*lame_lambda + 2*lame_mu must be non-negative")
        for name in ('rho_e', 'rho_0', 'sound_speed', 'horizon'):
            value = getattr(self, name)
            if not value > 0:
                errors.append(f"{name} must be positive, got {value}")
        if errors:
            raise MaterialError("; ".join(errors))

    @property
    def pressure_wave_speed(self) -> float:
        return ((self.lame_lambda + 2 * self.lame_mu) / self.rho_e) ** 0.5

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MaterialSystem':
        return cls(**{k: float(v) for k, v in data.items() if k in cls.__annotations__})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
