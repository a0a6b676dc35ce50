"""
Outcome of one verified property.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd


@dataclass
class CheckResult:
    """What a check function returns; the engine adds name, module and timing"""
    passed: bool
    values: Dict[str, Any] = field(default_factory=dict)
    frequencies: List[complex] = field(default_factory=list)
    samples: Optional[pd.DataFrame] = None
    message: str = ''


@dataclass
class PropertyReport:
    name: str
    module: str
    passed: bool
    asserted: bool = True
    seed: int = 0
    values: Dict[str, Any] = field(default_factory=dict)
    frequencies: List[complex] = field(default_factory=list)
    samples: Optional[pd.DataFrame] = None
    message: str = ''
    error: bool = False
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        if self.error:
            return 'ERROR'
        if not self.asserted:
            return 'REPORTED'
        return 'PASS' if self.passed else 'FAIL'

    @property
    def failed(self) -> bool:
        """Counts against the run: asserted and not passed, or crashed"""
        return self.error or (self.asserted and not self.passed)

    def to_block(self) -> str:
        """Key-value text block, one property per block"""
        lines = [
            f"[{self.name}]",
            f"module = {self.module}",
            f"status = {self.status}",
            f"asserted = {str(self.asserted).lower()}",
            f"seed = {self.seed}",
            f"elapsed_s = {self.elapsed:.3f}",
        ]
        if self.frequencies:
            lines.append("frequencies = " + ", ".join(_format_value(complex(s)) for s in self.frequencies))
        for key, value in self.values.items():
            lines.append(f"{key} = {_format_value(value)}")
        if self.message:
            lines.append(f"message = {self.message}")
        return "\n".join(lines)


def _format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, complex):
        return f"{value.real:.6g}{value.imag:+.6g}j"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6g}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_format_value(v) for v in np.asarray(value).tolist()) + "]"
    return str(value)
