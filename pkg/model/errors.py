"""
Error hierarchy shared by every package.

Each error carries the name of the module it originated in so the CLI can
report provenance alongside the message.
"""

from typing import Optional


class FsiError(Exception):
    """Base class for all solver errors"""

    default_module = 'core_model'

    def __init__(self, message: str, module: Optional[str] = None):
        super().__init__(message)
        self.module = module or self.default_module

    def __str__(self) -> str:
        return f"[{self.module}] {super().__str__()}"


class MaterialError(FsiError):
    """Raised when physical constants violate their invariants"""
    default_module = 'core_model'


class FrequencyError(FsiError):
    """Raised when a frequency outside the open right half-plane is constructed"""
    default_module = 'core_model'


class SingularPointError(FsiError):
    """Raised when a point source is evaluated at its own location"""
    default_module = 'core_model'


class MeshError(FsiError):
    default_module = 'mesh'


class MeshParseError(MeshError):
    pass


class NonClosedSurfaceError(MeshError):
    pass


class OrientationError(MeshError):
    pass


class DegenerateElementError(MeshError):
    pass


class InvertedElementError(FsiError):
    default_module = 'elastic_fem'


class QuadratureConfigError(FsiError):
    default_module = 'laplace_bio'


class NearFieldError(FsiError):
    """Raised when a potential is requested closer to the boundary than h_min"""
    default_module = 'laplace_bio'


class SingularSystemError(FsiError):
    default_module = 'coupled_solver'


class GridConfigError(FsiError):
    default_module = 'cq_engine'


class TransferEvaluationError(FsiError):
    """Raised when a transfer map fails at one frequency of a sweep"""
    default_module = 'cq_engine'

    def __init__(self, message: str, index: int, module: Optional[str] = None):
        super().__init__(f"frequency index {index}: {message}", module)
        self.index = index


class TruncationError(FsiError):
    default_module = 'cq_engine'


class FitError(FsiError):
    default_module = 'verify_suite'


class ObservationError(FsiError):
    default_module = 'field_eval'


class IncidentFieldError(FsiError):
    """Raised when an incident pulse or field violates causality or shape rules"""
    default_module = 'core_model'
