"""
Incident acoustic fields in the time and Laplace domains.
"""

import abc
import logging
from typing import Optional, Tuple

import numpy as np

from .errors import IncidentFieldError, SingularPointError
from .frequency import ComplexFrequency
from .pulse import ModulatedGaussianPulse

logger = logging.getLogger(__name__)


def _as_points(x) -> np.ndarray:
    return np.atleast_2d(np.asarray(x, dtype=float))


def _as_normals(normal, points: np.ndarray) -> Optional[np.ndarray]:
    if normal is None:
        return None
    return np.broadcast_to(np.atleast_2d(np.asarray(normal, dtype=float)), points.shape)


class IncidentField(abc.ABC):
    """
    Abstract base class for incident fields phi_inc(x, t) built from a pulse.

    Time-domain evaluations broadcast to shape (n_times, n_points) when t is an
    array and (n_points,) when t is a scalar.
    """
    kind = 'abstract'

    def __init__(self, pulse: ModulatedGaussianPulse, sound_speed: float = 1.0):
        self.pulse = pulse
        self.sound_speed = float(sound_speed)

    @abc.abstractmethod
    def delay(self, points: np.ndarray) -> np.ndarray:
        """Travel time subtracted from t at each point"""

    @abc.abstractmethod
    def spreading(self, points: np.ndarray) -> np.ndarray:
        """Geometric amplitude factor at each point"""

    @abc.abstractmethod
    def trace(self, x, t, normal=None) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Value and normal derivative of phi_inc"""

    @abc.abstractmethod
    def laplace(self, s: ComplexFrequency, x, normal=None) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Value and normal derivative of the transformed field Phi_inc(s)"""

    def time_derivative(self, x, t) -> np.ndarray:
        """d phi_inc / dt, used for the incident pressure"""
        points = _as_points(x)
        retarded = np.subtract.outer(np.asarray(t, dtype=float), self.delay(points))
        return self.spreading(points) * self.pulse.derivative(retarded, order=1)

    def earliest_arrival(self, x) -> np.ndarray:
        """First time the field exceeds the pulse causality tolerance at each point"""
        return self.pulse.support_start + self.delay(_as_points(x))


class PlaneWave(IncidentField):
    """phi_inc(x, t) = psi(t - d.x / c)"""
    kind = 'plane_wave'

    def __init__(self, pulse, direction, sound_speed: float = 1.0):
        super().__init__(pulse, sound_speed)
        direction = np.asarray(direction, dtype=float)
        if direction.shape != (3,) or abs(np.linalg.norm(direction) - 1.0) > 1e-9:
            raise IncidentFieldError(f"plane wave direction must be a unit 3-vector, got {direction}")
        self.direction = direction

    def delay(self, points):
        return points @ self.direction / self.sound_speed

    def spreading(self, points):
        return np.ones(len(points))

    def trace(self, x, t, normal=None):
        points = _as_points(x)
        normals = _as_normals(normal, points)
        retarded = np.subtract.outer(np.asarray(t, dtype=float), self.delay(points))
        value = self.pulse(retarded)
        if normals is None:
            return value, None
        d_dot_n = normals @ self.direction
        return value, -self.pulse.derivative(retarded, order=1) * d_dot_n / self.sound_speed

    def laplace(self, s, x, normal=None):
        points = _as_points(x)
        normals = _as_normals(normal, points)
        phase = np.exp(-s.s * self.delay(points))
        value = self.pulse.laplace(s.s) * phase
        if normals is None:
            return value, None
        return value, -(s.s / self.sound_speed) * (normals @ self.direction) * value


class PointSource(IncidentField):
    """phi_inc(x, t) = psi(t - |x - x0| / c) / (4 pi |x - x0|)"""
    kind = 'point_source'

    def __init__(self, pulse, source, sound_speed: float = 1.0):
        super().__init__(pulse, sound_speed)
        self.source = np.asarray(source, dtype=float).reshape(3)

    def _offsets(self, points):
        offsets = points - self.source
        r = np.linalg.norm(offsets, axis=1)
        if np.any(r < 1e-14 * max(1.0, float(np.abs(self.source).max()))):
            raise SingularPointError("point source evaluated at its own location")
        return offsets, r

    def delay(self, points):
        return self._offsets(points)[1] / self.sound_speed

    def spreading(self, points):
        return 1.0 / (4.0 * np.pi * self._offsets(points)[1])

    def trace(self, x, t, normal=None):
        points = _as_points(x)
        normals = _as_normals(normal, points)
        offsets, r = self._offsets(points)
        retarded = np.subtract.outer(np.asarray(t, dtype=float), r / self.sound_speed)
        value = self.pulse(retarded) / (4.0 * np.pi * r)
        if normals is None:
            return value, None
        radial = np.einsum('ij,ij->i', offsets, normals) / r
        dr = (-self.pulse.derivative(retarded, order=1) / (self.sound_speed * 4.0 * np.pi * r)
              - self.pulse(retarded) / (4.0 * np.pi * r ** 2))
        return value, dr * radial

    def laplace(self, s, x, normal=None):
        points = _as_points(x)
        normals = _as_normals(normal, points)
        offsets, r = self._offsets(points)
        kappa = s.s / self.sound_speed
        green = np.exp(-kappa * r) / (4.0 * np.pi * r)
        value = self.pulse.laplace(s.s) * green
        if normals is None:
            return value, None
        radial = np.einsum('ij,ij->i', offsets, normals) / r
        return value, -value * (kappa + 1.0 / r) * radial


INCIDENT_REGISTRY = {
    'plane_wave': PlaneWave,
    'point_source': PointSource,
}


def get_incident(kind: str, pulse: ModulatedGaussianPulse, sound_speed: float = 1.0,
                 direction=None, source=None) -> IncidentField:
    """
    Factory function for incident fields
    """
    field_cls = INCIDENT_REGISTRY.get(kind)
    if not field_cls:
        raise IncidentFieldError(f"Unsupported incident field kind: {kind}")
    if field_cls is PlaneWave:
        return PlaneWave(pulse, direction, sound_speed)
    return PointSource(pulse, source, sound_speed)


def eval_incident_trace(f: IncidentField, x, t, normal):
    """phi_inc(x, t) and its normal derivative for the supplied unit normal"""
    return f.trace(x, t, normal)


def laplace_of_incident(f: IncidentField, s: ComplexFrequency, x, normal=None):
    """Closed-form Phi_inc(s) and dPhi_inc/dn at x"""
    return f.laplace(s, x, normal)
