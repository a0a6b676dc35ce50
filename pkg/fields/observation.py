"""
Where time-domain outputs are sampled: exterior and interior points,
surface vertices and volume vertices.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
from scipy.spatial import cKDTree

from bem.potentials import check_far_field, surface_samples
from model.errors import NearFieldError, ObservationError

logger = logging.getLogger(__name__)

PROBE_KINDS = ('exterior', 'interior', 'surface', 'volume')


def _points(value) -> np.ndarray:
    array = np.asarray(value if value is not None else [], dtype=float)
    return array.reshape(-1, 3)


def _indices(value) -> np.ndarray:
    return np.asarray(value if value is not None else [], dtype=np.int64).reshape(-1)


def winding_number(mesh, points: np.ndarray) -> np.ndarray:
    """Sum of signed solid angles over 4 pi: 1 inside Omega, 0 outside"""
    points = _points(points)
    a = mesh.corners[None, :, 0, :] - points[:, None, :]
    b = mesh.corners[None, :, 1, :] - points[:, None, :]
    c = mesh.corners[None, :, 2, :] - points[:, None, :]
    la, lb, lc = (np.linalg.norm(v, axis=-1) for v in (a, b, c))
    triple = np.einsum('ptd,ptd->pt', a, np.cross(b, c))
    denominator = (la * lb * lc + np.einsum('ptd,ptd->pt', a, b) * lc
                   + np.einsum('ptd,ptd->pt', a, c) * lb + np.einsum('ptd,ptd->pt', b, c) * la)
    return 2.0 * np.arctan2(triple, denominator).sum(axis=1) / (4.0 * np.pi)


@dataclass
class ObservationSet:
    exterior_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    interior_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    surface_probes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    volume_probes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    def __post_init__(self):
        self.exterior_points = _points(self.exterior_points)
        self.interior_points = _points(self.interior_points)
        self.surface_probes = _indices(self.surface_probes)
        self.volume_probes = _indices(self.volume_probes)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ObservationSet':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})

    @property
    def size(self) -> int:
        return (len(self.exterior_points) + len(self.interior_points)
                + len(self.surface_probes) + len(self.volume_probes))

    def names(self, kind: str) -> List[str]:
        count = {
            'exterior': len(self.exterior_points),
            'interior': len(self.interior_points),
            'surface': len(self.surface_probes),
            'volume': len(self.volume_probes),
        }[kind]
        prefix = {'exterior': 'ext', 'interior': 'int', 'surface': 'surf', 'volume': 'vol'}[kind]
        return [f"{prefix}{i}" for i in range(count)]

    def validate(self, spaces) -> None:
        """
        Raises:
            ObservationError: probe index out of range, point on the wrong
                side of Gamma or closer than h_min to it
        """
        mesh = spaces.surface
        errors = []
        if self.surface_probes.size and (self.surface_probes.min() < 0
                                         or self.surface_probes.max() >= mesh.n_vertices):
            errors.append(f"surface probe outside 0..{mesh.n_vertices - 1}")
        if self.volume_probes.size:
            if spaces.volume is None:
                errors.append("volume probes need a volume mesh")
            elif self.volume_probes.min() < 0 or self.volume_probes.max() >= spaces.volume.n_vertices:
                errors.append(f"volume probe outside 0..{spaces.volume.n_vertices - 1}")
        for kind, points, expected in (('exterior', self.exterior_points, 0.0),
                                       ('interior', self.interior_points, 1.0)):
            if not len(points):
                continue
            wrong = np.flatnonzero(np.abs(winding_number(mesh, points) - expected) > 0.5)
            if wrong.size:
                errors.append(f"{kind} point {points[wrong[0]].tolist()} lies on the wrong side of the boundary")
        if errors:
            raise ObservationError('; '.join(errors))

        tree = cKDTree(surface_samples(mesh))
        for points in (self.exterior_points, self.interior_points):
            if len(points):
                try:
                    check_far_field(mesh, points, tree)
                except NearFieldError as e:
                    raise ObservationError(str(e.args[0])) from e


def arrival_time(incident, mesh, point, sound_speed: float = 1.0) -> float:
    """
    Earliest time a wave can reach ``point`` after the incident field first
    touches Gamma: first incident arrival on the boundary plus the distance
    from Gamma to the point at speed c.
    """
    samples = surface_samples(mesh)
    first_touch = float(np.min(incident.earliest_arrival(samples)))
    distance = float(cKDTree(samples).query(np.asarray(point, dtype=float).reshape(1, 3))[0][0])
    return max(0.0, first_touch) + distance / sound_speed


def precursor_ratio(values: np.ndarray, times: np.ndarray, arrival: float) -> float:
    """max |values| before ``arrival`` relative to the peak"""
    values = np.abs(np.asarray(values))
    peak = values.max()
    if peak == 0:
        return 0.0
    early = values[np.asarray(times) < arrival]
    return float(early.max() / peak) if early.size else 0.0
