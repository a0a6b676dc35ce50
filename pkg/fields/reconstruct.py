"""
Time-domain reconstruction of displacements, potentials and pressures from
the frequency solutions of a CQ sweep.

Each output is a transfer of the frequency solution (coefficients,
the representation D phi - S lam, or rho_0 s times a potential) and is
mapped back to time by the inverse CQ transform.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from bem.potentials import PotentialEvaluator
from cq.convolution import frequency_sweep, inverse_transform, reality_residue
from cq.grid import CQGrid
from model.errors import ObservationError
from model.signal import TimeSignal
from .observation import ObservationSet

logger = logging.getLogger(__name__)

PRESSURE_FIELDS = ('scattered', 'total')


@dataclass(eq=False)
class ProbeTrace:
    name: str
    kind: str
    position: np.ndarray
    channels: Dict[str, TimeSignal] = field(default_factory=dict)

    @property
    def value(self) -> TimeSignal:
        return self.channels['value']

    def frame(self) -> pd.DataFrame:
        """Columns t, re_value and one column per extra channel component"""
        value = self.value
        columns = {'t': value.times}
        samples = value.samples
        if samples.ndim == 1:
            columns['re_value'] = samples
        else:
            columns['re_value'] = np.linalg.norm(samples, axis=1)
            for axis, label in enumerate('xyz'):
                columns[f'u_{label}'] = samples[:, axis]
        for name, signal in self.channels.items():
            if name == 'value':
                continue
            data = signal.samples
            if data.ndim == 1:
                columns[name] = data
            else:
                for axis, label in enumerate('xyz'):
                    columns[f'{name}_{label}'] = data[:, axis]
        return pd.DataFrame(columns)


@dataclass(eq=False)
class SolutionTrace:
    grid: CQGrid
    probes: List[ProbeTrace]
    displacement: Optional[TimeSignal] = None
    velocity: Optional[TimeSignal] = None
    reality_residue: float = float('nan')

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def probe(self, name: str) -> ProbeTrace:
        for probe in self.probes:
            if probe.name == name:
                return probe
        raise KeyError(name)

    def by_kind(self, kind: str) -> List[ProbeTrace]:
        return [probe for probe in self.probes if probe.kind == kind]

    def frames(self) -> Dict[str, pd.DataFrame]:
        return {probe.name: probe.frame() for probe in self.probes}

    def is_finite(self) -> bool:
        signals = [sig for probe in self.probes for sig in probe.channels.values()]
        return all(np.all(np.isfinite(sig.samples)) for sig in signals)


def _signal(grid: CQGrid, samples: np.ndarray) -> TimeSignal:
    return TimeSignal(grid.dt, samples, causal=False)


def reconstruct(freq_solutions: Sequence, grid: CQGrid, obs: ObservationSet, spaces, material,
                incident=None, pressure_field: str = 'scattered', threads: int = 1,
                mirror_solutions: Optional[Sequence] = None) -> SolutionTrace:
    """
    Map the half-spectrum of frequency solutions back to the time domain at
    every probe. With ``mirror_solutions`` (rows above L // 2, in
    ``grid.mirror_indices()`` order) the reality residue is measured on the
    full spectrum; without them it stays NaN.

    Raises:
        ObservationError: frequency set does not match the grid, or a probe
            is invalid or too close to Gamma
    """
    if pressure_field not in PRESSURE_FIELDS:
        raise ObservationError(f"pressure_field must be one of {PRESSURE_FIELDS}, got {pressure_field}")
    expected = grid.sample_points()
    if len(freq_solutions) != len(expected) or not np.allclose(
            [sol.frequency.s for sol in freq_solutions], expected, rtol=1e-12, atol=0.0):
        raise ObservationError(
            f"frequency set of {len(freq_solutions)} solutions does not match the grid "
            f"({len(expected)} sample points)"
        )
    if mirror_solutions is not None:
        mirrored = np.conj(expected[grid.mirror_indices()])
        if len(mirror_solutions) != len(mirrored) or not np.allclose(
                [sol.frequency.s for sol in mirror_solutions], mirrored, rtol=1e-12, atol=0.0):
            raise ObservationError(
                f"{len(mirror_solutions)} conjugate-row solutions do not match the grid "
                f"({len(mirrored)} rows above L // 2)"
            )
    obs.validate(spaces)
    mesh = spaces.surface
    rho_0, c = material.rho_0, material.sound_speed
    times = grid.times

    evaluators = {}
    for kind, points in (('exterior', obs.exterior_points), ('interior', obs.interior_points)):
        if len(points):
            evaluators[kind] = PotentialEvaluator(mesh, points, c, check_distance=False)
    averaged_lambda = spaces.p0_to_vertex

    def post_map(sol):
        frequency = sol.frequency
        s = frequency.s
        out = {
            'U': sol.U_hat,
            'V': s * sol.U_hat,
            'surface_phi': sol.phi_hat[obs.surface_probes],
            'surface_lambda': (averaged_lambda @ sol.lambda_hat)[obs.surface_probes],
        }
        out['surface_pressure'] = rho_0 * s * out['surface_phi']
        for kind, evaluator in evaluators.items():
            potential = evaluator.evaluate(frequency, sol.phi_hat, sol.lambda_hat)
            out[f'{kind}_potential'] = potential
            out[f'{kind}_pressure'] = rho_0 * s * potential
        return out

    def map_all(solutions):
        mapped = frequency_sweep(lambda i, f: post_map(solutions[i]),
                                 [sol.frequency for sol in solutions], threads)
        return {key: np.stack([m[key] for m in mapped]) for key in mapped[0]}

    spectra = map_all(freq_solutions)
    residue = float('nan')
    if mirror_solutions is not None:
        mirror_spectra = map_all(mirror_solutions)
        residue = max([reality_residue(np.concatenate([spectrum, mirror_spectra[key]]), grid)
                       for key, spectrum in spectra.items()
                       if spectrum.size and np.any(spectrum)], default=0.0)
    signals = {key: inverse_transform(spectrum, grid) for key, spectrum in spectra.items()
               if spectrum.size}

    def incident_parts(points):
        if incident is None or not len(points):
            zeros = np.zeros((len(times), len(points)))
            return zeros, zeros
        value, _ = incident.trace(points, times)
        return value, rho_0 * incident.time_derivative(points, times)

    probes = []
    for kind, points in (('exterior', obs.exterior_points), ('interior', obs.interior_points)):
        if not len(points):
            continue
        inc_value, inc_pressure = incident_parts(points)
        for i, name in enumerate(obs.names(kind)):
            scattered = signals[f'{kind}_pressure'][:, i]
            total = scattered + inc_pressure[:, i]
            probes.append(ProbeTrace(name, kind, points[i], {
                'value': _signal(grid, signals[f'{kind}_potential'][:, i]),
                'pressure': _signal(grid, total if pressure_field == 'total' else scattered),
                'pressure_scattered': _signal(grid, scattered),
                'pressure_incident': _signal(grid, inc_pressure[:, i]),
                'potential_incident': _signal(grid, inc_value[:, i]),
            }))

    surface_points = mesh.vertices[obs.surface_probes]
    inc_value, inc_pressure = incident_parts(surface_points)
    for i, name in enumerate(obs.names('surface')):
        scattered = signals['surface_pressure'][:, i]
        total = scattered + inc_pressure[:, i]
        probes.append(ProbeTrace(name, 'surface', surface_points[i], {
            'value': _signal(grid, signals['surface_phi'][:, i]),
            'lambda': _signal(grid, signals['surface_lambda'][:, i]),
            'pressure': _signal(grid, total if pressure_field == 'total' else scattered),
            'pressure_scattered': _signal(grid, scattered),
            'pressure_incident': _signal(grid, inc_pressure[:, i]),
        }))

    displacement = velocity = None
    if spaces.volume is not None:
        displacement = _signal(grid, signals['U'])
        velocity = _signal(grid, signals['V'])
        for i, name in enumerate(obs.names('volume')):
            vertex = int(obs.volume_probes[i])
            dofs = 3 * vertex + np.arange(3)
            probes.append(ProbeTrace(name, 'volume', spaces.volume.vertices[vertex], {
                'value': _signal(grid, signals['U'][:, dofs]),
                'velocity': _signal(grid, signals['V'][:, dofs]),
            }))

    logger.info(f"Reconstructed {len(probes)} probe trace(s) over {grid.length} steps, "
                f"reality residue {residue:.2e}")
    return SolutionTrace(grid, probes, displacement, velocity, residue)
