"""
Turns a RunConfig into the objects a solve needs.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bem.assembly import BoundaryAssembler
from bem.potentials import check_far_field
from bem.quadrature import QuadratureSettings
from coupling.solver import CoupledProblem
from cq.grid import CQGrid
from fem.assembly import FemMatrices, assemble_fem
from config import ConfigValidationError
from fields.observation import ObservationSet, winding_number
from mesh.builders import ball_volume, sphere_surface
from mesh.io import load_mesh
from mesh.spaces import DiscreteSpaces, build_spaces
from mesh.surface import SurfaceMesh
from mesh.volume import VolumeMesh
from model.errors import MeshError, NearFieldError
from model.incident import IncidentField, get_incident
from model.material import MaterialSystem
from model.pulse import get_pulse

logger = logging.getLogger(__name__)


def build_material(config) -> MaterialSystem:
    return MaterialSystem.from_dict(vars(config.material))


def build_settings(config) -> QuadratureSettings:
    return QuadratureSettings.from_dict(vars(config.quadrature))


def build_grid(config, horizon: Optional[float] = None, steps: Optional[int] = None) -> CQGrid:
    return CQGrid(
        horizon=config.material.horizon if horizon is None else horizon,
        steps=config.grid.steps if steps is None else steps,
        scheme=config.grid.scheme,
        eps_cq=config.grid.eps_cq,
    )


def build_incident(config, amplitude: Optional[float] = None, **pulse_overrides) -> IncidentField:
    pulse_config = config.pulse
    params = pulse_config.pulse_parameters()
    params.update(pulse_overrides)
    if amplitude is not None:
        params['amplitude'] = amplitude
    pulse = get_pulse(pulse_config.shape, **params)
    direction = None
    if pulse_config.direction is not None:
        direction = np.asarray(pulse_config.direction, dtype=float)
        direction = direction / np.linalg.norm(direction)
    return get_incident(pulse_config.kind, pulse, config.material.sound_speed,
                        direction=direction, source=pulse_config.source)


def check_source(config, surface: SurfaceMesh) -> None:
    """
    A point source must sit in the exterior of the scatterer, at least the
    shortest mesh edge away from Gamma.

    Raises:
        ConfigValidationError: naming pulse.source and the offending position
    """
    if config.pulse.kind != 'point_source':
        return
    source = np.asarray(config.pulse.source, dtype=float).reshape(1, 3)
    if winding_number(surface, source)[0] > 0.5:
        raise ConfigValidationError(f"pulse.source {source[0].tolist()} lies inside the scatterer")
    try:
        check_far_field(surface, source)
    except NearFieldError as e:
        raise ConfigValidationError(f"pulse.source is too close to the boundary: {e.args[0]}") from e


def build_observation(config) -> ObservationSet:
    obs = config.observation
    return ObservationSet(
        exterior_points=obs.exterior_points,
        interior_points=obs.interior_points,
        surface_probes=obs.surface_probes,
        volume_probes=obs.volume_probes,
    )


def sphere_spaces(level: int, shells: int = 2, radius: float = 1.0) -> DiscreteSpaces:
    surface = sphere_surface(level, radius)
    return build_spaces(surface, ball_volume(surface, shells))


def build_spaces_from_config(config) -> DiscreteSpaces:
    """
    Builtin sphere and ball, or mesh files. A volume file alone defines Gamma
    through its boundary faces.
    """
    mesh_config = config.mesh
    if mesh_config.volume_file:
        volume = load_mesh(mesh_config.volume_file)
        if not isinstance(volume, VolumeMesh):
            raise MeshError(f"{mesh_config.volume_file} does not hold a tetrahedral mesh")
        if mesh_config.surface_file:
            surface = load_mesh(mesh_config.surface_file)
            if not isinstance(surface, SurfaceMesh):
                raise MeshError(f"{mesh_config.surface_file} does not hold a surface mesh")
        else:
            surface, _ = volume.boundary_surface()
        spaces = build_spaces(surface, volume)
    else:
        spaces = sphere_spaces(mesh_config.sphere_level, mesh_config.shells, mesh_config.radius)
    logger.info(f"Meshes ready: {spaces.surface}, {spaces.volume}")
    return spaces


@dataclass(eq=False)
class Scenario:
    """Everything frequency independent for one mesh"""
    spaces: DiscreteSpaces
    material: MaterialSystem
    settings: QuadratureSettings
    fem: FemMatrices
    problem: CoupledProblem

    @property
    def mesh(self) -> SurfaceMesh:
        return self.spaces.surface


def build_scenario(spaces: DiscreteSpaces, material: MaterialSystem,
                   settings: Optional[QuadratureSettings] = None) -> Scenario:
    settings = settings or QuadratureSettings()
    fem = assemble_fem(spaces.volume, material)
    assembler = BoundaryAssembler(spaces.surface, settings, material.sound_speed)
    problem = CoupledProblem(spaces, fem, assembler)
    return Scenario(spaces, material, settings, fem, problem)
