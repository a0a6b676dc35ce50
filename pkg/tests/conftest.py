"""Shared meshes, materials and quadrature settings."""

import numpy as np
import pytest

from bem.quadrature import QuadratureSettings
from config.models import RunConfig
from mesh.builders import ball_volume, octahedron, sphere_surface
from mesh.spaces import build_spaces
from mesh.volume import VolumeMesh
from model.material import MaterialSystem
from pipeline.builders import build_scenario

# corner index bits: x = 1, y = 2, z = 4
CUBE_TETRAHEDRA = [(1, 2, 4, 7), (0, 1, 2, 4), (3, 1, 2, 7), (5, 1, 4, 7), (6, 2, 4, 7)]


def cube_vertices() -> np.ndarray:
    return np.array([[i & 1, (i >> 1) & 1, (i >> 2) & 1] for i in range(8)], dtype=float)


@pytest.fixture
def unit_cube() -> VolumeMesh:
    """Unit cube split into five tetrahedra"""
    return VolumeMesh(cube_vertices(), CUBE_TETRAHEDRA)


@pytest.fixture
def reference_tet() -> VolumeMesh:
    vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
    return VolumeMesh(vertices, [[0, 1, 2, 3]])


@pytest.fixture(scope='session')
def octa():
    return octahedron()


@pytest.fixture(scope='session')
def sphere1():
    return sphere_surface(1)


@pytest.fixture(scope='session')
def sphere2():
    return sphere_surface(2)


@pytest.fixture(scope='session')
def sphere3():
    return sphere_surface(3)


@pytest.fixture(scope='session')
def spaces1(sphere1):
    return build_spaces(sphere1, ball_volume(sphere1, 2))


@pytest.fixture(scope='session')
def spaces2(sphere2):
    return build_spaces(sphere2, ball_volume(sphere2, 2))


@pytest.fixture(scope='session')
def material() -> MaterialSystem:
    """Nondimensional steel-like solid in a water-like fluid"""
    return MaterialSystem(rho_e=7.85, lame_lambda=52.5, lame_mu=35.2,
                          rho_0=1.0, sound_speed=1.0, horizon=4.0)


@pytest.fixture(scope='session')
def settings() -> QuadratureSettings:
    return QuadratureSettings()


@pytest.fixture(scope='session')
def scenario1(spaces1, material, settings):
    return build_scenario(spaces1, material, settings)


@pytest.fixture(scope='session')
def scenario2(spaces2, material, settings):
    return build_scenario(spaces2, material, settings)


@pytest.fixture
def run_config(tmp_path) -> RunConfig:
    """Small configuration writing into a temporary directory"""
    return RunConfig.from_dict({
        'run': {'mode': 'solve', 'threads': 1, 'seed': 7},
        'mesh': {'sphere_level': 1, 'shells': 2},
        'grid': {'steps': 16},
        'observation': {'exterior_points': [[0.0, 0.0, 2.0]], 'interior_points': [],
                        'surface_probes': [0], 'volume_probes': [0]},
        'output': {'directory': str(tmp_path / 'out')},
        'verify': {'level': 1, 'levels': [0, 1]},
    })
