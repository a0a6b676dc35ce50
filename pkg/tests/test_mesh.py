"""Tests for surface and volume meshes, mesh files, sphere builders and discrete spaces."""

import numpy as np
import pytest

from mesh.builders import ball_volume, octahedron, refine, sphere_surface
from mesh.coupling import trace_coupling_matrix
from mesh.io import load_mesh, write_mesh
from mesh.spaces import build_spaces
from mesh.surface import SurfaceMesh
from mesh.volume import VolumeMesh
from model.errors import (
    DegenerateElementError, InvertedElementError, MeshError, MeshParseError,
    NonClosedSurfaceError, OrientationError,
)
from tests.conftest import CUBE_TETRAHEDRA, cube_vertices


# =========================================================================
# Surface meshes
# =========================================================================
def test_octahedron_geometry(octa):
    assert octa.n_vertices == 6 and octa.n_triangles == 8
    assert octa.total_area == pytest.approx(4 * np.sqrt(3), rel=1e-14)
    assert octa.enclosed_volume == pytest.approx(4.0 / 3.0, rel=1e-14)
    np.testing.assert_allclose(np.linalg.norm(octa.normals, axis=1), 1.0)


def test_octahedron_normals_point_outward(octa):
    report = octa.orientation_report()
    assert report['all_outward'] and report['star_shaped']
    assert np.all(np.einsum('ij,ij->i', octa.normals, octa.centroids) > 0)


def test_inward_surface_is_flipped_on_construction(octa):
    reversed_mesh = SurfaceMesh(octa.vertices, octa.triangles[:, [0, 2, 1]])
    assert reversed_mesh.enclosed_volume > 0
    assert reversed_mesh.orientation_report()['all_outward']
    np.testing.assert_allclose(reversed_mesh.normals, octa.normals)
    assert np.all(np.einsum('ij,ij->i', reversed_mesh.normals, reversed_mesh.centroids) > 0)
    assert np.all(reversed_mesh.areas > 0)


def test_loaded_inward_surface_has_outward_normals(octa, tmp_path):
    path = str(tmp_path / 'inward.surf')
    write_mesh(path, octa.flipped())
    loaded = load_mesh(path)
    assert loaded.enclosed_volume == pytest.approx(4.0 / 3.0, rel=1e-14)
    assert loaded.orientation_report()['all_outward']
    assert np.all(np.einsum('ij,ij->i', loaded.normals, loaded.centroids) > 0)


def test_flipped_copy_keeps_inward_normals(octa):
    flipped = octa.flipped()
    report = flipped.orientation_report()
    assert not report['all_outward']
    assert report['inward_count'] == 8
    np.testing.assert_allclose(flipped.normals, -octa.normals)


def test_open_surface_is_refused(octa):
    with pytest.raises(NonClosedSurfaceError):
        SurfaceMesh(octa.vertices, octa.triangles[1:])


def test_inconsistent_orientation_is_refused(octa):
    triangles = octa.triangles.copy()
    triangles[0] = triangles[0, [0, 2, 1]]
    with pytest.raises(OrientationError):
        SurfaceMesh(octa.vertices, triangles)


def test_degenerate_triangle_is_refused():
    vertices = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0]], dtype=float)
    with pytest.raises(DegenerateElementError):
        SurfaceMesh(vertices, [[0, 1, 2], [0, 1, 3], [1, 2, 3], [0, 2, 3]])


def test_out_of_range_triangle_is_refused(octa):
    with pytest.raises(DegenerateElementError, match='out of range'):
        SurfaceMesh(octa.vertices, [[0, 1, 9]])


@pytest.mark.parametrize('level', [0, 1, 2, 3])
def test_sphere_levels(level):
    mesh = sphere_surface(level, radius=2.0)
    assert mesh.n_triangles == 8 * 4 ** level
    assert mesh.n_vertices == 4 ** (level + 1) + 2
    np.testing.assert_allclose(np.linalg.norm(mesh.vertices, axis=1), 2.0, rtol=1e-12)
    assert mesh.orientation_report()['all_outward']
    assert mesh.total_area < 4 * np.pi * 4.0


def test_sphere_area_increases_under_refinement():
    areas = [sphere_surface(level).total_area for level in range(4)]
    assert np.all(np.diff(areas) > 0)
    assert areas[-1] == pytest.approx(4 * np.pi, rel=0.03)


def test_refine_without_projection_keeps_the_surface(octa):
    fine = refine(octa)
    assert fine.n_triangles == 32
    assert fine.total_area == pytest.approx(octa.total_area, rel=1e-13)


def test_mesh_size_measures(sphere1):
    assert 0 < sphere1.h_min <= sphere1.h_max
    assert sphere1.bbox_diagonal == pytest.approx(2 * np.sqrt(3))
    np.testing.assert_allclose(sphere1.barycenter, 0.0, atol=1e-14)


def test_vertex_normals_on_sphere_are_radial(sphere2):
    cosine = np.einsum('ij,ij->i', sphere2.vertex_normals, sphere2.vertices)
    assert cosine.min() > 0.99


def test_surface_curls_are_tangential(sphere1):
    tangential = np.einsum('tkd,td->tk', sphere1.surface_curls, sphere1.normals)
    assert np.abs(tangential).max() <= 1e-12
    np.testing.assert_allclose(sphere1.barycentric_gradients.sum(axis=1), 0.0, atol=1e-12)


# =========================================================================
# Volume meshes
# =========================================================================
def test_unit_cube_volume(unit_cube):
    assert unit_cube.n_tetrahedra == 5
    assert unit_cube.total_volume == pytest.approx(1.0, rel=1e-14)
    assert np.all(unit_cube.volumes > 0)


def test_unit_cube_boundary_surface(unit_cube):
    surface, vertex_map = unit_cube.boundary_surface()
    assert surface.n_triangles == 12
    assert surface.n_vertices == 8
    assert surface.total_area == pytest.approx(6.0, rel=1e-14)
    assert surface.enclosed_volume == pytest.approx(1.0, rel=1e-14)
    assert surface.orientation_report()['all_outward']
    np.testing.assert_array_equal(unit_cube.vertices[vertex_map], surface.vertices)


def test_inverted_tetrahedra_are_repaired_or_refused():
    swapped = [(b, a, c, d) for a, b, c, d in CUBE_TETRAHEDRA]
    repaired = VolumeMesh(cube_vertices(), swapped, reorient=True)
    assert np.all(repaired.volumes > 0)
    with pytest.raises(InvertedElementError):
        VolumeMesh(cube_vertices(), swapped, reorient=False)


def test_degenerate_tetrahedron_is_refused():
    vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
    with pytest.raises(DegenerateElementError):
        VolumeMesh(vertices, [[0, 1, 2, 3]])


def test_ball_conforms_to_sphere(sphere1):
    ball = ball_volume(sphere1, shells=3)
    assert ball.n_tetrahedra == sphere1.n_triangles * (1 + 3 * 2)
    assert ball.total_volume == pytest.approx(sphere1.enclosed_volume, rel=1e-12)
    boundary, _ = ball.boundary_surface()
    assert boundary.n_triangles == sphere1.n_triangles


# =========================================================================
# Mesh files
# =========================================================================
def test_surface_file_round_trip(tmp_path, sphere1):
    path = write_mesh(str(tmp_path / 'sphere.surf'), sphere1)
    loaded = load_mesh(path)
    assert isinstance(loaded, SurfaceMesh)
    np.testing.assert_array_equal(loaded.vertices, sphere1.vertices)
    np.testing.assert_array_equal(loaded.triangles, sphere1.triangles)


def test_volume_file_defines_the_boundary(tmp_path, unit_cube):
    path = write_mesh(str(tmp_path / 'cube.vol'), unit_cube)
    loaded = load_mesh(path)
    assert isinstance(loaded, VolumeMesh)
    assert loaded.total_volume == pytest.approx(1.0)


def test_missing_mesh_file_names_the_path(tmp_path):
    missing = str(tmp_path / 'nowhere.surf')
    with pytest.raises(MeshParseError, match='nowhere.surf'):
        load_mesh(missing)


@pytest.mark.parametrize('content, message', [
    ("MESH surf\n0 0\n", 'header'),
    ("OFFLIKE surf\nthree 1\n", 'two integers'),
    ("OFFLIKE surf\n3 1\n0 0 0\n1 0 0\n0 1 0\n", 'expected 3 vertex'),
    ("OFFLIKE surf\n3 1\n0 0 0\n1 0 0\n0 1\n0 1 2\n", 'vertex line'),
    ("OFFLIKE surf\n3 1\n0 0 0\n1 0 0\n0 1 0\n0 1 5\n", 'out of range'),
])
def test_malformed_mesh_files(tmp_path, content, message):
    path = tmp_path / 'bad.surf'
    path.write_text(content)
    with pytest.raises(MeshParseError, match=message):
        load_mesh(str(path))


def test_comments_and_blank_lines_are_ignored(tmp_path, octa):
    lines = ["# octahedron", "OFFLIKE surf", "", f"{octa.n_vertices} {octa.n_triangles}  # counts"]
    lines += [" ".join(repr(float(x)) for x in v) for v in octa.vertices]
    lines += [" ".join(str(int(i)) for i in t) for t in octa.triangles]
    path = tmp_path / 'octa.surf'
    path.write_text("\n".join(lines) + "\n")
    assert load_mesh(str(path)).n_triangles == 8


# =========================================================================
# Discrete spaces
# =========================================================================
def test_space_dimensions(spaces1, sphere1):
    dims = spaces1.dimensions()
    assert dims['p1_surface'] == sphere1.n_vertices
    assert dims['p0_surface'] == sphere1.n_triangles
    assert dims['p1_vector_volume'] == 3 * spaces1.volume.n_vertices


def test_surface_mass_matrices(spaces1, sphere1):
    np.testing.assert_allclose(np.asarray(spaces1.dual_mass.sum(axis=1)).ravel(), sphere1.areas)
    assert spaces1.p1_mass.sum() == pytest.approx(sphere1.total_area)
    np.testing.assert_allclose(np.asarray(spaces1.p0_to_vertex.sum(axis=1)).ravel(), 1.0)


def test_boundary_map_matches_oriented_faces(spaces1, sphere1):
    volume = spaces1.volume
    for t, (tet, local) in enumerate(spaces1.boundary_map):
        face = volume.oriented_face(tet, local)
        np.testing.assert_array_equal(np.sort(face), np.sort(spaces1.vertex_map[sphere1.triangles[t]]))


def test_surface_not_on_volume_boundary_is_refused(sphere1, unit_cube):
    with pytest.raises(MeshError):
        build_spaces(sphere1, unit_cube)


def test_trace_coupling_reproduces_flux_identities(spaces1, sphere1):
    G = trace_coupling_matrix(spaces1)
    ones = np.ones(spaces1.n_p1)
    position = spaces1.volume.vertices.ravel()
    # int_Gamma x . n = 3 |Omega| and int_Gamma n = 0
    assert position @ (G @ ones) == pytest.approx(3 * sphere1.enclosed_volume, rel=1e-12)
    for axis in range(3):
        translation = np.zeros(spaces1.n_volume)
        translation[axis::3] = 1.0
        assert abs(translation @ (G @ ones)) <= 1e-12
