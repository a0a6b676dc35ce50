"""
Surface orientation, refinement and the surface-to-volume link.
"""

import numpy as np
import pandas as pd

from mesh.builders import sphere_surface
from ..registry import register
from ..report import CheckResult

MODULE = 'mesh'


@register('surface_orientation', MODULE)
def surface_orientation(ctx) -> CheckResult:
    rows = []
    for level in ctx.levels:
        for source, mesh in (('sphere', sphere_surface(level, ctx.config.mesh.radius)),
                             ('ball_boundary', ctx.scenario(level).spaces.volume.boundary_surface()[0])):
            report = mesh.orientation_report()
            rows.append({'level': level, 'source': source, 'enclosed_volume': mesh.enclosed_volume,
                         **report})
    frame = pd.DataFrame(rows)
    passed = bool(frame['all_outward'].all() and (frame['enclosed_volume'] > 0).all())
    return CheckResult(passed=passed,
                       values={'meshes': len(frame), 'inward_total': int(frame['inward_count'].sum())},
                       samples=frame)


@register('refinement_invariants', MODULE)
def refinement_invariants(ctx) -> CheckResult:
    """1 -> 4 splits stay closed and outward, projected vertices stay on the sphere"""
    radius = float(ctx.config.mesh.radius)
    rows = []
    for level in range(max(ctx.levels) + 1):
        mesh = sphere_surface(level, radius)
        radii = np.linalg.norm(mesh.vertices, axis=1)
        rows.append({
            'level': level,
            'triangles': mesh.n_triangles,
            'expected_triangles': 8 * 4 ** level,
            'radius_error': float(np.abs(radii - radius).max()),
            'area': mesh.total_area,
            'all_outward': mesh.orientation_report()['all_outward'],
        })
    frame = pd.DataFrame(rows)
    sphere_area = 4.0 * np.pi * radius ** 2
    areas = frame['area'].to_numpy()
    passed = bool(
        (frame['triangles'] == frame['expected_triangles']).all()
        and (frame['radius_error'] <= 1e-12 * radius).all()
        and frame['all_outward'].all()
        and np.all(np.diff(areas) > 0)
        and areas[-1] < sphere_area
    )
    return CheckResult(passed=passed,
                       values={'final_area': float(areas[-1]), 'sphere_area': sphere_area},
                       samples=frame)


@register('boundary_map_roundtrip', MODULE)
def boundary_map_roundtrip(ctx) -> CheckResult:
    """Every surface triangle maps to a boundary tet face with the same vertices and orientation"""
    rows = []
    for level in ctx.levels:
        spaces = ctx.scenario(level).spaces
        surface, volume = spaces.surface, spaces.volume
        mapped = spaces.vertex_map[surface.triangles]
        faces = np.array([volume.oriented_face(t, k) for t, k in spaces.boundary_map])
        same_set = np.all(np.sort(mapped, axis=1) == np.sort(faces, axis=1), axis=1)
        face_normals = np.cross(volume.vertices[faces[:, 1]] - volume.vertices[faces[:, 0]],
                                volume.vertices[faces[:, 2]] - volume.vertices[faces[:, 0]])
        same_side = np.einsum('ij,ij->i', face_normals, surface.normals) > 0
        rows.append({'level': level, 'triangles': surface.n_triangles,
                     'boundary_faces': len(volume.boundary_faces),
                     'mismatched': int((~same_set).sum()), 'flipped': int((~same_side).sum())})
    frame = pd.DataFrame(rows)
    passed = bool((frame['mismatched'] == 0).all() and (frame['flipped'] == 0).all()
                  and (frame['triangles'] == frame['boundary_faces']).all())
    return CheckResult(passed=passed, values={'levels': ctx.levels}, samples=frame)
