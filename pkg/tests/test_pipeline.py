"""End-to-end tests of the command line and the run orchestration."""

import os
from types import SimpleNamespace

import numpy as np
import pytest
import yaml

from config import ConfigLoader, ConfigValidationError, RunConfig
from mesh.io import load_mesh
from mesh.surface import SurfaceMesh
from mesh.volume import VolumeMesh
from pipeline import check_source, runner
from pipeline.cli import build_parser, main
from pipeline.runner import EXIT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, run_config

PROBE_FILES = ['trace_ext0.csv', 'trace_surf0.csv', 'trace_vol0.csv']


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for name in ConfigLoader.env_mappings:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def error_lines(err: str, prefix: str):
    return [line for line in err.splitlines() if line.startswith(prefix)]


def small_run(tmp_path, name='run.yaml', directory='out', **sections) -> str:
    data = {
        'run': {'mode': 'solve', 'threads': 1, 'seed': 5},
        'mesh': {'sphere_level': 1, 'shells': 2},
        'grid': {'steps': 16, 'eps_cq': 1e-6},
        'observation': {'exterior_points': [[0.0, 0.0, 2.0]], 'interior_points': [],
                        'surface_probes': [0], 'volume_probes': [0]},
        'output': {'directory': str(tmp_path / directory), 'snapshots': [8]},
        'verify': {'level': 1, 'levels': [0, 1]},
        'logging': {'level': 'WARNING'},
    }
    for section, values in sections.items():
        data.setdefault(section, {}).update(values)
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data))
    return str(path)


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_mesh_command_writes_surface(tmp_path, capsys):
    out = str(tmp_path / 'sphere.surf')
    assert main(['mesh', '--sphere-level', '1', '--out', out]) == EXIT_OK
    assert 'Mesh written to' in capsys.readouterr().out
    mesh = load_mesh(out)
    assert isinstance(mesh, SurfaceMesh)
    assert mesh.n_triangles == 32


def test_mesh_command_writes_ball(tmp_path):
    out = str(tmp_path / 'ball.vol')
    assert main(['mesh', '--sphere-level', '0', '--out', out, '--volume', '--shells', '3']) == EXIT_OK
    mesh = load_mesh(out)
    assert isinstance(mesh, VolumeMesh)
    assert mesh.n_tetrahedra == 8 * 7


def test_mesh_command_reports_write_failure(tmp_path, capsys):
    blocker = tmp_path / 'file'
    blocker.write_text('')
    assert main(['mesh', '--sphere-level', '0', '--out', str(blocker / 'sphere.surf')]) == EXIT_ERROR
    assert capsys.readouterr().err


def test_invalid_config_exits_with_module(tmp_path, capsys):
    path = small_run(tmp_path, grid={'steps': 100})
    assert run_config(path) == EXIT_ERROR
    err = capsys.readouterr().err
    assert error_lines(err, '[config]') == ['[config] Configuration validation failed:']
    assert 'grid.steps must be a power of two >= 2, got 100' in err


def test_missing_mesh_file_exits_with_path(tmp_path, capsys):
    path = small_run(tmp_path, mesh={'volume_file': 'absent.vol'})
    assert main(['run', path]) == EXIT_ERROR
    assert str(tmp_path / 'absent.vol') in capsys.readouterr().err


def test_misplaced_probe_exits_with_field_module(tmp_path, capsys):
    path = small_run(tmp_path, observation={'exterior_points': [[0.0, 0.0, 0.0]]})
    assert run_config(path) == EXIT_ERROR
    assert len(error_lines(capsys.readouterr().err, '[field_eval]')) == 1


def test_solve_writes_every_output(tmp_path):
    path = small_run(tmp_path, output={'dump_matrices': True})
    assert main(['run', path]) == EXIT_OK
    files = set(os.listdir(tmp_path / 'out'))
    assert set(PROBE_FILES) <= files
    assert {'energy.csv', 'snapshot_8.vtk', 'bio_V.mtx', 'bio_W.mtx'} <= files


def test_solve_from_mesh_files(tmp_path):
    assert main(['mesh', '--sphere-level', '1', '--out', str(tmp_path / 'ball.vol'), '--volume']) == EXIT_OK
    path = small_run(tmp_path, mesh={'volume_file': 'ball.vol'}, output={'snapshots': []})
    assert run_config(path) == EXIT_OK
    assert set(PROBE_FILES) <= set(os.listdir(tmp_path / 'out'))


def test_repeated_runs_write_identical_traces(tmp_path):
    for name, directory in (('a.yaml', 'a'), ('b.yaml', 'b')):
        assert run_config(small_run(tmp_path, name, directory)) == EXIT_OK
    for probe in PROBE_FILES:
        first = (tmp_path / 'a' / probe).read_bytes()
        assert first == (tmp_path / 'b' / probe).read_bytes()
        assert b'\r' not in first


def test_failed_verification_exits_with_two(tmp_path, monkeypatch):
    monkeypatch.setattr(runner, 'verify', lambda config: SimpleNamespace(
        passed=False, summary=lambda: {'PASS': 0, 'FAIL': 1, 'REPORTED': 0, 'ERROR': 0}))
    assert main(['verify', small_run(tmp_path)]) == EXIT_VERIFICATION_FAILED


def test_passed_verification_exits_with_zero(tmp_path, monkeypatch):
    seen = []

    def fake_verify(config):
        seen.append(config.run.mode)
        return SimpleNamespace(passed=True, summary=lambda: {'PASS': 1})

    monkeypatch.setattr(runner, 'verify', fake_verify)
    assert main(['verify', small_run(tmp_path)]) == EXIT_OK
    assert seen == ['verify']


@pytest.mark.parametrize('error, prefix', [
    (OSError('disk full'), '[storage] OSError: disk full'),
    (np.linalg.LinAlgError('Singular matrix'), '[cli_pipeline] LinAlgError: Singular matrix'),
    (ValueError('bad shape'), '[cli_pipeline] ValueError: bad shape'),
])
def test_unexpected_failures_exit_with_one(tmp_path, monkeypatch, capsys, error, prefix):
    def broken_solve(config):
        raise error

    monkeypatch.setattr(runner, 'solve', broken_solve)
    assert main(['run', small_run(tmp_path)]) == EXIT_ERROR
    assert error_lines(capsys.readouterr().err, '[') == [prefix]


@pytest.mark.parametrize('source, message', [
    ([0.0, 0.0, 0.0], 'lies inside the scatterer'),
    ([0.2, -0.3, 0.1], 'lies inside the scatterer'),
    ([1.05, 0.0, 0.0], 'too close to the boundary'),
])
def test_point_source_must_lie_outside(sphere1, source, message):
    config = RunConfig.from_dict({'pulse': {'kind': 'point_source', 'source': source}})
    with pytest.raises(ConfigValidationError, match=message) as info:
        check_source(config, sphere1)
    assert str(info.value).startswith('[config] pulse.source')


def test_exterior_and_plane_wave_sources_are_accepted(sphere1):
    check_source(RunConfig.from_dict({'pulse': {'kind': 'point_source', 'source': [-3.0, 0.0, 0.0]}}), sphere1)
    check_source(RunConfig.from_dict({'pulse': {'kind': 'plane_wave', 'source': [0.0, 0.0, 0.0]}}), sphere1)


def test_interior_point_source_exits_with_config_module(tmp_path, capsys):
    path = small_run(tmp_path, pulse={'kind': 'point_source', 'source': [0.0, 0.0, 0.0]})
    assert main(['run', path]) == EXIT_ERROR
    lines = error_lines(capsys.readouterr().err, '[config]')
    assert len(lines) == 1
    assert 'pulse.source' in lines[0]
    assert not (tmp_path / 'out' / 'trace_ext0.csv').exists()
