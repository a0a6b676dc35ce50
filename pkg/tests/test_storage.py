"""Tests for trace, report, snapshot and matrix output files."""

import os

import meshio
import numpy as np
import pandas as pd
import pytest
from scipy.io import mmread

from bem.assembly import BoundaryAssembler
from model.signal import TimeSignal
from storage import OutputManager, format_trace, get_output, store_traces, write_report, write_samples
from verification.report import PropertyReport


@pytest.fixture
def frame():
    return pd.DataFrame({'t': [0.0, 0.5], 're_value': [1.0, 2.5]})


@pytest.fixture
def output(tmp_path):
    return OutputManager(str(tmp_path / 'out'))


def test_trace_format_uses_full_precision(frame):
    assert format_trace(frame) == (
        "t,re_value\n"
        "0.0000000000000000e+00,1.0000000000000000e+00\n"
        "5.0000000000000000e-01,2.5000000000000000e+00\n"
    )


def test_traces_are_written_per_probe(output, frame):
    paths = output.write_traces({'ext0': frame, 'surf1': frame})
    assert [os.path.basename(p) for p in paths] == ['trace_ext0.csv', 'trace_surf1.csv']
    with open(paths[0], encoding='utf-8') as handle:
        assert handle.read() == format_trace(frame)
    assert output.written == paths


def test_trace_write_failure_is_raised(tmp_path, frame):
    blocker = tmp_path / 'taken'
    blocker.write_text('not a directory')
    with pytest.raises(OSError):
        OutputManager(str(blocker)).write_traces({'ext0': frame})


def test_energy_file(output):
    energy = pd.DataFrame({'t': [0.0, 1.0], 'kinetic': [0.0, 0.5], 'strain': [0.0, 0.25],
                           'total': [0.0, 0.75]})
    path = output.write_energy(energy)
    assert os.path.basename(path) == 'energy.csv'
    np.testing.assert_allclose(pd.read_csv(path)['total'], [0.0, 0.75])


def test_report_header_and_blocks(tmp_path):
    reports = [PropertyReport('skew_coupling', 'coupled_solver', True, seed=3),
               PropertyReport('cq_order', 'cq_engine', False, seed=3, message='order 1.2')]
    path = write_report(str(tmp_path / 'r'), reports)
    text = open(path, encoding='utf-8').read()
    assert text.startswith("# verification report\nproperties = 2\nfailed = 1\nstatus = FAIL\n\n")
    assert '[skew_coupling]\nmodule = coupled_solver\nstatus = PASS' in text
    assert 'message = order 1.2' in text
    assert text.endswith('\n')


def test_samples_are_stacked_with_property_column(tmp_path):
    reports = [
        PropertyReport('a', 'mesh', True, samples=pd.DataFrame({'level': [0, 1], 'area': [1.0, 2.0]})),
        PropertyReport('b', 'mesh', True),
        PropertyReport('c', 'mesh', True, samples=pd.DataFrame({'level': [2], 'error': [0.1]})),
    ]
    path = write_samples(str(tmp_path), reports)
    table = pd.read_csv(path)
    assert list(table.columns[:2]) == ['property', 'level']
    assert table['property'].tolist() == ['a', 'a', 'c']
    assert np.isnan(table.loc[2, 'area'])


def test_samples_skipped_when_empty(tmp_path):
    assert write_samples(str(tmp_path), [PropertyReport('a', 'mesh', True)]) is None
    assert not os.path.exists(tmp_path / 'samples.csv')


def test_snapshots_read_back(output, spaces1):
    volume = spaces1.volume
    rng = np.random.default_rng(2)
    samples = rng.standard_normal((4, 3 * volume.n_vertices))
    displacement = TimeSignal(0.1, samples, causal=False)
    paths = output.write_snapshots(volume, displacement, [1, 3, 9])
    assert [os.path.basename(p) for p in paths] == ['snapshot_1.vtk', 'snapshot_3.vtk']
    mesh = meshio.read(paths[1])
    np.testing.assert_allclose(mesh.points, volume.vertices, atol=1e-6)
    np.testing.assert_allclose(mesh.point_data['u'], samples[3].reshape(-1, 3), rtol=1e-6, atol=1e-9)
    assert mesh.cells_dict['tetra'].shape == (volume.n_tetrahedra, 4)


def test_matrix_dump(output, sphere1, settings):
    bio = BoundaryAssembler(sphere1, settings).assemble(2.0 + 1.0j, operators=('V', 'K'))
    paths = output.dump_matrices(bio)
    assert sorted(os.path.basename(p) for p in paths) == ['bio_K.mtx', 'bio_V.mtx']
    V = mmread(next(p for p in paths if p.endswith('bio_V.mtx')))
    np.testing.assert_allclose(V, bio.V, rtol=1e-12)


def test_output_manager_is_shared_per_directory(tmp_path, frame):
    first = get_output(str(tmp_path / 'a'))
    assert get_output() is first
    assert get_output(str(tmp_path / 'a')) is first
    second = get_output(str(tmp_path / 'b'))
    assert second is not first
    paths = store_traces({'vol0': frame}, str(tmp_path / 'b'))
    assert os.path.exists(paths[0])
