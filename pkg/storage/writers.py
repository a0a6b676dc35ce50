"""
Run outputs on disk: probe traces, verification report, raw samples,
energy series, volume snapshots and debug matrices.
"""

import logging
import os
import threading
from typing import Dict, Iterable, List, Optional, Sequence

import meshio
import numpy as np
import pandas as pd
from scipy.io import mmwrite

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.16e'
REPORT_FILE = 'report.txt'
SAMPLES_FILE = 'samples.csv'
ENERGY_FILE = 'energy.csv'


def format_trace(frame: pd.DataFrame) -> str:
    """CSV text of one probe trace; the exact bytes written to trace_<probe>.csv"""
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def _ensure(directory: str) -> str:
    os.makedirs(directory, exist_ok=True)
    return directory


def write_report(directory: str, reports: Sequence) -> str:
    """One key = value block per property, blank-line separated"""
    path = os.path.join(_ensure(directory), REPORT_FILE)
    failed = sum(1 for report in reports if report.failed)
    header = [
        "# verification report",
        f"properties = {len(reports)}",
        f"failed = {failed}",
        f"status = {'PASS' if failed == 0 else 'FAIL'}",
    ]
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write("\n".join(header) + "\n\n")
        handle.write("\n\n".join(report.to_block() for report in reports) + "\n")
    return path


def write_samples(directory: str, reports: Sequence) -> Optional[str]:
    """Raw sample tables of every report stacked with a ``property`` column"""
    tables = []
    for report in reports:
        if report.samples is None or report.samples.empty:
            continue
        table = report.samples.copy()
        table.insert(0, 'property', report.name)
        tables.append(table)
    if not tables:
        return None
    path = os.path.join(_ensure(directory), SAMPLES_FILE)
    pd.concat(tables, ignore_index=True, sort=False).to_csv(path, index=False, lineterminator='\n')
    return path


class OutputManager:
    """
    Writes the files of one run into a single directory, creating it on
    first use.
    """

    def __init__(self, directory: str):
        self.directory = directory
        self._lock = threading.Lock()
        self._initialized = False
        self.written: List[str] = []

    def initialize(self):
        if self._initialized:
            return
        with self._lock:
            if self._initialized:
                return
            _ensure(self.directory)
            self._initialized = True
            logger.info(f"Writing outputs to {os.path.abspath(self.directory)}")

    def _path(self, name: str) -> str:
        self.initialize()
        path = os.path.join(self.directory, name)
        self.written.append(path)
        return path

    def write_trace(self, name: str, frame: pd.DataFrame) -> str:
        path = self._path(f"trace_{name}.csv")
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(format_trace(frame))
        return path

    def write_traces(self, frames: Dict[str, pd.DataFrame]) -> List[str]:
        """
        Store every probe trace

        Returns:
            list: Paths written, in probe order
        """
        paths = []
        for name, frame in frames.items():
            try:
                paths.append(self.write_trace(name, frame))
            except OSError as e:
                logger.error(f"Failed to write trace {name}: {e}")
                raise
        logger.info(f"Stored {len(paths)} probe trace(s)")
        return paths

    def write_energy(self, frame: pd.DataFrame) -> str:
        path = self._path(ENERGY_FILE)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return path

    def write_report(self, reports: Sequence) -> str:
        self.initialize()
        path = write_report(self.directory, reports)
        self.written.append(path)
        return path

    def write_snapshots(self, volume, displacement, steps: Iterable[int]) -> List[str]:
        """
        Legacy ASCII VTK of the displacement at the requested steps; steps
        beyond the horizon are skipped with a warning.
        """
        samples = displacement.samples
        cells = [('tetra', np.asarray(volume.tetrahedra))]
        paths = []
        for step in steps:
            step = int(step)
            if not 0 <= step < samples.shape[0]:
                logger.warning(f"Snapshot step {step} outside 0..{samples.shape[0] - 1}, skipped")
                continue
            mesh = meshio.Mesh(
                np.asarray(volume.vertices), cells,
                point_data={'u': samples[step].reshape(-1, 3)},
            )
            path = self._path(f"snapshot_{step}.vtk")
            meshio.write(path, mesh, file_format='vtk', binary=False)
            paths.append(path)
        if paths:
            logger.info(f"Stored {len(paths)} volume snapshot(s)")
        return paths

    def dump_matrices(self, bio, prefix: str = 'bio') -> List[str]:
        """Boundary matrices in Matrix Market complex format"""
        paths = []
        for name, matrix in bio.available().items():
            path = self._path(f"{prefix}_{name}.mtx")
            mmwrite(path, np.asarray(matrix), comment=f"s = {bio.frequency.s}")
            paths.append(path)
        logger.info(f"Dumped {len(paths)} boundary matri{'x' if len(paths) == 1 else 'ces'} "
                    f"at s={bio.frequency.s:.4g}")
        return paths
