"""
Destinations for property reports.
"""

import logging
from typing import List

from storage.writers import write_report, write_samples
from .report import PropertyReport

logger = logging.getLogger(__name__)


class BaseReporter:
    def send(self, report: PropertyReport):
        raise NotImplementedError("Send method not implemented")

    def close(self):
        pass


class ConsoleReporter(BaseReporter):
    def send(self, report: PropertyReport):
        print(f"[{report.status}] {report.module}.{report.name} ({report.elapsed:.1f}s)"
              + (f": {report.message}" if report.message and report.status != 'PASS' else ''))


class FileReporter(BaseReporter):
    """Collects reports and writes report.txt and samples.csv on close"""

    def __init__(self, directory: str):
        self.directory = directory
        self.reports: List[PropertyReport] = []

    def send(self, report: PropertyReport):
        self.reports.append(report)

    def close(self):
        path = write_report(self.directory, self.reports)
        samples_path = write_samples(self.directory, self.reports)
        logger.info(f"Verification report written to {path}"
                    + (f", raw samples to {samples_path}" if samples_path else ''))
