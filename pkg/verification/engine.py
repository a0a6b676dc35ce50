"""
Runs every registered property check and routes the outcomes to reporters.
"""

import logging
import time
from typing import Iterable, List, Optional

from model.errors import FsiError
from .context import VerificationContext
from .registry import PropertySpec, registered
from .report import CheckResult, PropertyReport
from .reporters import BaseReporter, ConsoleReporter, FileReporter

logger = logging.getLogger(__name__)


class VerificationEngine:
    """
    Executes property checks against one configuration. Individual failures
    and crashes are collected into reports, never raised.
    """

    def __init__(self, config, context: Optional[VerificationContext] = None,
                 reporters: Optional[List[BaseReporter]] = None):
        """
        Args:
            config (RunConfig): Run configuration; ``verify`` and ``run.seed`` drive the checks
            context: Pre-built shared inputs, mainly for tests
            reporters: Report destinations; defaults to console plus files in the output directory
        """
        self.config = config
        self.context = context or VerificationContext(config)
        self.reporters = reporters if reporters is not None else self._init_reporters(config.output)
        self.reports: List[PropertyReport] = []
        self._seen = set()

    def _init_reporters(self, output_config) -> List[BaseReporter]:
        reporters: List[BaseReporter] = [ConsoleReporter()]
        if output_config.directory:
            reporters.append(FileReporter(output_config.directory))
        return reporters

    def _record(self, report: PropertyReport):
        """Store one report and send it to every reporter, once per property name"""
        if report.name in self._seen:
            return
        self._seen.add(report.name)
        self.reports.append(report)

        log = logger.info if not report.failed else logger.error
        log(f"Property [{report.status}] {report.module}.{report.name}"
            + (f": {report.message}" if report.message else ''))
        for reporter in self.reporters:
            try:
                reporter.send(report)
            except Exception as e:
                logger.error(f"Reporter {reporter} failed: {e}")

    def run_check(self, spec: PropertySpec) -> PropertyReport:
        started = time.perf_counter()
        try:
            result = spec.func(self.context)
            if not isinstance(result, CheckResult):
                raise TypeError(f"check returned {type(result).__name__}, expected CheckResult")
            report = PropertyReport(
                name=spec.name, module=spec.module, passed=bool(result.passed),
                asserted=spec.asserted, seed=self.context.seed, values=result.values,
                frequencies=result.frequencies, samples=result.samples, message=result.message,
            )
        except FsiError as e:
            report = PropertyReport(spec.name, spec.module, False, spec.asserted,
                                    self.context.seed, message=str(e), error=True)
        except Exception as e:
            logger.exception(f"Check {spec.name} crashed")
            report = PropertyReport(spec.name, spec.module, False, spec.asserted,
                                    self.context.seed, message=f"{type(e).__name__}: {e}", error=True)
        report.elapsed = time.perf_counter() - started
        return report

    def run_all(self, names: Optional[Iterable[str]] = None) -> List[PropertyReport]:
        """
        Run every registered check, or only ``names``. Reports are returned
        in registry order.
        """
        specs = registered()
        selected = list(specs) if names is None else list(names)
        unknown = [name for name in selected if name not in specs]
        if unknown:
            raise ValueError(f"Unknown properties: {unknown}. Available: {sorted(specs)}")
        logger.info(f"Running {len(selected)} property check(s) with seed {self.context.seed}")
        for name in selected:
            self._record(self.run_check(specs[name]))
        for reporter in self.reporters:
            try:
                reporter.close()
            except Exception as e:
                logger.error(f"Reporter {reporter} failed to close: {e}")
        return self.reports

    @property
    def passed(self) -> bool:
        return not any(report.failed for report in self.reports)

    def summary(self) -> dict:
        statuses = [report.status for report in self.reports]
        return {status: statuses.count(status) for status in ('PASS', 'FAIL', 'REPORTED', 'ERROR')}
