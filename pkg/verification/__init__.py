"""
Property-based verification suite
Registered checks for every package, run by the VerificationEngine and
reported to the console and to report.txt / samples.csv
"""

from .context import VerificationContext
from .engine import VerificationEngine
from .fitting import PowerFit, fit_class_exponent, fit_power_law, observed_orders, reduction_factors
from .registry import EXPECTED_PROPERTIES, PropertySpec, check_completeness, register, registered
from .report import CheckResult, PropertyReport
from .reporters import BaseReporter, ConsoleReporter, FileReporter

__all__ = [
    'VerificationContext',
    'VerificationEngine',
    'PowerFit',
    'fit_class_exponent',
    'fit_power_law',
    'observed_orders',
    'reduction_factors',
    'EXPECTED_PROPERTIES',
    'PropertySpec',
    'check_completeness',
    'register',
    'registered',
    'CheckResult',
    'PropertyReport',
    'BaseReporter',
    'ConsoleReporter',
    'FileReporter',
]
