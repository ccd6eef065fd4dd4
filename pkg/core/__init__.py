"""
Core functionality for the q-deformed modular group toolkit.
"""

from .config import Config
from .errors import QDeformError
from .report import CheckResult, VerifyReport
from .suites import SUITE_NAMES, run_suite

__all__ = ['Config', 'QDeformError', 'CheckResult', 'VerifyReport', 'SUITE_NAMES', 'run_suite']
