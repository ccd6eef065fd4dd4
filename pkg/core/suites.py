"""
Suites Module

Registry of the verification suites run by ``verify``. Each entry maps a suite
name to a callable taking the run parameters, so a suite can be shipped to a
worker process by name.
"""

import logging
from typing import Any, Callable, Dict, List

from .errors import QDeformError
from .flows import flows_suite
from .lieverify import (
    heisenberg_check,
    iso_and_rep2_check,
    jacobi_abstract,
    mod_square_experiments,
    sl2_theorem_check,
    witt_theorem_check,
)
from .moebius import identity_suite
from .opalg import opalg_suite
from .qrationals import qrationals_suite
from .report import CheckRecorder, VerifyReport
from .series import series_suite

logger = logging.getLogger(__name__)

Params = Dict[str, Any]

SUITES: Dict[str, Callable[[Params], VerifyReport]] = {
    'moebius': lambda p: identity_suite(p['seed']),
    'qrationals': lambda p: qrationals_suite(p['corpus']),
    'opalg': lambda p: opalg_suite(p['seed'], max(8, p['window'])),
    'sl2': lambda p: sl2_theorem_check(),
    'witt': lambda p: witt_theorem_check(p['window']),
    'jacobi': lambda p: jacobi_abstract(p['window']),
    'heisenberg': lambda p: heisenberg_check(),
    'modsquare': lambda p: mod_square_experiments(max(3, p['window'])),
    'rep2': lambda p: iso_and_rep2_check(),
    'series': lambda p: series_suite(p['order']),
    'flows': lambda p: flows_suite(p['seed'], p['tol_group'], p['tol_generator'],
                                   p['tol_taylor'], p['tol_fixed']),
}

SUITE_NAMES: List[str] = list(SUITES)


def resolve(name: str) -> List[str]:
    """Suite names for a ``verify`` argument; "all" expands to every suite."""
    if name == 'all':
        return list(SUITE_NAMES)
    if name not in SUITES:
        raise QDeformError(f"unknown suite '{name}', expected one of: {', '.join(SUITE_NAMES + ['all'])}")
    return [name]


def run_suite(name: str, params: Params) -> VerifyReport:
    """
    Run one suite by name.

    An error that escapes the suite (a precondition on the window, for
    example) is turned into a single failing check.
    """
    logger.info("running suite %s", name)
    try:
        return SUITES[name](params)
    except QDeformError as e:
        recorder = CheckRecorder(name)
        recorder.record("suite could run", False, f"{type(e).__name__}: {e}")
        return recorder.finish()
    except Exception as e:
        logger.debug("suite %s raised", name, exc_info=True)
        recorder = CheckRecorder(name)
        recorder.record("suite could run", False, f"unexpected {type(e).__name__}: {e}")
        return recorder.finish()
