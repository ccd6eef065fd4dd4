"""
Report Module

Pass/fail records produced by the verification suites.
"""

from dataclasses import dataclass, field
import json
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy.polys.fields import FracElement

from .errors import QDeformError
from .rings import format_ratfunc

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


def render(value: Any) -> str:
    """Text form of an exact or numeric value for witnesses."""
    if isinstance(value, FracElement):
        return format_ratfunc(value)
    return str(value)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity check."""

    name: str
    status: str
    witness: str = ""
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, str]:
        result = {'name': self.name, 'status': self.status, 'witness': self.witness}
        if self.detail:
            result['detail'] = self.detail
        return result


@dataclass
class VerifyReport:
    """All checks of one suite."""

    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def find(self, name: str) -> Optional[CheckResult]:
        for check in self.checks:
            if check.name == name:
                return check
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'checks': [check.to_dict() for check in self.checks],
            'elapsed_ms': self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


class CheckRecorder:
    """
    Collects the checks of a suite and times it.

    A failing identity never raises: it becomes a failing check. Errors of the
    library inside ``check`` are recorded the same way.
    """

    def __init__(self, suite: str):
        self.report = VerifyReport(suite)
        self._start = time.perf_counter()
        logger.debug("suite %s started", suite)

    def record(self, name: str, ok: bool, witness: str = "", detail: str = "") -> bool:
        if ok:
            self.report.checks.append(CheckResult(name, PASS, "", detail))
        else:
            witness = witness or "identity does not hold"
            self.report.checks.append(CheckResult(name, FAIL, witness, detail))
            logger.info("%s: check '%s' failed: %s", self.report.suite, name, witness)
        return ok

    def equal(self, name: str, actual: Any, expected: Any) -> bool:
        """Exact equality; the witness shows both sides (and their difference when exact)."""
        ok = actual == expected
        witness = ""
        if not ok:
            witness = f"expected {render(expected)}, got {render(actual)}"
            if isinstance(actual, FracElement) and isinstance(expected, FracElement) \
                    and actual.field == expected.field:
                witness += f", difference {render(actual - expected)}"
        return self.record(name, ok, witness)

    def check(self, name: str, fn: Callable[[], Tuple[bool, str]], detail: str = "") -> bool:
        """Run ``fn`` returning (ok, witness); exceptions become failures."""
        try:
            ok, witness = fn()
        except QDeformError as e:
            return self.record(name, False, f"{type(e).__name__}: {e}", detail)
        except Exception as e:
            logger.debug("%s: check '%s' raised", self.report.suite, name, exc_info=True)
            return self.record(name, False, f"unexpected {type(e).__name__}: {e}", detail)
        return self.record(name, ok, witness, detail)

    def extend(self, other: VerifyReport) -> None:
        self.report.checks.extend(other.checks)

    def finish(self) -> VerifyReport:
        self.report.elapsed_ms = int((time.perf_counter() - self._start) * 1000)
        logger.debug("suite %s finished in %d ms", self.report.suite, self.report.elapsed_ms)
        return self.report
