"""Check recording and report serialization."""

import json

from core.errors import QDeformError
from core.report import FAIL, PASS, CheckRecorder, VerifyReport
from core.rings import q


class TestCheckRecorder:
    def test_passing_and_failing(self):
        recorder = CheckRecorder("demo")
        assert recorder.record("holds", True)
        assert not recorder.record("breaks", False, "x=1")
        report = recorder.finish()
        assert [c.status for c in report.checks] == [PASS, FAIL]
        assert not report.passed
        assert report.failures()[0].witness == "x=1"

    def test_failure_gets_a_default_witness(self):
        recorder = CheckRecorder("demo")
        recorder.record("breaks", False)
        assert recorder.finish().checks[0].witness

    def test_equal_shows_difference(self):
        recorder = CheckRecorder("demo")
        recorder.equal("q+1", q + 2, q + 1)
        witness = recorder.finish().checks[0].witness
        assert witness == "expected q+1, got q+2, difference 1"

    def test_errors_become_failures(self):
        def broken():
            raise QDeformError("no luck")

        recorder = CheckRecorder("demo")
        assert not recorder.check("raises", broken)
        assert recorder.finish().checks[0].witness == "QDeformError: no luck"

    def test_unexpected_errors_become_failures(self):
        def mixed_fields():
            raise TypeError("unsupported operand")

        recorder = CheckRecorder("demo")
        assert not recorder.check("raises", mixed_fields)
        assert recorder.finish().checks[0].witness == "unexpected TypeError: unsupported operand"

    def test_extend(self):
        inner = CheckRecorder("inner")
        inner.record("a", True)
        outer = CheckRecorder("outer")
        outer.extend(inner.finish())
        report = outer.finish()
        assert report.suite == "outer"
        assert report.find("a").passed
        assert report.find("b") is None


class TestVerifyReport:
    def test_json(self):
        recorder = CheckRecorder("demo")
        recorder.record("holds", True, detail="12 triples")
        report = recorder.finish()
        payload = json.loads(report.to_json())
        assert payload['suite'] == "demo"
        assert payload['checks'] == [
            {'name': "holds", 'status': "pass", 'witness': "", 'detail': "12 triples"},
        ]
        assert payload['elapsed_ms'] >= 0

    def test_empty_report_passes(self):
        assert VerifyReport("empty").passed
