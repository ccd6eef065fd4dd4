"""Suite registry and dispatch by name."""

import pytest

from core.config import Config
from core.errors import QDeformError
from core.suites import SUITE_NAMES, SUITES, resolve, run_suite


@pytest.fixture
def params():
    return Config().override(window=3, order=10, corpus=5).suite_params()


class TestResolve:
    def test_single(self):
        assert resolve('sl2') == ['sl2']

    def test_all(self):
        assert resolve('all') == SUITE_NAMES
        assert len(SUITE_NAMES) == 11

    def test_unknown(self):
        with pytest.raises(QDeformError, match="unknown suite"):
            resolve('hodge')


class TestRunSuite:
    @pytest.mark.parametrize("name", ['moebius', 'qrationals', 'sl2', 'witt', 'jacobi', 'heisenberg',
                                      'modsquare', 'rep2', 'series'])
    def test_exact_suites_pass(self, name, params):
        report = run_suite(name, params)
        assert report.suite == name
        assert report.passed, [c.to_dict() for c in report.failures()]

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ['opalg', 'flows'])
    def test_longer_suites_pass(self, name, params):
        assert run_suite(name, params).passed

    def test_escaping_error_becomes_a_failed_check(self, params):
        params['window'] = 1
        report = run_suite('witt', params)
        assert not report.passed
        check = report.checks[0]
        assert check.name == "suite could run"
        assert check.witness.startswith("PreconditionError")

    def test_unexpected_error_becomes_a_failed_check(self, params, monkeypatch):
        def broken(p):
            raise TypeError("unsupported operand")

        monkeypatch.setitem(SUITES, 'sl2', broken)
        report = run_suite('sl2', params)
        assert not report.passed
        assert report.checks[0].witness == "unexpected TypeError: unsupported operand"

    def test_modsquare_widens_small_windows(self, params):
        params['window'] = 2
        assert run_suite('modsquare', params).passed
