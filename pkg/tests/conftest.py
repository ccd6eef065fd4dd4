"""Shared fixtures."""

import random

import pytest
from click.testing import CliRunner

SETTINGS = ('WINDOW', 'ORDER', 'CORPUS', 'SEED', 'JOBS', 'TOL_GROUP', 'TOL_GENERATOR',
            'TOL_TAYLOR', 'TOL_FIXED', 'PRETTY', 'DEBUG')


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Runs every test against the built-in defaults."""
    for name in SETTINGS:
        monkeypatch.delenv(f'QDEFORM_{name}', raising=False)
