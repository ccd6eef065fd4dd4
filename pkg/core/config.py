"""
Configuration Module

Centralized configuration for the verification runs.
"""

import os
from typing import Any, Callable, List, Optional


def parse_environment_bool(value: Optional[str], default: bool = False) -> bool:
    """Read a boolean environment value ("1", "true", "yes", "on")."""
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Settings shared by the CLI and the suites."""

    def __init__(self):
        """Initialize configuration with defaults and environment overrides."""
        self.problems: List[str] = []

        # Index window and series order
        self.window = self._read('QDEFORM_WINDOW', 6, int)
        self.order = self._read('QDEFORM_ORDER', 50, int)
        self.corpus = self._read('QDEFORM_CORPUS', 40, int)

        # Randomized checks and parallelism
        self.seed = self._read('QDEFORM_SEED', 0, int)
        self.jobs = self._read('QDEFORM_JOBS', os.cpu_count() or 1, int)

        # Numeric tolerances
        self.tol_group = self._read('QDEFORM_TOL_GROUP', 1e-9, float)
        self.tol_generator = self._read('QDEFORM_TOL_GENERATOR', 1e-6, float)
        self.tol_taylor = self._read('QDEFORM_TOL_TAYLOR', 1e-10, float)
        self.tol_fixed = self._read('QDEFORM_TOL_FIXED', 1e-12, float)

        # Output settings
        self.pretty = parse_environment_bool(os.getenv('QDEFORM_PRETTY'))
        self.debug = parse_environment_bool(os.getenv('QDEFORM_DEBUG'))

    def _read(self, name: str, default: Any, kind: Callable[[str], Any]) -> Any:
        """Environment value of ``name``; a malformed one is noted for validate() and the default kept."""
        raw = os.getenv(name)
        if raw is None:
            return default
        try:
            return kind(raw.strip())
        except ValueError:
            expected = "an integer" if kind is int else "a number"
            self.problems.append(f"{name} must be {expected}, got '{raw}'")
            return default

    def validate(self) -> tuple[bool, Optional[str]]:
        """
        Validate configuration settings.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if self.problems:
            return False, self.problems[0]

        if self.window < 2:
            return False, f"Window must be at least 2, got {self.window}"

        if self.order < 1:
            return False, f"Order must be positive, got {self.order}"

        if self.corpus < 1:
            return False, f"Corpus bound must be positive, got {self.corpus}"

        if self.jobs < 1:
            return False, f"Jobs must be positive, got {self.jobs}"

        for name in ('tol_group', 'tol_generator', 'tol_taylor', 'tol_fixed'):
            if not getattr(self, name) > 0:
                return False, f"Tolerance {name} must be positive, got {getattr(self, name)}"

        return True, None

    def override(self, **values: Any) -> "Config":
        """Apply the options given on the command line; None means not given."""
        for key, value in values.items():
            if not hasattr(self, key):
                raise AttributeError(f"unknown setting '{key}'")
            if value is not None:
                setattr(self, key, value)
        return self

    def suite_params(self) -> dict:
        """The settings the suites read."""
        return {
            'window': self.window,
            'order': self.order,
            'corpus': self.corpus,
            'seed': self.seed,
            'tol_group': self.tol_group,
            'tol_generator': self.tol_generator,
            'tol_taylor': self.tol_taylor,
            'tol_fixed': self.tol_fixed,
        }

    def to_dict(self) -> dict:
        """Convert configuration to dictionary."""
        result = self.suite_params()
        result.update({'jobs': self.jobs, 'pretty': self.pretty, 'debug': self.debug})
        return result

    def __str__(self) -> str:
        """String representation of configuration."""
        return "\n".join(f"{key}: {value}" for key, value in self.to_dict().items())
