"""
User Interface Module

Handles all terminal output:
- JSON lines with results and reports on standard output
- Status and diagnostics on standard error
- Fixed-width report tables for --pretty
"""

import json
import sys
from typing import Any, List

import click

from core.report import VerifyReport
from utils.helpers import truncate_text


class UserInterface:
    """Handles user interface interactions."""

    def __init__(self, config=None):
        """Initialize UI with configuration."""
        self.config = config
        self.debug_enabled = config.debug if config else False
        self.pretty = config.pretty if config else False

    def show_header(self):
        """Display application header."""
        click.echo("q-Deformed Modular Group Verification", err=True)
        click.echo("=" * 50, err=True)

    def show_step(self, step: int, total: int, message: str):
        """Display step progress."""
        progress = f"[{step}/{total}]"
        click.echo(f"{progress} {message}", err=True)

    def show_success(self, message: str):
        """Display success message."""
        click.echo(f"SUCCESS: {message}", err=True)

    def show_error(self, message: str):
        """Display error message."""
        click.echo(f"ERROR: {message}", err=True)

    def show_debug(self, message: str):
        """Display debug message if enabled."""
        if self.debug_enabled:
            click.echo(f"DEBUG: {message}", err=True)

    def show_json(self, payload: Any):
        """Write one JSON line on standard output."""
        click.echo(json.dumps(payload, ensure_ascii=False))

    def show_value(self, text: str):
        """Write a plain result line on standard output."""
        click.echo(text)

    def show_report(self, report: VerifyReport):
        """Display a suite report as a JSON line, or as a table with --pretty."""
        if not self.pretty:
            click.echo(report.to_json())
            return

        status = "PASS" if report.passed else "FAIL"
        click.echo(f"\n{report.suite} [{status}] {len(report.checks)} checks, {report.elapsed_ms} ms")
        click.echo("-" * 78)
        for check in report.checks:
            line = f"  {check.status.upper():4}  {truncate_text(check.name, 60)}"
            click.echo(line)
            if check.witness:
                click.echo(f"        {truncate_text(check.witness, 70)}")
            if check.detail:
                self.show_debug(f"{check.name}: {check.detail}")
        click.echo("-" * 78)

    def show_summary(self, reports: List[VerifyReport]):
        """Display totals over all suites on standard error."""
        failed = [report.suite for report in reports if not report.passed]
        total = sum(len(report.checks) for report in reports)
        if failed:
            self.show_error(f"{len(failed)} of {len(reports)} suites failed: {', '.join(failed)}")
        else:
            self.show_success(f"{len(reports)} suites passed ({total} checks)")

    def handle_keyboard_interrupt(self):
        """Handle Ctrl+C gracefully."""
        click.echo("\nOperation cancelled by user", err=True)
        sys.exit(130)
