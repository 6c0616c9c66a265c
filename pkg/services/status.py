"""Report rendering for the verify command"""
import json
from typing import Any, Dict

from rich.table import Table
from rich.text import Text

from utils.constants import SUITES, CheckStatus, StatusColors
from utils.report import Check, Report

WITNESS_WIDTH = 72


class ReportTable:
    """Builds the rich summary of a report"""

    def __init__(self, report: Report, show_passed: bool = True):
        self.report = report
        self.show_passed = show_passed

    def generate_table(self) -> Table:
        """Generate the check table for display"""
        title = SUITES.get(self.report.suite, ("All suites", ""))[0]
        table = Table(title=f"{title} ({self.report.suite})")

        table.add_column("Check", style="cyan")
        table.add_column("Status")
        table.add_column("Witness", style=StatusColors.NEUTRAL, overflow="fold")

        self._add_checks(table)
        self._add_summary(table)
        return table

    def _add_checks(self, table: Table):
        for check in self.report.checks:
            if check.status is CheckStatus.PASS and not self.show_passed:
                continue
            table.add_row(check.id, self._status_text(check), _witness_summary(check.witness))

    def _add_summary(self, table: Table):
        counts = self.report.counts()
        table.add_section()
        verdict = "PASS" if self.report.passed else "FAIL"
        summary = ", ".join(f"{n} {status}" for status, n in counts.items() if n)
        table.add_row(
            Text("Overall", style="bold"),
            Text(verdict, style=f"bold {StatusColors.for_status(verdict)}"),
            Text(summary or "no checks", style=StatusColors.INFO),
        )
        config_hash = self.report.versions.get("config")
        if config_hash:
            table.add_row("Config hash", "", Text(config_hash[:16], style=StatusColors.HIGHLIGHT))

    @staticmethod
    def _status_text(check: Check) -> Text:
        return Text(check.status.value, style=StatusColors.for_status(check.status))


def _witness_summary(witness: Dict[str, Any]) -> str:
    if not witness:
        return ""
    body = json.dumps(Check("", CheckStatus.PASS, witness).to_dict()["witness"], sort_keys=True)
    return body if len(body) <= WITNESS_WIDTH else body[:WITNESS_WIDTH - 3] + "..."
