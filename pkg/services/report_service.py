"""
Report Service
Renders identity reports as text or JSON Lines and writes them to stdout or a file.
"""

import json
import os
from typing import Iterable, List, Optional

from loguru import logger

from models.reports import IdentityReport, RunSummary
from models.run_config import OutputFormat


class ReportService:
    def __init__(
        self,
        fmt: OutputFormat = OutputFormat.TEXT,
        output_path: Optional[str] = None,
        stable: bool = False,
        show_passing: bool = True,
    ):
        """
        Args:
            fmt: text for people, json for one report object per line
            output_path: file to write instead of stdout
            stable: write elapsedMillis as 0 so repeated runs are byte-identical
            show_passing: include passing reports (failures are always written)
        """
        self.fmt = OutputFormat(fmt)
        self.output_path = os.path.abspath(output_path) if output_path else None
        self.stable = stable
        self.show_passing = show_passing

    def format_report(self, report: IdentityReport) -> str:
        if self.fmt == OutputFormat.JSON:
            return json.dumps(report.to_wire(self.stable), separators=(",", ":"))
        status = "PASS" if report.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
        line = f"{status} {report.identity_id}"
        if params:
            line += f" {params}"
        if report.cap is not None:
            line += f" cap={report.cap}"
        if not self.stable:
            line += f" ({report.elapsed_millis} ms)"
        details = []
        if report.first_mismatch_exp is not None:
            details.append(f"  sides differ first at q^{report.first_mismatch_exp}")
        if report.negative_witness is not None:
            details.append(f"  negative coefficient at q^{report.negative_witness}")
        if report.error is not None:
            details.append(f"  error: {report.error}")
        details.extend(f"  note: {note}" for note in report.notes)
        if not report.passed:
            if report.lhs is not None:
                details.append(f"  lhs: {report.lhs}")
            if report.rhs is not None:
                details.append(f"  rhs: {report.rhs}")
        return "\n".join([line] + details)

    def format_summary(self, summary: RunSummary) -> str:
        if self.fmt == OutputFormat.JSON:
            return json.dumps(summary.model_dump(), separators=(",", ":"))
        return (
            f"total={summary.total} passed={summary.passed} "
            f"failed={summary.failed} skipped={summary.skipped}"
        )

    def render(self, reports: Iterable[IdentityReport], summary: RunSummary) -> List[str]:
        lines = [self.format_report(r) for r in reports if self.show_passing or not r.passed]
        lines.append(self.format_summary(summary))
        return lines

    def write(self, reports: Iterable[IdentityReport], summary: RunSummary) -> None:
        """Write the report stream followed by the summary; raises OSError when the file cannot be written."""
        lines = self.render(reports, summary)
        if self.output_path is None:
            for line in lines:
                print(line)
            return
        with open(self.output_path, "w") as f:
            f.write("\n".join(lines) + "\n")
        logger.info("wrote {} report lines to {}", len(lines) - 1, self.output_path)
