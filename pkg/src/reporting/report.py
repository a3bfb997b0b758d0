"""Suite reports as JSON, fixed-width tables and CSV."""

import csv
import io
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from ..suites import SuiteResult
from ..utils import get_logger

logger = get_logger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"
FORMATS = ("json", "table", "csv")
CSV_HEADER = ["suite", "name", "residual", "tolerance", "pass", "note"]


class ReportRenderer:
    """Render SuiteResults in one of the supported formats."""

    def __init__(self):
        self.env = Environment(
            loader=FileSystemLoader(TEMPLATES_DIR),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def render(self, result: SuiteResult, fmt: str = "json") -> str:
        if fmt == "json":
            return result.to_json() + "\n"
        if fmt == "table":
            return self.render_table(result)
        if fmt == "csv":
            return self.render_csv(result)
        raise ValueError(f"Unknown report format '{fmt}'; expected one of {', '.join(FORMATS)}")

    def render_table(self, result: SuiteResult) -> str:
        template = self.env.get_template("table.txt.j2")
        width = max([len("check")] + [len(check.name) for check in result.checks])
        return template.render(
            result=result,
            width=width,
            failed=len(result.failed_checks),
            total=len(result.checks),
        )

    def render_csv(self, result: SuiteResult) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for check in result.checks:
            writer.writerow([
                result.suite,
                check.name,
                repr(check.residual),
                repr(check.tolerance),
                "true" if check.passed else "false",
                check.note,
            ])
        return buffer.getvalue()


def emit_report(result: SuiteResult, fmt: str = "json") -> str:
    """Render a suite result as text."""
    logger.debug(f"[report] rendering {result.suite} as {fmt}")
    return ReportRenderer().render(result, fmt)
