"""Report rendering."""

from .report import CSV_HEADER, FORMATS, ReportRenderer, emit_report

__all__ = ["CSV_HEADER", "FORMATS", "ReportRenderer", "emit_report"]
