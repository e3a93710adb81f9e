"""Report emission in XML, TXT, CSV, and HTML.

All four formats agree on finding counts and per-category totals, and are
byte-deterministic once the report timestamp is injected.
"""

from __future__ import annotations

import csv
import html
import io
from xml.etree import ElementTree as ET

from ..errors import OverrunLintError
from ..runtime.coverage import STATUS_COLORS
from .report import Report, coverage_percent, pattern_of

CSV_HEADER = ["file", "line", "rule_id", "category", "priority", "rank", "confidence", "message"]

FORMATS = ("xml", "txt", "csv", "html")


class IoError(OverrunLintError):
    pass


def emit_report(report: Report, format: str, out: str | None = None) -> str:
    if format == "xml":
        document = _emit_xml(report)
    elif format == "txt":
        document = _emit_txt(report)
    elif format == "csv":
        document = _emit_csv(report)
    elif format == "html":
        document = _emit_html(report)
    else:
        raise OverrunLintError(f"unknown report format {format!r}")
    if out is not None:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(document)
        except OSError as err:
            raise IoError(f"cannot write report to {out}: {err}") from err
    return document


def _emit_xml(report: Report) -> str:
    root = ET.Element(
        "report",
        {"tool": "overrun-lint", "version": report.tool_version, "generated": report.generated_at},
    )
    findings = ET.SubElement(root, "findings", {"count": str(len(report.findings))})
    for marker, finding in enumerate(report.findings, start=1):
        ET.SubElement(
            findings,
            "finding",
            {
                "markerId": str(marker),
                "BUGTYPE": finding.rule_id,
                "PATTERN": pattern_of(finding),
                "file": finding.span.file,
                "lineNumber": str(finding.span.line),
                "priority": str(finding.priority),
                "priorityColor": finding.priority_color,
                "RANK": str(finding.rank),
                "rankBand": finding.rank_band,
                "confidence": finding.confidence,
                "category": finding.category,
                "triage": finding.triage,
                "message": finding.message,
            },
        )
    categories = ET.SubElement(root, "categories")
    for name, count in report.category_summary.items():
        ET.SubElement(categories, "category", {"name": name, "count": str(count)})
    if report.coverage is not None:
        coverage = ET.SubElement(root, "coverage")
        for counter in report.coverage.counters:
            ET.SubElement(
                coverage,
                "counter",
                {
                    "kind": counter.kind,
                    "covered": str(counter.covered),
                    "missed": str(counter.missed),
                },
            )
    if report.metrics_rows:
        metrics = ET.SubElement(root, "metrics")
        for row in report.metrics_rows:
            ET.SubElement(
                metrics,
                "element",
                {
                    "name": row.element,
                    "kind": row.kind,
                    "coverage": f"{row.percent} %",
                    "coveredComplexity": str(row.covered),
                    "missedComplexity": str(row.missed),
                    "totalComplexity": str(row.total),
                },
            )
    buffer = io.BytesIO()
    ET.ElementTree(root).write(buffer, encoding="utf-8", xml_declaration=True)
    return buffer.getvalue().decode("utf-8") + "\n"


def _emit_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for finding in report.findings:
        writer.writerow(
            [
                finding.span.file,
                finding.span.line,
                finding.rule_id,
                finding.category,
                finding.priority,
                finding.rank,
                finding.confidence,
                finding.message,
            ]
        )
    return buffer.getvalue()


def _emit_txt(report: Report) -> str:
    lines = [
        f"overrun-lint {report.tool_version} report (generated {report.generated_at})",
        f"{len(report.findings)} finding(s)",
        "",
    ]
    for finding in report.findings:
        lines.append(
            f"{finding.span.file}:{finding.span.line}:{finding.span.column}: "
            f"[P{finding.priority}/{finding.priority_color} rank {finding.rank}/"
            f"{finding.rank_band} {finding.confidence}] {finding.rule_id} "
            f"({finding.category}): {finding.message}"
        )
    if report.findings:
        lines.append("")
        lines.append("findings by category:")
        for name, count in report.category_summary.items():
            lines.append(f"  {name}: {count}")
    if report.coverage is not None:
        lines.append("")
        lines.append("coverage counters:")
        for counter in report.coverage.counters:
            pct = (
                coverage_percent(counter.covered, counter.missed)
                if counter.total
                else 0.0
            )
            lines.append(
                f"  {counter.kind}: covered {counter.covered}, missed {counter.missed} ({pct} %)"
            )
    if report.metrics_rows:
        lines.append("")
        lines.extend(render_metrics_table(report.metrics_rows))
    return "\n".join(lines) + "\n"


def render_metrics_table(rows) -> list[str]:
    header = ("Element", "Coverage", "Covered Complexity", "Missed Complexity", "Total Complexity")
    table = [header]
    for row in rows:
        indent = {"project": "", "file": "  ", "class": "    ", "method": "      "}[row.kind]
        table.append(
            (
                indent + row.element,
                f"{row.percent} %",
                str(row.covered),
                str(row.missed),
                str(row.total),
            )
        )
    widths = [max(len(r[i]) for r in table) for i in range(5)]
    out = []
    for r in table:
        out.append(
            "  ".join(cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i]) for i, cell in enumerate(r))
        )
    return out


_HTML_CSS = """\
body { font-family: sans-serif; }
table { border-collapse: collapse; }
td, th { border: 1px solid #999; padding: 2px 8px; }
tr.p1 td.prio { background: #e05050; color: white; }
tr.p2 td.prio { background: #f0a050; }
tr.p3 td.prio { background: #f0e050; }
tr.p4 td.prio { background: #70c070; }
tr.p5 td.prio { background: #7090e0; }
pre.source span.red { background: #f4c7c3; display: inline-block; width: 100%; }
pre.source span.yellow { background: #fce8b2; display: inline-block; width: 100%; }
pre.source span.green { background: #b7e1cd; display: inline-block; width: 100%; }
"""


def _emit_html(report: Report) -> str:
    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset=\"utf-8\"/>",
        "<title>overrun-lint report</title>",
        f"<style>{_HTML_CSS}</style>",
        "</head><body>",
        f"<h1>overrun-lint {html.escape(report.tool_version)}</h1>",
        f"<p>generated {html.escape(report.generated_at)}; {len(report.findings)} finding(s)</p>",
        "<table><tr><th>file</th><th>line</th><th>priority</th><th>rank</th>"
        "<th>confidence</th><th>rule</th><th>category</th><th>message</th></tr>",
    ]
    for finding in report.findings:
        parts.append(
            f'<tr class="p{finding.priority}">'
            f"<td>{html.escape(finding.span.file)}</td>"
            f"<td>{finding.span.line}</td>"
            f'<td class="prio">{finding.priority} ({finding.priority_color})</td>'
            f"<td>{finding.rank} ({finding.rank_band.replace('_', ' ')})</td>"
            f"<td>{finding.confidence}</td>"
            f"<td>{html.escape(finding.rule_id)}</td>"
            f"<td>{html.escape(finding.category)}</td>"
            f"<td>{html.escape(finding.message)}</td></tr>"
        )
    parts.append("</table>")
    if report.coverage is not None:
        parts.append("<h2>Coverage</h2><table><tr><th>counter</th><th>covered</th><th>missed</th></tr>")
        for counter in report.coverage.counters:
            parts.append(
                f"<tr><td>{counter.kind}</td><td>{counter.covered}</td><td>{counter.missed}</td></tr>"
            )
        parts.append("</table>")
        for file, source in sorted(report.sources.items()):
            parts.append(f"<h3>{html.escape(file)}</h3>")
            parts.append('<pre class="source">')
            for lineno, text in enumerate(source.splitlines(), start=1):
                status = report.coverage.line_status.get(lineno)
                escaped = html.escape(text) or " "
                if status is None:
                    parts.append(f"{lineno:4d}  {escaped}")
                else:
                    color = STATUS_COLORS[status]
                    parts.append(f'{lineno:4d}  <span class="{color}">{escaped}</span>')
            parts.append("</pre>")
    if report.metrics_rows:
        parts.append("<h2>Complexity</h2><table><tr><th>Element</th><th>Coverage</th>"
                     "<th>Covered Complexity</th><th>Missed Complexity</th><th>Total Complexity</th></tr>")
        for row in report.metrics_rows:
            parts.append(
                f"<tr><td>{html.escape(row.element)}</td><td>{row.percent} %</td>"
                f"<td>{row.covered}</td><td>{row.missed}</td><td>{row.total}</td></tr>"
            )
        parts.append("</table>")
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"
