"""Report assembly plus the percentage/rate arithmetic used everywhere."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from ..errors import DomainError
from ..boundcheck import BoundFinding
from ..cfg import ComplexitySummary
from ..detectors.model import Finding
from ..detectors.rules import rule_by_id
from ..runtime.coverage import CoverageReport

PER_100 = "per_100"
PER_1000 = "per_1000"

_SCALES = {PER_100: 100, PER_1000: 1000}


def coverage_percent(covered: int, missed: int) -> float:
    """100*covered/(covered+missed), rounded half-up to one decimal."""
    if covered < 0 or missed < 0:
        raise DomainError("counts must be non-negative")
    total = covered + missed
    if total == 0:
        raise DomainError("coverage percentage undefined for an empty population")
    pct = (Decimal(covered) * 100) / Decimal(total)
    return float(pct.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def efficiency_rate(positive_warnings: int, loc: int, scale: str = PER_100) -> float:
    """Warnings per `scale` lines of code, one decimal, half-up."""
    if loc < 1:
        raise DomainError("efficiency rate undefined for loc < 1")
    if scale not in _SCALES:
        raise DomainError(f"scale must be one of {sorted(_SCALES)}")
    rate = (Decimal(positive_warnings) * _SCALES[scale]) / Decimal(loc)
    return float(rate.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


# Bound-check findings surface in the unified report as security findings.
_BOUND_META = {
    "index_out_of_legal_range": ("BoundIndexOutOfLegalRange", 1, 3, "high"),
    "off_by_one_loop": ("BoundOffByOneLoop", 2, 5, "high"),
    "unvalidated_index_source": ("BoundUnvalidatedIndexSource", 2, 6, "normal"),
    "variable_limit_unchecked": ("BoundVariableLimitUnchecked", 2, 7, "normal"),
    "zero_length_possible": ("BoundZeroLengthPossible", 3, 10, "low"),
}


def bound_finding_to_finding(bound: BoundFinding) -> Finding:
    rule_id, priority, rank, confidence = _BOUND_META[bound.kind]
    return Finding(
        rule_id=rule_id,
        category="security",
        priority=priority,
        rank=rank,
        confidence=confidence,
        message=bound.detail,
        span=bound.span,
    )


def pattern_of(finding: Finding) -> str:
    rule = rule_by_id(finding.rule_id)
    if rule is not None:
        return rule.pattern
    if finding.rule_id.startswith("Bound"):
        return "BC"
    return "".join(c for c in finding.rule_id if c.isupper())[:3] or "XX"


@dataclass
class MetricsRow:
    element: str
    kind: str
    covered: int
    missed: int

    @property
    def total(self) -> int:
        return self.covered + self.missed

    @property
    def percent(self) -> float:
        if self.total == 0:
            return 0.0
        return coverage_percent(self.covered, self.missed)


@dataclass
class Report:
    tool_version: str
    generated_at: str
    findings: list[Finding] = field(default_factory=list)
    coverage: CoverageReport | None = None
    metrics_rows: list[MetricsRow] = field(default_factory=list)
    sources: dict[str, str] = field(default_factory=dict)

    @property
    def category_summary(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for finding in self.findings:
            out[finding.category] = out.get(finding.category, 0) + 1
        return dict(sorted(out.items()))


def build_metrics_rows(
    per_unit: list[tuple[str, ComplexitySummary]], project_label: str = "project"
) -> list[MetricsRow]:
    """Figure-10-shaped rows: project rollup, then file/class/method rows."""
    rows: list[MetricsRow] = []
    total_cov = 0
    total_miss = 0
    unit_rows: list[MetricsRow] = []
    for _file, summary in per_unit:
        for row in summary.rows:
            unit_rows.append(MetricsRow(row.element, row.kind, row.covered, row.missed))
            if row.kind == "file":
                total_cov += row.covered
                total_miss += row.missed
    rows.append(MetricsRow(project_label, "project", total_cov, total_miss))
    rows.extend(unit_rows)
    return rows
