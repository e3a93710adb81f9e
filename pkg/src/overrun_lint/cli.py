"""Command-line interface.

Exit codes: 0 = no findings at/above the threshold, 1 = findings present,
2 = parse/config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime
from pathlib import Path

from . import __version__
from .errors import OverrunLintError
from .cfg import ComplexitySummary
from .detectors.model import Finding, RuleSet, load_ruleset
from .detectors.rules import rule_by_id
from .detectors.clones import find_duplicates
from .pipeline import analyze_path, run_source
from .reporting import (
    FORMATS,
    Report,
    annotate_source,
    bound_finding_to_finding,
    build_metrics_rows,
    emit_report,
    render_metrics_table,
    suppress_reviewed,
)
from .runtime import RunOptions, coverage_summary
from .frontend.lexer import SourceSpan


def _default_timestamp() -> str:
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="overrun-lint")
    parser.add_argument("--version", action="version", version=f"overrun-lint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the bug-pattern rules")
    analyze.add_argument("paths", nargs="+")
    analyze.add_argument("--ruleset", help="ruleset config file")
    analyze.add_argument("--format", choices=FORMATS, default="txt")
    analyze.add_argument("--out", help="write the report here instead of stdout")
    analyze.add_argument("--min-priority", type=int, default=5, metavar="N",
                         help="only findings with priority <= N (1 is highest)")
    analyze.add_argument("--honor-reviews", action="store_true",
                         help="drop findings already marked //@PMD:REVIEWED")
    analyze.add_argument("--timestamp", help="inject the report timestamp (for reproducible output)")

    bound = sub.add_parser("boundcheck", help="run the array bound-checking analysis")
    bound.add_argument("paths", nargs="+")
    bound.add_argument("--format", choices=FORMATS, default="txt")
    bound.add_argument("--out")
    bound.add_argument("--timestamp")

    run = sub.add_parser("run", help="interpret a program")
    run.add_argument("file")
    run.add_argument("--entry", help="entry point as Class.method (default: the static main)")
    run.add_argument("--ea", action="store_true", help="enable assertion checking")
    run.add_argument("--coverage", action="store_true", help="record coverage counters")
    run.add_argument("--stdin", help="file whose lines feed readLine()")
    run.add_argument("--seed", type=int, default=0, help="seed for random()")
    run.add_argument("--coverage-out", help="write coverage data as JSON")

    metrics = sub.add_parser("metrics", help="emit the complexity/coverage table")
    metrics.add_argument("paths", nargs="+")
    metrics.add_argument("--coverage-data", help="JSON written by run --coverage-out")

    cpd = sub.add_parser("cpd", help="copy-paste detection")
    cpd.add_argument("paths", nargs="+")
    cpd.add_argument("--min-tokens", type=int, default=25)

    annotate = sub.add_parser("annotate", help="insert a review annotation")
    annotate.add_argument("file")
    annotate.add_argument("--line", type=int, required=True)
    annotate.add_argument("--rule", required=True)
    annotate.add_argument("--reviewer", required=True)
    annotate.add_argument("--time", required=True, metavar="M/D/YY H.MMAM")
    annotate.add_argument("--out", help="write here instead of editing in place")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except OverrunLintError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "boundcheck":
        return _cmd_boundcheck(args)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "metrics":
        return _cmd_metrics(args)
    if args.command == "cpd":
        return _cmd_cpd(args)
    if args.command == "annotate":
        return _cmd_annotate(args)
    raise AssertionError(args.command)


def _analyze_units(paths):
    units = []
    for path in paths:
        analyzed = analyze_path(path)
        if analyzed.res.diagnostics:
            for diag in analyzed.res.diagnostics:
                print(f"error: {diag}", file=sys.stderr)
            raise OverrunLintError(f"{path}: resolution failed")
        units.append(analyzed)
    return units


def _cmd_analyze(args) -> int:
    ruleset = RuleSet()
    if args.ruleset:
        ruleset = load_ruleset(Path(args.ruleset).read_text(encoding="utf-8"))
    units = _analyze_units(args.paths)
    findings: list[Finding] = []
    sources: dict[str, str] = {}
    for analyzed in units:
        unit_findings = analyzed.findings(ruleset)
        if args.honor_reviews:
            unit_findings = suppress_reviewed(unit_findings, analyzed.source)
        findings.extend(unit_findings)
        sources[analyzed.file] = analyzed.source
    findings = [f for f in findings if f.priority <= args.min_priority]
    findings.sort(key=Finding.sort_key)
    report = Report(
        tool_version=__version__,
        generated_at=args.timestamp or _default_timestamp(),
        findings=findings,
        sources=sources,
    )
    document = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(document)
    return 1 if findings else 0


def _cmd_boundcheck(args) -> int:
    units = _analyze_units(args.paths)
    findings: list[Finding] = []
    for analyzed in units:
        findings.extend(bound_finding_to_finding(b) for b in analyzed.bound_findings())
    findings.sort(key=Finding.sort_key)
    report = Report(
        tool_version=__version__,
        generated_at=args.timestamp or _default_timestamp(),
        findings=findings,
    )
    document = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(document)
    return 1 if findings else 0


def _cmd_run(args) -> int:
    source = Path(args.file).read_text(encoding="utf-8")
    stdin_script = None
    if args.stdin:
        stdin_script = Path(args.stdin).read_text(encoding="utf-8").splitlines()
    options = RunOptions(
        entry=args.entry,
        assertions_enabled=args.ea,
        coverage_enabled=args.coverage,
        stdin_script=stdin_script,
        seed=args.seed,
    )
    trace, analyzed = run_source(source, args.file, options)
    for line in trace.stdout:
        print(line)
    for record in trace.assertion_records:
        print(
            f"assertion {record.outcome}: {record.unit_name}: {record.statement_text}"
            + (f": {record.message}" if record.message else ""),
            file=sys.stderr,
        )
    for fault in trace.faults:
        where = f"{fault.span.file}:{fault.span.line}" if fault.span else args.file
        print(f"fault: {fault.kind} at {where}: {fault.detail}", file=sys.stderr)
    if args.coverage:
        report = coverage_summary(trace, analyzed.unit, analyzed.cfgs)
        rows = build_metrics_rows([(analyzed.file, report.summary)], analyzed.file)
        for line in render_metrics_table(rows):
            print(line)
        if args.coverage_out:
            payload = {
                "file": analyzed.file,
                "counters": [
                    {"kind": c.kind, "covered": c.covered, "missed": c.missed}
                    for c in report.counters
                ],
                "line_status": {str(k): v for k, v in sorted(report.line_status.items())},
                "branch_status": {str(k): v for k, v in sorted(report.branch_status.items())},
                "per_method_covered": dict(sorted(report.per_method_covered.items())),
            }
            Path(args.coverage_out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 1 if trace.halting_fault is not None else 0


def _cmd_metrics(args) -> int:
    covered: dict[str, int] = {}
    if args.coverage_data:
        payload = json.loads(Path(args.coverage_data).read_text(encoding="utf-8"))
        covered = {k: int(v) for k, v in payload.get("per_method_covered", {}).items()}
    units = _analyze_units(args.paths)
    per_unit = []
    for analyzed in units:
        summary = ComplexitySummary.build(analyzed.unit, analyzed.cfgs, covered)
        per_unit.append((analyzed.file, summary))
    rows = build_metrics_rows(per_unit)
    for line in render_metrics_table(rows):
        print(line)
    return 0


def _cmd_cpd(args) -> int:
    units = [analyzed.unit for analyzed in _analyze_units(args.paths)]
    pairs = find_duplicates(units, args.min_tokens)
    for pair in pairs:
        print(
            f"{pair.token_length} duplicated tokens: "
            f"{pair.span_a.file}:{pair.span_a.line}-{pair.span_a.end_line} and "
            f"{pair.span_b.file}:{pair.span_b.line}-{pair.span_b.end_line}"
        )
    return 1 if pairs else 0


def _cmd_annotate(args) -> int:
    if rule_by_id(args.rule) is None and not args.rule.startswith("Bound"):
        raise OverrunLintError(f"unknown rule id '{args.rule}'")
    source = Path(args.file).read_text(encoding="utf-8")
    finding = Finding(
        rule_id=args.rule,
        category="bad_practice",
        priority=4,
        rank=18,
        confidence="high",
        message="",
        span=SourceSpan(args.file, args.line, 1, args.line, 1),
    )
    annotated = annotate_source(source, finding, args.reviewer, args.time)
    Path(args.out or args.file).write_text(annotated, encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
