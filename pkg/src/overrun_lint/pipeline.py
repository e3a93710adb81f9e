"""End-to-end wiring: source text -> parsed, resolved, analyzed unit."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .frontend import instrument_asserts, parse_source
from .frontend import ast
from .semantics import CallGraph, Resolution, build_call_graph, build_symbol_table
from .cfg import UnitCfgs, build_unit_cfgs
from .detectors.model import Finding, RuleSet
from .detectors.rules import run_rules
from .boundcheck import BoundFinding, run_bound_check
from .runtime import RunOptions, RunTrace, execute


@dataclass
class AnalyzedUnit:
    unit: ast.CompilationUnit
    res: Resolution
    call_graph: CallGraph
    cfgs: UnitCfgs

    @property
    def file(self) -> str:
        return self.unit.file

    @property
    def source(self) -> str:
        return self.unit.source

    def findings(self, ruleset: RuleSet | None = None) -> list[Finding]:
        return run_rules(self.unit, self.res, self.call_graph, self.cfgs, ruleset)

    def bound_findings(self) -> list[BoundFinding]:
        return run_bound_check(self.unit, self.res)


def analyze_source(source: str, file: str = "<memory>", instrument: bool = False) -> AnalyzedUnit:
    unit = parse_source(source, file)
    if instrument:
        unit = instrument_asserts(unit)
    res = build_symbol_table(unit)
    call_graph = build_call_graph(unit, res)
    cfgs = build_unit_cfgs(unit)
    return AnalyzedUnit(unit=unit, res=res, call_graph=call_graph, cfgs=cfgs)


def analyze_path(path: str | Path, instrument: bool = False) -> AnalyzedUnit:
    p = Path(path)
    return analyze_source(p.read_text(encoding="utf-8"), str(p), instrument)


def run_source(
    source: str, file: str = "<memory>", options: RunOptions | None = None
) -> tuple[RunTrace, AnalyzedUnit]:
    """Instrument, resolve, and execute; returns the trace and the
    instrumented analysis (whose CFGs the trace ids refer to)."""
    analyzed = analyze_source(source, file, instrument=True)
    trace = execute(analyzed.unit, options or RunOptions(), analyzed.res, analyzed.cfgs)
    return trace, analyzed
