"""Per-method control-flow graphs, cyclomatic complexity, and reachability.

Instruction ids are unit-unique integers assigned one per simple statement
and one per branching condition; they key the interpreter's execution trace.
Basic blocks end at decisions; try/catch/finally sections chain by
fallthrough only, so exception handling never adds decision nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend import ast
from .frontend.lexer import SourceSpan

FALLTHROUGH = "fallthrough"
TRUE_BRANCH = "true-branch"
FALSE_BRANCH = "false-branch"
SWITCH_CASE = "switch-case"
LOOP_BACK = "loop-back"


@dataclass
class BasicBlock:
    bid: int
    instructions: list[int] = field(default_factory=list)
    is_entry: bool = False
    is_exit: bool = False


@dataclass
class Edge:
    src: int
    dst: int
    kind: str
    label: str = ""  # disambiguates multiple same-kind edges (switch arms)

    @property
    def key(self) -> str:
        return f"{self.kind}#{self.label}" if self.label else self.kind


@dataclass
class ControlFlowGraph:
    method: str
    blocks: list[BasicBlock] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    entry: int = 0
    exit: int = 1
    instr_spans: dict[int, SourceSpan] = field(default_factory=dict)
    stmt_iids: dict[int, int] = field(default_factory=dict)  # ast uid -> iid
    implicit_return_iid: int | None = None
    synthetic: bool = False  # implicit ctor / static initializer

    @property
    def N(self) -> int:
        return len(self.blocks)

    @property
    def E(self) -> int:
        return len(self.edges)

    def out_edges(self, bid: int) -> list[Edge]:
        return [e for e in self.edges if e.src == bid]

    def in_edges(self, bid: int) -> list[Edge]:
        return [e for e in self.edges if e.dst == bid]

    def decision_blocks(self) -> list[int]:
        degree: dict[int, int] = {}
        for e in self.edges:
            degree[e.src] = degree.get(e.src, 0) + 1
        return sorted(b.bid for b in self.blocks if degree.get(b.bid, 0) >= 2)

    @property
    def D(self) -> int:
        return len(self.decision_blocks())

    @property
    def B(self) -> int:
        decisions = set(self.decision_blocks())
        return sum(1 for e in self.edges if e.src in decisions)

    def block_of_instr(self, iid: int) -> int:
        for block in self.blocks:
            if iid in block.instructions:
                return block.bid
        raise KeyError(iid)

    def instruction_ids(self) -> list[int]:
        out: list[int] = []
        for block in self.blocks:
            out.extend(block.instructions)
        return out


def complexity_en(cfg: ControlFlowGraph) -> int:
    """Cyclomatic complexity from edge and node counts."""
    return cfg.E - cfg.N + 2


def complexity_bd(cfg: ControlFlowGraph) -> int:
    """Cyclomatic complexity from branch and decision-point counts."""
    return cfg.B - cfg.D + 1


def reachability(cfg: ControlFlowGraph) -> list[list[bool]]:
    """Transitive closure over blocks (Floyd-Warshall style); m[i][i] is True."""
    n = cfg.N
    ids = {b.bid: i for i, b in enumerate(cfg.blocks)}
    matrix = [[i == j for j in range(n)] for i in range(n)]
    for e in cfg.edges:
        matrix[ids[e.src]][ids[e.dst]] = True
    for k in range(n):
        row_k = matrix[k]
        for i in range(n):
            if matrix[i][k]:
                row_i = matrix[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return matrix


def unreachable_nodes(cfg: ControlFlowGraph) -> list[BasicBlock]:
    """Blocks with no path from entry, entry excluded."""
    matrix = reachability(cfg)
    ids = {b.bid: i for i, b in enumerate(cfg.blocks)}
    entry_row = matrix[ids[cfg.entry]]
    return [b for b in cfg.blocks if b.bid != cfg.entry and not entry_row[ids[b.bid]]]


def unreachable_spans(cfg: ControlFlowGraph) -> list[SourceSpan]:
    spans = []
    for block in unreachable_nodes(cfg):
        for iid in block.instructions:
            spans.append(cfg.instr_spans[iid])
            break
    return spans


class _IidAllocator:
    def __init__(self, start: int = 0):
        self.next = start

    def take(self) -> int:
        iid = self.next
        self.next += 1
        return iid


class _Builder:
    def __init__(self, method_id: str, alloc: _IidAllocator):
        self.cfg = ControlFlowGraph(method=method_id)
        self.alloc = alloc
        self._next_bid = 0
        entry = self.new_block(is_entry=True)
        exit_block = self.new_block(is_exit=True)
        self.cfg.entry = entry.bid
        self.cfg.exit = exit_block.bid
        self.cur: BasicBlock | None = self.new_block()
        self.edge(entry.bid, self.cur.bid, FALLTHROUGH)

    def new_block(self, is_entry: bool = False, is_exit: bool = False) -> BasicBlock:
        block = BasicBlock(bid=self._next_bid, is_entry=is_entry, is_exit=is_exit)
        self._next_bid += 1
        self.cfg.blocks.append(block)
        return block

    def edge(self, src: int, dst: int, kind: str, label: str = "") -> None:
        self.cfg.edges.append(Edge(src, dst, kind, label))

    def ensure_cur(self) -> BasicBlock:
        if self.cur is None:
            self.cur = self.new_block()  # unreachable continuation
        return self.cur

    def instr(self, node: ast.Node, span: SourceSpan | None = None) -> int:
        iid = self.alloc.take()
        self.ensure_cur().instructions.append(iid)
        self.cfg.instr_spans[iid] = span or node.span
        self.cfg.stmt_iids[node.uid] = iid
        return iid

    # -- statement dispatch -------------------------------------------------

    def block_stmts(self, block: ast.Block) -> None:
        for stmt in block.stmts:
            self.stmt(stmt)

    def stmt(self, stmt: ast.Stmt) -> None:
        if isinstance(stmt, ast.Block):
            self.block_stmts(stmt)
        elif isinstance(stmt, (ast.ExprStmt, ast.LocalDecl, ast.Assert, ast.Empty)):
            self.instr(stmt)
        elif isinstance(stmt, ast.Return):
            self.instr(stmt)
            self.edge(self.cur.bid, self.cfg.exit, FALLTHROUGH)
            self.cur = None
        elif isinstance(stmt, ast.If):
            self._if(stmt)
        elif isinstance(stmt, ast.While):
            self._loop(stmt, stmt.cond, stmt.body, update=None)
        elif isinstance(stmt, ast.For):
            if stmt.init is not None:
                self.instr(stmt.init)
            self._loop(stmt, stmt.cond, stmt.body, update=stmt.update)
        elif isinstance(stmt, ast.Switch):
            self._switch(stmt)
        elif isinstance(stmt, ast.Try):
            self._try(stmt)
        elif isinstance(stmt, ast.Synchronized):
            self.instr(stmt)
            self.block_stmts(stmt.body)
        else:  # pragma: no cover
            raise AssertionError(f"unhandled statement {type(stmt).__name__}")

    def _if(self, stmt: ast.If) -> None:
        self.ensure_cur()
        self.instr(stmt, stmt.cond.span)
        cond_block = self.cur
        truth = ast.literal_truth(stmt.cond)
        then_entry = self.new_block()
        else_entry = self.new_block() if stmt.els is not None else None
        join = self.new_block()
        if truth is None:
            self.edge(cond_block.bid, then_entry.bid, TRUE_BRANCH)
            self.edge(cond_block.bid, (else_entry or join).bid, FALSE_BRANCH)
        elif truth:
            self.edge(cond_block.bid, then_entry.bid, TRUE_BRANCH)
        else:
            self.edge(cond_block.bid, (else_entry or join).bid, FALSE_BRANCH)
        self.cur = then_entry
        self.block_stmts(stmt.then)
        if self.cur is not None:
            self.edge(self.cur.bid, join.bid, FALLTHROUGH)
        if stmt.els is not None:
            self.cur = else_entry
            self.stmt(stmt.els)
            if self.cur is not None:
                self.edge(self.cur.bid, join.bid, FALLTHROUGH)
        self.cur = join

    def _loop(
        self,
        stmt: ast.Stmt,
        cond: ast.Expr | None,
        body: ast.Block,
        update: ast.Expr | None,
    ) -> None:
        self.ensure_cur()
        cond_block = self.new_block()
        self.edge(self.cur.bid, cond_block.bid, FALLTHROUGH)
        self.cur = cond_block
        self.instr(stmt, cond.span if cond is not None else stmt.span)
        truth = True if cond is None else ast.literal_truth(cond)
        body_entry = self.new_block()
        after = self.new_block()
        if truth is None:
            self.edge(cond_block.bid, body_entry.bid, TRUE_BRANCH)
            self.edge(cond_block.bid, after.bid, FALSE_BRANCH)
        elif truth:
            self.edge(cond_block.bid, body_entry.bid, TRUE_BRANCH)
        else:
            self.edge(cond_block.bid, after.bid, FALSE_BRANCH)
        self.cur = body_entry
        self.block_stmts(body)
        if update is not None:
            self.ensure_cur()
            self.instr(update)
        if self.cur is not None:
            self.edge(self.cur.bid, cond_block.bid, LOOP_BACK)
        self.cur = after

    def _switch(self, stmt: ast.Switch) -> None:
        self.ensure_cur()
        self.instr(stmt, stmt.subject.span)
        subject_block = self.cur
        after = self.new_block()
        has_default = any(c.label is None for c in stmt.cases)
        for i, case in enumerate(stmt.cases):
            entry = self.new_block()
            label = "default" if case.label is None else f"case{i}"
            self.edge(subject_block.bid, entry.bid, SWITCH_CASE, label)
            self.cur = entry
            for inner in case.body:
                self.stmt(inner)
            if self.cur is not None:
                self.edge(self.cur.bid, after.bid, FALLTHROUGH)
        if not has_default:
            self.edge(subject_block.bid, after.bid, SWITCH_CASE, "nomatch")
        self.cur = after

    def _try(self, stmt: ast.Try) -> None:
        self.block_stmts(stmt.body)
        for catch in stmt.catches:
            entry = self.new_block()
            if self.cur is not None:
                self.edge(self.cur.bid, entry.bid, FALLTHROUGH)
            self.cur = entry
            self.block_stmts(catch.body)
        if stmt.finally_block is not None:
            entry = self.new_block()
            if self.cur is not None:
                self.edge(self.cur.bid, entry.bid, FALLTHROUGH)
            self.cur = entry
            self.block_stmts(stmt.finally_block)

    # -- finish ---------------------------------------------------------------

    def finish(
        self,
        terminal_span: SourceSpan | None,
        add_implicit_return: bool = True,
    ) -> ControlFlowGraph:
        if self.cur is not None:
            if add_implicit_return:
                # Implicit return instruction: every method executes at least
                # one instruction, so method coverage is observable.
                iid = self.alloc.take()
                self.cur.instructions.append(iid)
                self.cfg.instr_spans[iid] = terminal_span or SourceSpan("<synthetic>", 1, 1, 1, 1)
                self.cfg.implicit_return_iid = iid
            self.edge(self.cur.bid, self.cfg.exit, FALLTHROUGH)
        self._prune_empty_orphans()
        return self.cfg

    def _prune_empty_orphans(self) -> None:
        # Instruction-free blocks that nothing reaches carry no information;
        # dropping them keeps one node and one out-edge per removal, which
        # leaves E - N + 2 unchanged.
        while True:
            incoming = {e.dst for e in self.cfg.edges}
            doomed = [
                b
                for b in self.cfg.blocks
                if not b.instructions
                and not b.is_entry
                and not b.is_exit
                and b.bid not in incoming
            ]
            if not doomed:
                return
            doomed_ids = {b.bid for b in doomed}
            self.cfg.blocks = [b for b in self.cfg.blocks if b.bid not in doomed_ids]
            self.cfg.edges = [e for e in self.cfg.edges if e.src not in doomed_ids]


@dataclass
class UnitCfgs:
    """All CFGs of a unit plus unit-wide instruction metadata."""

    cfgs: dict[str, ControlFlowGraph]
    stmt_iids: dict[int, int]  # ast uid -> iid, merged over methods
    instr_spans: dict[int, SourceSpan]
    method_of_iid: dict[int, str]

    def total_instructions(self) -> int:
        return len(self.instr_spans)

    def cfg_of_iid(self, iid: int) -> ControlFlowGraph:
        return self.cfgs[self.method_of_iid[iid]]


def method_identity(class_name: str, method: ast.MethodDecl) -> str:
    name = "<init>" if method.is_constructor else method.name
    return f"{class_name}.{name}/{method.arity}"


def build_cfg(
    method: ast.MethodDecl,
    class_name: str = "?",
    alloc: _IidAllocator | None = None,
) -> ControlFlowGraph:
    """CFG for a single method body."""
    builder = _Builder(method_identity(class_name, method), alloc or _IidAllocator())
    builder.block_stmts(method.body)
    end_span = SourceSpan(
        method.span.file,
        method.span.end_line,
        max(1, method.span.end_column - 1),
        method.span.end_line,
        method.span.end_column,
    )
    return builder.finish(end_span)


def build_unit_cfgs(unit: ast.CompilationUnit) -> UnitCfgs:
    """CFGs for every method, plus synthetic constructors and static
    initializers so those populations count as methods."""
    alloc = _IidAllocator()
    cfgs: dict[str, ControlFlowGraph] = {}
    for cls in unit.classes:
        static_inits = [f for f in cls.fields if f.static and f.initializer is not None]
        if static_inits:
            builder = _Builder(f"{cls.name}.<clinit>/0", alloc)
            for fld in static_inits:
                builder.instr(fld)
            cfg = builder.finish(None, add_implicit_return=False)
            cfg.synthetic = True
            cfgs[cfg.method] = cfg
        has_ctor = any(m.is_constructor for m in cls.methods)
        if not has_ctor:
            builder = _Builder(f"{cls.name}.<init>/0", alloc)
            iid = alloc.take()
            builder.cur.instructions.append(iid)
            builder.cfg.instr_spans[iid] = cls.span
            builder.cfg.stmt_iids[cls.uid] = iid
            cfg = builder.finish(None, add_implicit_return=False)
            cfg.synthetic = True
            cfgs[cfg.method] = cfg
        for method in cls.methods:
            cfg = build_cfg(method, cls.name, alloc)
            cfgs[cfg.method] = cfg
    stmt_iids: dict[int, int] = {}
    instr_spans: dict[int, SourceSpan] = {}
    method_of: dict[int, str] = {}
    for cfg in cfgs.values():
        stmt_iids.update(cfg.stmt_iids)
        instr_spans.update(cfg.instr_spans)
        for iid in cfg.instruction_ids():
            method_of[iid] = cfg.method
    return UnitCfgs(cfgs=cfgs, stmt_iids=stmt_iids, instr_spans=instr_spans, method_of_iid=method_of)


@dataclass
class ComplexityRow:
    element: str
    kind: str  # project | file | class | method
    covered: int
    missed: int

    @property
    def total(self) -> int:
        return self.covered + self.missed


@dataclass
class ComplexitySummary:
    """Per-method complexity with class/file/project rollups."""

    method_v: dict[str, int]
    rows: list[ComplexityRow]

    @classmethod
    def build(
        cls,
        unit: ast.CompilationUnit,
        unit_cfgs: UnitCfgs,
        covered_per_method: dict[str, int] | None = None,
    ) -> "ComplexitySummary":
        covered_per_method = covered_per_method or {}
        method_v = {mid: complexity_bd(cfg) for mid, cfg in unit_cfgs.cfgs.items()}
        rows: list[ComplexityRow] = []

        def row(element: str, kind: str, methods: list[str]) -> ComplexityRow:
            total = sum(method_v[m] for m in methods)
            covered = sum(min(covered_per_method.get(m, 0), method_v[m]) for m in methods)
            return ComplexityRow(element, kind, covered, total - covered)

        all_methods = sorted(unit_cfgs.cfgs)
        rows.append(row(unit.file, "file", all_methods))
        for class_decl in unit.classes:
            class_methods = sorted(
                m for m in all_methods if m.split(".", 1)[0] == class_decl.name
            )
            rows.append(row(class_decl.name, "class", class_methods))
            for mid in class_methods:
                rows.append(row(_display_method(mid), "method", [mid]))
        return cls(method_v=method_v, rows=rows)


def _display_method(method_id: str) -> str:
    cls, rest = method_id.split(".", 1)
    name, _arity = rest.rsplit("/", 1)
    if name == "<clinit>":
        return f"{cls}.static {{...}}"
    if name == "<init>":
        return f"{cls}.{cls}()"
    return f"{cls}.{name}()"
