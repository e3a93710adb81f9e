"""Array bound checking.

The analysis enumerates array declarations and their index expressions,
derives each index variable's legal range, marks the operations that can
move an index (assignments, input-derived values, arithmetic updates), and
judges loop limits against array extents.  Guard recognition is purely
syntactic dominance: an access is considered validated when an enclosing
if/while condition compares the index (or a loop limit) with < or <=
against the array's size expression or a small-enough constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend import ast
from .frontend.lexer import SourceSpan
from .semantics.resolver import Resolution, Symbol, build_symbol_table
from .semantics import types as ty

SIZE_CONSTANT = "constant"
SIZE_VARIABLE = "variable"
SIZE_UNKNOWN = "unknown"

VERDICT_SAFE = "safe"
VERDICT_OFF_BY_ONE = "off_by_one"
VERDICT_MAY_EXCEED = "may_exceed"
VERDICT_UNVALIDATED = "unvalidated_variable_limit"

KIND_OUT_OF_RANGE = "index_out_of_legal_range"
KIND_OFF_BY_ONE = "off_by_one_loop"
KIND_UNVALIDATED_SOURCE = "unvalidated_index_source"
KIND_VARIABLE_LIMIT = "variable_limit_unchecked"
KIND_ZERO_LENGTH = "zero_length_possible"

_KIND_ORDER = {
    KIND_OUT_OF_RANGE: 0,
    KIND_OFF_BY_ONE: 1,
    KIND_UNVALIDATED_SOURCE: 2,
    KIND_VARIABLE_LIMIT: 3,
    KIND_ZERO_LENGTH: 4,
}


@dataclass
class ArrayDecl:
    symbol: Symbol
    size_kind: str
    size_value: int | None = None
    size_symbol: Symbol | None = None
    references: list[ast.Index] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.symbol.name

    def legal_hi(self) -> int | None:
        return self.size_value - 1 if self.size_kind == SIZE_CONSTANT else None


@dataclass
class ModifyingSite:
    span: SourceSpan
    kind: str  # constant | input | arithmetic
    value: int | None = None  # for constant assignments


@dataclass
class IndexVarInfo:
    symbol: Symbol
    array: ArrayDecl
    legal_range: tuple[int, int | None]
    occurrences: list[SourceSpan] = field(default_factory=list)
    modifying_sites: list[ModifyingSite] = field(default_factory=list)
    v_marked: bool = False
    accesses: list[ast.Index] = field(default_factory=list)


@dataclass
class LoopLimitCheck:
    loop_span: SourceSpan
    index_symbol: Symbol
    comparison: str | None  # < <= > >= or None when the loop never bounds it
    limit_kind: str | None  # constant | variable | None
    limit_value: int | None
    limit_symbol: Symbol | None
    verdict: str
    array: ArrayDecl
    loop: ast.Stmt = None  # type: ignore[assignment]


@dataclass
class BoundFinding:
    kind: str
    span: SourceSpan
    array: ArrayDecl
    detail: str

    def sort_key(self):
        return (self.span.file, self.span.line, _KIND_ORDER[self.kind], self.span.column)


# -- phase 1: arrays -----------------------------------------------------------


def find_arrays(unit: ast.CompilationUnit, resolution: Resolution) -> list[ArrayDecl]:
    """One ArrayDecl per array-typed declaration, with every index reference."""
    arrays: dict[int, ArrayDecl] = {}
    order: list[ArrayDecl] = []
    for sym in resolution.symbols:
        if sym.is_builtin or not isinstance(sym.declared_type, ty.ArrayType):
            continue
        decl = ArrayDecl(symbol=sym, size_kind=SIZE_UNKNOWN)
        arrays[id(sym)] = decl
        order.append(decl)

    def note_allocation(sym: Symbol | None, alloc: ast.NewArray) -> None:
        decl = arrays.get(id(sym)) if sym is not None else None
        if decl is None:
            return
        size = _const_int(alloc.size_expr)
        if size is not None:
            if decl.size_kind == SIZE_UNKNOWN:
                decl.size_kind = SIZE_CONSTANT
                decl.size_value = size
            elif decl.size_kind == SIZE_CONSTANT and decl.size_value != size:
                decl.size_kind = SIZE_UNKNOWN
                decl.size_value = None
        elif isinstance(alloc.size_expr, ast.Name):
            size_sym = resolution.name_targets.get(alloc.size_expr.uid)
            if decl.size_kind == SIZE_UNKNOWN and size_sym is not None:
                decl.size_kind = SIZE_VARIABLE
                decl.size_symbol = size_sym

    for node in ast.walk(unit):
        if isinstance(node, ast.LocalDecl) and isinstance(node.initializer, ast.NewArray):
            sym = _decl_symbol(node, resolution)
            note_allocation(sym, node.initializer)
        elif isinstance(node, ast.FieldDecl) and isinstance(node.initializer, ast.NewArray):
            sym = _decl_symbol(node, resolution)
            note_allocation(sym, node.initializer)
        elif (
            isinstance(node, ast.Binary)
            and node.op == "="
            and isinstance(node.right, ast.NewArray)
        ):
            sym = _target_symbol(node.left, resolution)
            note_allocation(sym, node.right)
        if isinstance(node, ast.Index):
            sym = _target_symbol(node.array, resolution)
            decl = arrays.get(id(sym)) if sym is not None else None
            if decl is not None:
                decl.references.append(node)
    return order


def _decl_symbol(decl: ast.Node, resolution: Resolution) -> Symbol | None:
    for sym in resolution.symbols:
        if sym.decl_uid == decl.uid:
            return sym
    return None


def _target_symbol(expr: ast.Expr, resolution: Resolution) -> Symbol | None:
    if isinstance(expr, ast.Name):
        return resolution.name_targets.get(expr.uid)
    if isinstance(expr, ast.FieldAccess):
        return resolution.field_targets.get(expr.uid)
    return None


def _const_int(expr: ast.Expr | None) -> int | None:
    if isinstance(expr, ast.Literal) and expr.kind == "int":
        return expr.value
    if isinstance(expr, ast.Unary) and expr.op == "-":
        inner = _const_int(expr.operand)
        return -inner if inner is not None else None
    return None


# -- phase 2: index variables ----------------------------------------------------


def track_index_vars(
    arrays: list[ArrayDecl], resolution: Resolution
) -> list[IndexVarInfo]:
    """Index-variable bookkeeping: ranges, occurrences, modification sites."""
    infos: dict[tuple[int, int], IndexVarInfo] = {}
    for array in arrays:
        for ref in array.references:
            for name in _index_names(ref.index):
                sym = resolution.name_targets.get(name.uid)
                if sym is None:
                    continue
                key = (id(sym), id(array))
                info = infos.get(key)
                if info is None:
                    hi = array.legal_hi()
                    info = IndexVarInfo(symbol=sym, array=array, legal_range=(0, hi))
                    infos[key] = info
                info.accesses.append(ref)
    result = list(infos.values())
    if not result:
        return result
    tracked = {id(info.symbol) for info in result}
    # All occurrences of each tracked variable, and every site that can move it.
    for node in ast.walk(resolution.unit):
        if isinstance(node, ast.Name):
            sym = resolution.name_targets.get(node.uid)
            if sym is not None and id(sym) in tracked:
                for info in result:
                    if info.symbol is sym:
                        info.occurrences.append(node.span)
        site = _modifying_site(node, resolution)
        if site is not None:
            target, entry = site
            if id(target) in tracked:
                for info in result:
                    if info.symbol is target:
                        info.modifying_sites.append(entry)
    for info in result:
        info.v_marked = bool(info.modifying_sites) and bool(info.accesses)
    return result


def _index_names(expr: ast.Expr) -> list[ast.Name]:
    return [n for n in ast.walk(expr) if isinstance(n, ast.Name)]


def _modifying_site(node: ast.Node, resolution: Resolution) -> tuple[Symbol, ModifyingSite] | None:
    if isinstance(node, ast.Binary) and node.op == "=" and isinstance(node.left, ast.Name):
        sym = resolution.name_targets.get(node.left.uid)
        if sym is None:
            return None
        return sym, ModifyingSite(node.span, *_classify_rhs(node.right))
    if isinstance(node, ast.LocalDecl) and node.initializer is not None:
        sym = _decl_symbol(node, resolution)
        if sym is None:
            return None
        return sym, ModifyingSite(node.span, *_classify_rhs(node.initializer))
    return None


_INPUT_BUILTINS = {"readLine", "parseInt", "random"}


def _classify_rhs(expr: ast.Expr) -> tuple[str, int | None]:
    value = _const_int(expr)
    if value is not None:
        return "constant", value
    for node in ast.walk(expr):
        if isinstance(node, ast.Call) and node.receiver is None and node.name in _INPUT_BUILTINS:
            return "input", None
    return "arithmetic", None


# -- phase 3: loops ----------------------------------------------------------------


def check_loops(
    unit: ast.CompilationUnit,
    index_info: list[IndexVarInfo],
    resolution: Resolution,
) -> list[LoopLimitCheck]:
    """Judge every loop that modifies a tracked index variable."""
    checks: list[LoopLimitCheck] = []
    for loop in ast.walk(unit):
        if not isinstance(loop, (ast.For, ast.While)):
            continue
        modified = _symbols_modified_by_loop(loop, resolution)
        for info in index_info:
            if id(info.symbol) not in modified:
                continue
            if not any(_contains(loop, acc) for acc in info.accesses):
                continue
            checks.append(_judge_loop(loop, info, resolution))
    return checks


def _symbols_modified_by_loop(loop: ast.For | ast.While, resolution: Resolution) -> set[int]:
    regions: list[ast.Node] = [loop.body]
    if isinstance(loop, ast.For) and loop.update is not None:
        regions.append(loop.update)
    out: set[int] = set()
    for region in regions:
        for node in ast.walk(region):
            site = _modifying_site(node, resolution)
            if site is not None:
                out.add(id(site[0]))
    return out


def _contains(root: ast.Node, node: ast.Node) -> bool:
    return any(n is node for n in ast.walk(root))


def _loop_comparisons(
    cond: ast.Expr | None, sym: Symbol, resolution: Resolution
) -> list[tuple[str, ast.Expr]]:
    """(operator-as-seen-by-sym, limit expr) pairs from the condition,
    looking through && conjunctions only."""
    if cond is None:
        return []
    stack = [cond]
    found: list[tuple[str, ast.Expr]] = []
    flipped = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}
    while stack:
        node = stack.pop()
        if isinstance(node, ast.Binary):
            if node.op == "&&":
                stack.extend((node.left, node.right))
            elif node.op in ("<", "<=", ">", ">="):
                if isinstance(node.left, ast.Name) and resolution.name_targets.get(node.left.uid) is sym:
                    found.append((node.op, node.right))
                elif isinstance(node.right, ast.Name) and resolution.name_targets.get(node.right.uid) is sym:
                    found.append((flipped[node.op], node.left))
    return found


def _judge_loop(
    loop: ast.For | ast.While, info: IndexVarInfo, resolution: Resolution
) -> LoopLimitCheck:
    cond = loop.cond
    comparisons = _loop_comparisons(cond, info.symbol, resolution)
    size_n = info.array.size_value if info.array.size_kind == SIZE_CONSTANT else None
    size_sym = info.array.size_symbol

    best: LoopLimitCheck | None = None

    def make(comparison, limit_kind, limit_value, limit_symbol, verdict) -> LoopLimitCheck:
        return LoopLimitCheck(
            loop_span=loop.span,
            index_symbol=info.symbol,
            comparison=comparison,
            limit_kind=limit_kind,
            limit_value=limit_value,
            limit_symbol=limit_symbol,
            verdict=verdict,
            array=info.array,
            loop=loop,
        )

    rank = {VERDICT_SAFE: 0, VERDICT_OFF_BY_ONE: 1, VERDICT_MAY_EXCEED: 2, VERDICT_UNVALIDATED: 3}
    for op, limit in comparisons:
        value = _const_int(limit)
        limit_sym = (
            resolution.name_targets.get(limit.uid) if isinstance(limit, ast.Name) else None
        )
        if op in ("<", "<="):
            if value is not None:
                if size_n is None:
                    verdict = VERDICT_UNVALIDATED if info.array.size_kind == SIZE_VARIABLE else VERDICT_SAFE
                    # Constant limit against variable-size array: cannot relate.
                    check = make(op, SIZE_CONSTANT, value, None, verdict)
                else:
                    max_index = value - 1 if op == "<" else value
                    if max_index <= size_n - 1:
                        check = make(op, SIZE_CONSTANT, value, None, VERDICT_SAFE)
                    elif max_index == size_n:
                        check = make(op, SIZE_CONSTANT, value, None, VERDICT_OFF_BY_ONE)
                    else:
                        check = make(op, SIZE_CONSTANT, value, None, VERDICT_MAY_EXCEED)
            elif limit_sym is not None and size_sym is not None and limit_sym is size_sym:
                verdict = VERDICT_SAFE if op == "<" else VERDICT_OFF_BY_ONE
                check = make(op, SIZE_VARIABLE, None, limit_sym, verdict)
            elif limit_sym is not None:
                if _limit_guarded(loop, limit_sym, op, info.array, resolution):
                    check = make(op, SIZE_VARIABLE, None, limit_sym, VERDICT_SAFE)
                else:
                    check = make(op, SIZE_VARIABLE, None, limit_sym, VERDICT_UNVALIDATED)
            else:
                check = make(op, None, None, None, VERDICT_UNVALIDATED)
        else:  # descending loop: the hazard is the starting value
            start = _loop_start_value(loop, info.symbol, resolution)
            if start is not None and size_n is not None:
                if start <= size_n - 1:
                    check = make(op, SIZE_CONSTANT, value, limit_sym, VERDICT_SAFE)
                elif start == size_n:
                    check = make(op, SIZE_CONSTANT, value, limit_sym, VERDICT_OFF_BY_ONE)
                else:
                    check = make(op, SIZE_CONSTANT, value, limit_sym, VERDICT_MAY_EXCEED)
            elif (
                size_sym is not None
                and isinstance(loop, ast.For)
                and _start_is_symbol(loop, info.symbol, size_sym, resolution)
            ):
                check = make(op, SIZE_VARIABLE, None, limit_sym, VERDICT_OFF_BY_ONE)
            else:
                check = make(op, SIZE_VARIABLE if limit_sym else None, value, limit_sym, VERDICT_UNVALIDATED)
        if best is None or rank[check.verdict] < rank[best.verdict]:
            best = check
    if best is not None:
        if best.verdict == VERDICT_SAFE and not _ascending_start_ok(loop, info, resolution):
            best = make(best.comparison, best.limit_kind, best.limit_value, best.limit_symbol, VERDICT_MAY_EXCEED)
        return best
    return make(None, None, None, None, VERDICT_UNVALIDATED)


def _loop_start_value(loop: ast.Stmt, sym: Symbol, resolution: Resolution) -> int | None:
    if isinstance(loop, ast.For) and loop.init is not None:
        site = _modifying_site(loop.init, resolution)
        if site is None and isinstance(loop.init, ast.ExprStmt):
            site = _modifying_site(loop.init.expr, resolution)
        if site is not None and site[0] is sym and site[1].kind == "constant":
            return site[1].value
    return None


def _start_is_symbol(loop: ast.For, sym: Symbol, size_sym: Symbol, resolution: Resolution) -> bool:
    init = loop.init
    rhs = None
    if isinstance(init, ast.LocalDecl) and _decl_symbol(init, resolution) is sym:
        rhs = init.initializer
    elif isinstance(init, ast.ExprStmt) and isinstance(init.expr, ast.Binary) and init.expr.op == "=":
        if resolution.name_targets.get(getattr(init.expr.left, "uid", -1)) is sym:
            rhs = init.expr.right
    return isinstance(rhs, ast.Name) and resolution.name_targets.get(rhs.uid) is size_sym


def _ascending_start_ok(loop: ast.Stmt, info: IndexVarInfo, resolution: Resolution) -> bool:
    start = _loop_start_value(loop, info.symbol, resolution)
    return start is None or start >= 0


def _limit_guarded(
    loop: ast.Stmt, limit_sym: Symbol, loop_op: str, array: ArrayDecl, resolution: Resolution
) -> bool:
    """True when an enclosing condition constrains the loop limit tightly
    enough that the loop cannot leave the array's legal range."""
    size_n = array.size_value if array.size_kind == SIZE_CONSTANT else None
    size_sym = array.size_symbol
    for cond, subtree in _enclosing_conditions(loop, resolution):
        for op, limit in _loop_comparisons(cond, limit_sym, resolution):
            if op not in ("<", "<="):
                continue
            value = _const_int(limit)
            bound_sym = (
                resolution.name_targets.get(limit.uid) if isinstance(limit, ast.Name) else None
            )
            if value is not None and size_n is not None:
                max_limit = value - 1 if op == "<" else value
            elif bound_sym is not None and size_sym is not None and bound_sym is size_sym:
                max_limit = None  # symbolically equals N (or N-1 for <)
                sym_slack = 1 if op == "<" else 0
                loop_slack = 1 if loop_op == "<" else 0
                if sym_slack + loop_slack >= 1:
                    return True
                continue
            elif bound_sym is not None and size_n is not None:
                continue
            else:
                continue
            loop_max_index = max_limit - (1 if loop_op == "<" else 0)
            if size_n is not None and loop_max_index <= size_n - 1:
                return True
    return False


def _enclosing_conditions(node: ast.Node, resolution: Resolution):
    """(condition, branch subtree) pairs for every enclosing if/while whose
    guarded region contains node."""
    out = []
    cur = node
    while True:
        parent = resolution.parents.get(cur.uid)
        if parent is None:
            break
        if isinstance(parent, ast.If) and cur is parent.then:
            out.append((parent.cond, cur))
        elif isinstance(parent, ast.While) and cur is parent.body:
            out.append((parent.cond, cur))
        cur = parent
    return out


# -- composition --------------------------------------------------------------------


def run_bound_check(
    unit: ast.CompilationUnit, resolution: Resolution | None = None
) -> list[BoundFinding]:
    """Full pipeline over one unit; findings sorted by (file, line, kind)."""
    if resolution is None:
        resolution = build_symbol_table(unit)
    arrays = find_arrays(unit, resolution)
    index_info = track_index_vars(arrays, resolution)
    checks = check_loops(unit, index_info, resolution)
    findings: list[BoundFinding] = []

    # Constant indices: directly range-checkable.
    for array in arrays:
        hi = array.legal_hi()
        for ref in array.references:
            value = _const_int(ref.index)
            if value is None:
                continue
            if hi is not None and (value < 0 or value > hi):
                findings.append(
                    BoundFinding(
                        KIND_OUT_OF_RANGE,
                        ref.span,
                        array,
                        f"constant index {value} outside [0, {hi}] of '{array.name}'",
                    )
                )
            elif array.size_kind != SIZE_CONSTANT and value >= 0:
                if not _access_guarded(ref, array, resolution):
                    findings.append(
                        BoundFinding(
                            KIND_ZERO_LENGTH,
                            ref.span,
                            array,
                            f"'{array.name}' has non-constant length; index {value} may not exist",
                        )
                    )

    # Loop verdicts.
    checked_pairs: set[tuple[int, int]] = set()
    for check in checks:
        if check.comparison is not None:
            checked_pairs.add((id(check.index_symbol), id(check.array)))
        if check.verdict == VERDICT_SAFE:
            continue
        access = _first_unguarded_access(check, resolution)
        if access is None:
            continue
        if check.verdict == VERDICT_OFF_BY_ONE:
            findings.append(
                BoundFinding(
                    KIND_OFF_BY_ONE,
                    access.span,
                    check.array,
                    f"loop runs '{check.index_symbol.name} {check.comparison} "
                    f"{_limit_text(check)}'; largest valid index of '{check.array.name}' is "
                    f"{_hi_text(check.array)}",
                )
            )
        elif check.verdict == VERDICT_MAY_EXCEED:
            findings.append(
                BoundFinding(
                    KIND_OUT_OF_RANGE,
                    access.span,
                    check.array,
                    f"loop limit {_limit_text(check)} exceeds the legal range of '{check.array.name}'",
                )
            )
        else:
            findings.append(
                BoundFinding(
                    KIND_VARIABLE_LIMIT,
                    access.span,
                    check.array,
                    f"loop over '{check.index_symbol.name}' is not bounded against the size of "
                    f"'{check.array.name}'",
                )
            )

    # Modified-but-unvalidated indices outside any bounding loop.  Indices
    # arriving as parameters count as unvalidated input unless guarded.
    for info in track_index_vars(arrays, resolution):
        from_parameter = info.symbol.kind == "param" and not info.symbol.is_catch_param
        if not info.v_marked and not from_parameter:
            continue
        if (id(info.symbol), id(info.array)) in checked_pairs:
            continue
        sites = info.modifying_sites
        if sites and all(s.kind == "constant" for s in sites) and not from_parameter:
            hi = info.array.legal_hi()
            if hi is not None:
                bad = [s for s in sites if s.value is not None and (s.value < 0 or s.value > hi)]
                if bad:
                    access = info.accesses[0]
                    findings.append(
                        BoundFinding(
                            KIND_OUT_OF_RANGE,
                            access.span,
                            info.array,
                            f"'{info.symbol.name}' set to {bad[0].value}, outside [0, {hi}]",
                        )
                    )
            continue
        if from_parameter and not sites:
            detail = (
                f"'{info.symbol.name}' arrives as a parameter and indexes "
                f"'{info.array.name}' without local validation"
            )
        else:
            detail = (
                f"'{info.symbol.name}' is modified (input or arithmetic) and indexes "
                f"'{info.array.name}' without validation"
            )
        for access in info.accesses:
            if not _access_guarded(access, info.array, resolution, info.symbol):
                findings.append(BoundFinding(KIND_UNVALIDATED_SOURCE, access.span, info.array, detail))
                break
    findings.sort(key=BoundFinding.sort_key)
    return findings


def _hi_text(array: ArrayDecl) -> str:
    hi = array.legal_hi()
    if hi is not None:
        return str(hi)
    if array.size_symbol is not None:
        return f"{array.size_symbol.name} - 1"
    return "length - 1"


def _limit_text(check: LoopLimitCheck) -> str:
    if check.limit_value is not None:
        return str(check.limit_value)
    if check.limit_symbol is not None:
        return check.limit_symbol.name
    return "<none>"


def _first_unguarded_access(check: LoopLimitCheck, resolution: Resolution) -> ast.Index | None:
    accesses = [
        acc
        for acc in check.array.references
        if _contains(check.loop, acc)
        and any(
            resolution.name_targets.get(n.uid) is check.index_symbol
            for n in _index_names(acc.index)
        )
    ]
    for acc in accesses:
        if not _access_guarded(acc, check.array, resolution, check.index_symbol):
            return acc
    return None


def _access_guarded(
    access: ast.Index,
    array: ArrayDecl,
    resolution: Resolution,
    index_sym: Symbol | None = None,
) -> bool:
    """Dominating-guard recognition for one access."""
    if index_sym is None:
        names = _index_names(access.index)
        syms = [resolution.name_targets.get(n.uid) for n in names]
        syms = [s for s in syms if s is not None]
    else:
        syms = [index_sym]
    size_n = array.size_value if array.size_kind == SIZE_CONSTANT else None
    size_sym = array.size_symbol
    const_index = _const_int(access.index)
    for cond, _branch in _enclosing_conditions(access, resolution):
        for sym in syms:
            for op, limit in _loop_comparisons(cond, sym, resolution):
                if op not in ("<", "<="):
                    continue
                value = _const_int(limit)
                bound_sym = (
                    resolution.name_targets.get(limit.uid) if isinstance(limit, ast.Name) else None
                )
                if bound_sym is not None and size_sym is not None and bound_sym is size_sym:
                    if op == "<":
                        return True
                    continue
                if value is not None:
                    max_index = value - 1 if op == "<" else value
                    if size_n is not None and max_index <= size_n - 1:
                        return True
                    if size_n is None and op == "<" and bound_sym is None:
                        continue
        if const_index is not None:
            # length guards for constant indices on variable-size arrays:
            # if (c < size) b[c] ...
            for op, limit in _const_comparisons(cond, const_index):
                if op == "<" and isinstance(limit, ast.Name):
                    bound_sym = resolution.name_targets.get(limit.uid)
                    if bound_sym is not None and bound_sym is size_sym:
                        return True
    return False


def _const_comparisons(cond: ast.Expr, value: int) -> list[tuple[str, ast.Expr]]:
    out = []
    stack = [cond]
    flipped = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}
    while stack:
        node = stack.pop()
        if isinstance(node, ast.Binary):
            if node.op == "&&":
                stack.extend((node.left, node.right))
            elif node.op in ("<", "<=", ">", ">="):
                if _const_int(node.left) == value:
                    out.append((node.op, node.right))
                elif _const_int(node.right) == value:
                    out.append((flipped[node.op], node.left))
    return out
