"""AST node definitions for SL plus generic tree utilities.

Every node carries a SourceSpan and a unit-unique integer uid assigned in
construction order, which downstream passes use as a stable map key.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, is_dataclass
from typing import Iterator, Optional

from .lexer import SourceSpan


@dataclass(kw_only=True)
class Node:
    span: SourceSpan
    uid: int = -1


@dataclass(kw_only=True)
class Stmt(Node):
    leading_comments: list[str] = field(default_factory=list)


@dataclass(kw_only=True)
class Expr(Node):
    pass


@dataclass(frozen=True)
class TypeRef:
    """A declared type: base name plus array dimensions."""

    base: str
    dims: int = 0

    def __str__(self) -> str:
        return self.base + "[]" * self.dims

    @property
    def is_array(self) -> bool:
        return self.dims > 0

    def element(self) -> "TypeRef":
        return TypeRef(self.base, self.dims - 1)


VOID = TypeRef("void")


# --- declarations -----------------------------------------------------------


@dataclass(kw_only=True)
class Param(Node):
    name: str
    type: TypeRef
    final: bool = False


@dataclass(kw_only=True)
class FieldDecl(Node):
    name: str
    type: TypeRef
    static: bool = False
    final: bool = False
    initializer: Optional[Expr] = None
    leading_comments: list[str] = field(default_factory=list)


@dataclass(kw_only=True)
class MethodDecl(Node):
    name: str
    params: list[Param]
    return_type: TypeRef
    body: "Block"
    is_constructor: bool = False
    is_static: bool = False
    leading_comments: list[str] = field(default_factory=list)

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(kw_only=True)
class ClassDecl(Node):
    name: str
    extends: Optional[str] = None
    fields: list[FieldDecl] = field(default_factory=list)
    methods: list[MethodDecl] = field(default_factory=list)
    is_builtin_thread_subclass: bool = False
    leading_comments: list[str] = field(default_factory=list)


@dataclass(kw_only=True)
class CompilationUnit(Node):
    package_name: Optional[str] = None
    classes: list[ClassDecl] = field(default_factory=list)
    source: str = ""
    file: str = "<memory>"
    trailing_comments: list[str] = field(default_factory=list)
    next_uid: int = 0

    def fresh_uid(self) -> int:
        u = self.next_uid
        self.next_uid += 1
        return u


# --- statements --------------------------------------------------------------


@dataclass(kw_only=True)
class Block(Stmt):
    stmts: list[Stmt] = field(default_factory=list)
    trailing_comments: list[str] = field(default_factory=list)


@dataclass(kw_only=True)
class If(Stmt):
    cond: Expr
    then: Block
    els: Optional[Stmt] = None  # Block, or If for else-if chains
    # Set by the assert instrumentor so the interpreter can log passing
    # assertion checks; never serialized.
    assert_origin: Optional["AssertInfo"] = None


@dataclass(frozen=True)
class AssertInfo:
    unit_name: str
    statement_text: str


@dataclass(kw_only=True)
class While(Stmt):
    cond: Expr
    body: Block


@dataclass(kw_only=True)
class For(Stmt):
    init: Optional[Stmt] = None  # LocalDecl or ExprStmt
    cond: Optional[Expr] = None
    update: Optional[Expr] = None
    body: Block = None  # type: ignore[assignment]


@dataclass(kw_only=True)
class SwitchCase(Node):
    label: Optional[Expr]  # None for default
    body: list[Stmt] = field(default_factory=list)


@dataclass(kw_only=True)
class Switch(Stmt):
    subject: Expr
    cases: list[SwitchCase] = field(default_factory=list)


@dataclass(kw_only=True)
class CatchClause(Node):
    exc_type: TypeRef
    name: str
    body: Block = None  # type: ignore[assignment]


@dataclass(kw_only=True)
class Try(Stmt):
    body: Block
    catches: list[CatchClause] = field(default_factory=list)
    finally_block: Optional[Block] = None


@dataclass(kw_only=True)
class Return(Stmt):
    value: Optional[Expr] = None


@dataclass(kw_only=True)
class ExprStmt(Stmt):
    expr: Expr


@dataclass(kw_only=True)
class LocalDecl(Stmt):
    name: str
    type: TypeRef
    final: bool = False
    initializer: Optional[Expr] = None


@dataclass(kw_only=True)
class Assert(Stmt):
    condition: Expr
    message: Optional[Expr] = None


@dataclass(kw_only=True)
class Synchronized(Stmt):
    monitor: Expr
    body: Block


@dataclass(kw_only=True)
class Empty(Stmt):
    pass


# --- expressions --------------------------------------------------------------


@dataclass(kw_only=True)
class Binary(Expr):
    op: str  # includes "=" for assignment
    left: Expr
    right: Expr


@dataclass(kw_only=True)
class Unary(Expr):
    op: str
    operand: Expr


@dataclass(kw_only=True)
class Call(Expr):
    name: str
    args: list[Expr] = field(default_factory=list)
    receiver: Optional[Expr] = None


@dataclass(kw_only=True)
class New(Expr):
    class_name: str
    args: list[Expr] = field(default_factory=list)


@dataclass(kw_only=True)
class NewArray(Expr):
    elem_type: TypeRef
    size_expr: Expr = None  # type: ignore[assignment]


@dataclass(kw_only=True)
class Index(Expr):
    array: Expr
    index: Expr


@dataclass(kw_only=True)
class FieldAccess(Expr):
    receiver: Expr
    name: str


@dataclass(kw_only=True)
class Name(Expr):
    identifier: str


@dataclass(kw_only=True)
class Literal(Expr):
    value: object
    kind: str  # int | double | string | boolean


@dataclass(kw_only=True)
class Null(Expr):
    pass


# --- tree utilities -----------------------------------------------------------

_SKIP_FIELDS = {"span", "uid", "assert_origin"}


def child_nodes(node: Node) -> Iterator[Node]:
    """Direct child nodes, in field order."""
    for f in fields(node):
        if f.name in _SKIP_FIELDS:
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield value
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Node):
                    yield item


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal of the subtree rooted at node."""
    yield node
    for child in child_nodes(node):
        yield from walk(child)


def parent_map(root: Node) -> dict[int, Node]:
    """Map child uid -> parent node for the whole subtree."""
    parents: dict[int, Node] = {}
    for node in walk(root):
        for child in child_nodes(node):
            parents[child.uid] = node
    return parents


def count_nodes(root: Node, kind: type | None = None) -> int:
    return sum(1 for n in walk(root) if kind is None or isinstance(n, kind))


def literal_truth(expr: Expr | None) -> Optional[bool]:
    """Truth value of a literal boolean/int condition; None when not constant.

    Int literals follow the zero/nonzero convention so shapes like if(1)
    fold; no other expressions are evaluated.
    """
    if isinstance(expr, Literal):
        if expr.kind == "boolean":
            return bool(expr.value)
        if expr.kind == "int":
            return expr.value != 0
    return None


_EQ_SKIP = {"span", "uid", "next_uid", "source", "file", "assert_origin"}


def structural_eq(a: object, b: object) -> bool:
    """Span-insensitive AST equality (comments included)."""
    if type(a) is not type(b):
        return False
    if is_dataclass(a):
        for f in fields(a):
            if f.name in _EQ_SKIP:
                continue
            if not structural_eq(getattr(a, f.name), getattr(b, f.name)):
                return False
        return True
    if isinstance(a, list):
        return len(a) == len(b) and all(structural_eq(x, y) for x, y in zip(a, b))
    return a == b
