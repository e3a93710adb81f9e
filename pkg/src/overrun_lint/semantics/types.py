"""Semantic types for SL expressions."""

from __future__ import annotations

from dataclasses import dataclass

from ..frontend.ast import TypeRef


@dataclass(frozen=True)
class Type:
    def __str__(self) -> str:  # pragma: no cover - overridden
        return "?"


@dataclass(frozen=True)
class PrimType(Type):
    name: str  # int | byte | double | boolean | void

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class StringType(Type):
    nullable: bool = False

    def __str__(self) -> str:
        return "String-or-null" if self.nullable else "String"


@dataclass(frozen=True)
class ClassType(Type):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrayType(Type):
    elem: Type

    def __str__(self) -> str:
        return f"{self.elem}[]"


@dataclass(frozen=True)
class NullType(Type):
    def __str__(self) -> str:
        return "null"


@dataclass(frozen=True)
class UnknownType(Type):
    """Type of expressions past a resolution error; permissive on purpose."""

    def __str__(self) -> str:
        return "<unknown>"


INT = PrimType("int")
BYTE = PrimType("byte")
DOUBLE = PrimType("double")
BOOLEAN = PrimType("boolean")
VOID_T = PrimType("void")
STRING = StringType(False)
NULLABLE_STRING = StringType(True)
NULL = NullType()
UNKNOWN = UnknownType()

_PRIMS = {"int": INT, "byte": BYTE, "double": DOUBLE, "boolean": BOOLEAN, "void": VOID_T}


def from_type_ref(ref: TypeRef) -> Type:
    if ref.base in _PRIMS:
        base: Type = _PRIMS[ref.base]
    elif ref.base == "String":
        base = STRING
    else:
        base = ClassType(ref.base)
    for _ in range(ref.dims):
        base = ArrayType(base)
    return base


def is_numeric(t: Type) -> bool:
    return isinstance(t, PrimType) and t.name in ("int", "byte", "double")


def is_string(t: Type) -> bool:
    return isinstance(t, StringType)


def promote(a: Type, b: Type) -> Type:
    """Arithmetic result type for two numeric operands."""
    if DOUBLE in (a, b):
        return DOUBLE
    return INT


def assignable(dst: Type, src: Type, subclass_ok) -> bool:
    """Whether a value of src may be stored into a slot of dst.

    subclass_ok(base_name, derived_name) answers class-hierarchy queries.
    """
    if dst == src:
        return True
    if isinstance(dst, UnknownType) or isinstance(src, UnknownType):
        return True
    if dst == INT and src == BYTE:
        return True
    if dst == BYTE and src == INT:
        # Narrowing stores wrap at runtime (recorded as overflow warnings).
        return True
    if dst == DOUBLE and src in (INT, BYTE):
        return True
    if isinstance(dst, StringType) and isinstance(src, StringType):
        return True
    if isinstance(dst, (StringType, ClassType, ArrayType)) and isinstance(src, NullType):
        return True
    if isinstance(dst, ClassType) and isinstance(src, ClassType):
        return dst.name == src.name or subclass_ok(dst.name, src.name)
    return False
