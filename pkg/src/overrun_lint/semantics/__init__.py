from .resolver import (
    CallTarget,
    ClassInfo,
    MethodInfo,
    Resolution,
    Scope,
    Symbol,
    build_symbol_table,
    type_of,
)
from .callgraph import CallEdge, CallGraph, build_call_graph

__all__ = [
    "CallTarget",
    "ClassInfo",
    "MethodInfo",
    "Resolution",
    "Scope",
    "Symbol",
    "build_symbol_table",
    "type_of",
    "CallEdge",
    "CallGraph",
    "build_call_graph",
]
