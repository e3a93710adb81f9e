"""Call graph construction: one edge per syntactic Call/New site."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast
from ..frontend.lexer import SourceSpan
from .resolver import Resolution

_CONDITIONING = (ast.If, ast.While, ast.For, ast.Switch, ast.Try)


@dataclass
class CallEdge:
    caller: str
    callee: str
    span: SourceSpan
    unconditional: bool
    callee_builtin: bool = False
    is_new: bool = False
    call_uid: int = -1
    # True when every conditioning ancestor is a constant-true branch,
    # i.e. the call runs whenever the caller does.
    effectively_unconditional: bool = False


@dataclass
class CallGraph:
    nodes: set[str] = field(default_factory=set)
    builtin_nodes: set[str] = field(default_factory=set)
    edges: list[CallEdge] = field(default_factory=list)

    def edges_from(self, node: str) -> list[CallEdge]:
        return [e for e in self.edges if e.caller == node]


def build_call_graph(unit: ast.CompilationUnit, resolution: Resolution) -> CallGraph:
    graph = CallGraph()
    for info in resolution.classes.values():
        for minfo in info.methods.values():
            graph.nodes.add(minfo.method_id)
    graph.nodes.add("unknown")
    for cls in unit.classes:
        info = resolution.classes.get(cls.name)
        if info is None:
            continue
        for method in cls.methods:
            key = ("<init>" if method.is_constructor else method.name, method.arity)
            minfo = info.methods.get(key)
            if minfo is None or minfo.decl is not method:
                continue
            caller = minfo.method_id
            for node in ast.walk(method.body):
                if not isinstance(node, (ast.Call, ast.New)):
                    continue
                target = resolution.call_targets.get(node.uid)
                if target is None:
                    callee, builtin = "unknown", False
                elif target.kind == "builtin":
                    callee, builtin = target.id, True
                elif target.kind == "unknown":
                    callee, builtin = "unknown", False
                else:
                    callee, builtin = target.id, False
                if builtin:
                    graph.builtin_nodes.add(callee)
                else:
                    graph.nodes.add(callee)
                graph.edges.append(
                    CallEdge(
                        caller=caller,
                        callee=callee,
                        span=node.span,
                        unconditional=_is_unconditional(node, method.body, resolution),
                        callee_builtin=builtin,
                        is_new=isinstance(node, ast.New),
                        call_uid=node.uid,
                        effectively_unconditional=_is_effectively_unconditional(
                            node, method.body, resolution
                        ),
                    )
                )
    return graph


def _is_unconditional(node: ast.Node, body: ast.Block, resolution: Resolution) -> bool:
    cur = node
    while cur.uid != body.uid:
        parent = resolution.parents.get(cur.uid)
        if parent is None:
            return False
        if isinstance(parent, _CONDITIONING):
            return False
        cur = parent
    return True


def _is_effectively_unconditional(
    node: ast.Node, body: ast.Block, resolution: Resolution
) -> bool:
    """Unconditional after folding constant-true conditions (if(1) et al)."""
    cur = node
    while cur.uid != body.uid:
        parent = resolution.parents.get(cur.uid)
        if parent is None:
            return False
        if isinstance(parent, ast.If):
            truth = ast.literal_truth(parent.cond)
            if cur is parent.cond:
                pass
            elif truth is True and cur is parent.then:
                pass
            elif truth is False and cur is parent.els:
                pass
            else:
                return False
        elif isinstance(parent, (ast.While, ast.For)):
            cond = parent.cond
            truth = True if (isinstance(parent, ast.For) and cond is None) else ast.literal_truth(cond)
            if cur is cond:
                pass
            elif truth is True:
                pass
            else:
                return False
        elif isinstance(parent, (ast.Switch, ast.Try, ast.SwitchCase, ast.CatchClause)):
            return False
        cur = parent
    return True


def unconditional_cycles(graph: CallGraph) -> list[list[str]]:
    """Strongly connected components of the effectively-unconditional subgraph
    that contain a cycle, sorted for determinism."""
    adjacency: dict[str, set[str]] = {}
    for edge in graph.edges:
        if edge.effectively_unconditional and not edge.callee_builtin and edge.callee != "unknown":
            adjacency.setdefault(edge.caller, set()).add(edge.callee)
    return _cyclic_sccs(adjacency)


def constructor_cycles(graph: CallGraph) -> list[list[str]]:
    """Cycles among constructors regardless of conditioning."""
    adjacency: dict[str, set[str]] = {}
    for edge in graph.edges:
        if ".<init>/" in edge.caller and ".<init>/" in edge.callee:
            adjacency.setdefault(edge.caller, set()).add(edge.callee)
    return _cyclic_sccs(adjacency)


def _cyclic_sccs(adjacency: dict[str, set[str]]) -> list[list[str]]:
    # Tarjan, iterative to keep deep graphs safe.
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    sccs: list[list[str]] = []
    nodes = sorted(set(adjacency) | {n for targets in adjacency.values() for n in targets})

    def strongconnect(root: str) -> None:
        work = [(root, iter(sorted(adjacency.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(adjacency.get(succ, ())))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1 or node in adjacency.get(node, ()):
                    sccs.append(sorted(component))

    for node in nodes:
        if node not in index:
            strongconnect(node)
    return sorted(sccs)
