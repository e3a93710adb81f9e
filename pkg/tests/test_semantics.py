import pytest

from overrun_lint.errors import TypeCheckError
from overrun_lint.frontend import ast, parse_source
from overrun_lint.frontend.ast import walk
from overrun_lint.semantics import build_call_graph, build_symbol_table, type_of
from overrun_lint.semantics import types as ty
from overrun_lint.semantics.callgraph import constructor_cycles, unconditional_cycles


def resolve(source, file="t.sl"):
    unit = parse_source(source, file)
    res = build_symbol_table(unit)
    return unit, res


def test_unused_local_has_zero_usage():
    _, res = resolve("class A { void test() { int z; } }")
    z = next(s for s in res.symbols if s.name == "z")
    assert z.kind == "local"
    assert z.usage_count == 0 and z.write_count == 0


def test_local_shadows_field():
    source = "class A { int v; void m() { int v = 1; println(v); } }"
    unit, res = resolve(source)
    field_sym = next(s for s in res.symbols if s.name == "v" and s.kind == "field")
    local_sym = next(s for s in res.symbols if s.name == "v" and s.kind == "local")
    assert field_sym.usage_count == 0
    assert local_sym.usage_count == 1


def test_param_shadowing_with_this_qualifier():
    source = "class A { int floor; void setFloor(int floor) { this.floor = floor; } }"
    _, res = resolve(source)
    field_sym = next(s for s in res.symbols if s.name == "floor" and s.kind == "field")
    param_sym = next(s for s in res.symbols if s.name == "floor" and s.kind == "param")
    assert field_sym.write_count == 1 and field_sym.usage_count == 0
    assert param_sym.usage_count == 1 and param_sym.write_count == 0


def test_corpus_resolves_clean(corpus_sources):
    for name, source in corpus_sources.items():
        _, res = resolve(source, name)
        assert res.diagnostics == [], name


def test_undeclared_identifier_reported():
    _, res = resolve("class A { void m() { ghost = 1; } }")
    assert any("ghost" in str(d) for d in res.diagnostics)


def test_duplicate_local_reported():
    _, res = resolve("class A { void m() { int x; int x; } }")
    assert any("duplicate" in str(d).lower() for d in res.diagnostics)


def test_string_equality_types_recorded():
    source = 'class A { boolean m(String a, String b) { return a == b; } }'
    unit, res = resolve(source)
    eq = next(n for n in walk(unit) if isinstance(n, ast.Binary) and n.op == "==")
    assert type_of(eq, res) == ty.BOOLEAN
    assert isinstance(type_of(eq.left, res), ty.StringType)
    assert isinstance(type_of(eq.right, res), ty.StringType)


def test_array_element_typing():
    source = "class A { double m() { double[] vals = new double[10]; return vals[3]; } }"
    unit, res = resolve(source)
    idx = next(n for n in walk(unit) if isinstance(n, ast.Index))
    assert type_of(idx, res) == ty.DOUBLE


def test_readline_is_nullable_string():
    source = "class A { void m() { String s = readLine(); println(s); } }"
    unit, res = resolve(source)
    call = next(n for n in walk(unit) if isinstance(n, ast.Call) and n.name == "readLine")
    assert type_of(call, res) == ty.NULLABLE_STRING
    name = next(n for n in walk(unit) if isinstance(n, ast.Name) and n.identifier == "s")
    assert type_of(name, res) == ty.STRING


@pytest.mark.parametrize(
    "source",
    [
        'class A { void m() { int x = "s"; } }',
        "class A { void m(boolean b) { int x = b + 1; } }",
        "class A { void m(int x) { if (x) { } } }",
        'class A { void m(String s) { int x = s < "t"; } }',
        "class A { int m() { return; } }",
    ],
)
def test_type_errors(source):
    unit = parse_source(source)
    with pytest.raises(TypeCheckError):
        build_symbol_table(unit)


def test_constant_int_condition_is_legal():
    resolve("class A { void m() { if (1) { println(1); } } }")


def test_usage_sum_equals_read_occurrences(corpus_sources):
    for name, source in corpus_sources.items():
        unit, res = resolve(source, name)
        reads = sum(s.usage_count for s in res.symbols)
        resolved_names = sum(
            1 for n in walk(unit) if isinstance(n, (ast.Name,)) and n.uid in res.name_targets
        )
        field_reads = sum(
            1 for n in walk(unit) if isinstance(n, ast.FieldAccess) and n.uid in res.field_targets
        )
        writes = sum(s.write_count for s in res.symbols)
        # every resolved Name/FieldAccess occurrence is either a read or a write
        assert reads + writes == resolved_names + field_reads, name


def test_call_graph_edge_count_equals_call_sites(corpus_sources):
    for name, source in corpus_sources.items():
        unit, res = resolve(source, name)
        graph = build_call_graph(unit, res)
        sites = sum(1 for n in walk(unit) if isinstance(n, (ast.Call, ast.New)))
        assert len(graph.edges) == sites, name


def test_makeover_cycle_detected(corpus_sources):
    unit, res = resolve(corpus_sources["makeover.sl"], "makeover.sl")
    graph = build_call_graph(unit, res)
    edge = next(e for e in graph.edges if e.caller.startswith("Driver.Makeoverdone"))
    assert not edge.unconditional  # inside if(1): syntactically conditional
    assert edge.effectively_unconditional  # constant-true folds
    cycles = unconditional_cycles(graph)
    assert cycles == [["Driver.Makeoverdone/0", "Driver.makeover/0"]]


def test_constructor_cycle_detected(corpus_sources):
    unit, res = resolve(corpus_sources["building_lift.sl"], "building_lift.sl")
    graph = build_call_graph(unit, res)
    assert constructor_cycles(graph) == [["Building.<init>/0", "Lift.<init>/0"]]


def test_leaf_method_has_no_outgoing_edges():
    unit, res = resolve("class A { void leaf() { } void m() { leaf(); } }")
    graph = build_call_graph(unit, res)
    assert graph.edges_from("A.leaf/0") == []
    assert len(graph.edges_from("A.m/0")) == 1


def test_builtin_callees_marked():
    unit, res = resolve("class A { void m() { println(1); } }")
    graph = build_call_graph(unit, res)
    (edge,) = graph.edges
    assert edge.callee_builtin and edge.callee == "builtin:println"
