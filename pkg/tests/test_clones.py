import pytest

from overrun_lint.detectors import find_duplicates
from overrun_lint.errors import DomainError
from overrun_lint.frontend import parse_source, tokenize
from overrun_lint.frontend.lexer import COMMENT


DUPLICATED_BODY = """\
        int total = 0;
        for (int i = 0; i < 10; i++) {
            total = total + i * 2;
            println(total);
        }
        println("sum " + total);
"""


def unit_with_two_copies():
    source = (
        "class A {\n"
        "    void first() {\n" + DUPLICATED_BODY + "    }\n\n"
        "    void second() {\n" + DUPLICATED_BODY.replace("total", "acc") + "    }\n"
        "}\n"
    )
    return parse_source(source, "dup.sl")


def test_copied_body_reported_once():
    unit = unit_with_two_copies()
    pairs = find_duplicates([unit], min_tokens=20)
    assert len(pairs) == 1
    (pair,) = pairs
    assert pair.token_length >= 20
    assert pair.span_a.line < pair.span_b.line


def test_renamed_identifiers_still_match():
    # second() renames every variable; normalization maps both to ID
    unit = unit_with_two_copies()
    pairs = find_duplicates([unit], min_tokens=25)
    assert pairs, "type-2 clone should be found"


def test_all_distinct_unit_empty():
    unit = parse_source(
        "class A { void a() { println(1); } void b(int x) { x = x + 2; } }", "d.sl"
    )
    assert find_duplicates([unit], min_tokens=10) == []


def test_boundary_below_min_tokens_not_reported():
    # a window of exactly min_tokens - 1 identical tokens is not reported
    stmt = "x = x + 1; x = x * 2; println(x);"
    source = (
        "class A {\n"
        f"    void a(int x) {{ println(\"alpha\"); {stmt} }}\n"
        f"    void b(int y) {{ y = y - 7; {stmt.replace('x', 'y')} }}\n"
        "}\n"
    )
    unit = parse_source(source, "b.sl")
    pairs = find_duplicates([unit], min_tokens=10)
    (pair,) = pairs
    longest = pair.token_length
    assert find_duplicates([unit], min_tokens=longest) != []
    assert find_duplicates([unit], min_tokens=longest + 1) == []


def test_windows_identical_after_normalization():
    from overrun_lint.detectors.clones import _normalize

    unit = unit_with_two_copies()
    pairs = find_duplicates([unit], min_tokens=20)
    tokens = [t for t in tokenize(unit.source, unit.file) if t.kind != COMMENT]
    for pair in pairs:
        def window(span):
            return [
                _normalize(t)
                for t in tokens
                if (t.span.line, t.span.column) >= (span.line, span.column)
                and (t.span.end_line, t.span.end_column) <= (span.end_line, span.end_column)
            ]

        assert window(pair.span_a) == window(pair.span_b)


def test_cross_file_clones():
    a = parse_source("class A { void m() {" + DUPLICATED_BODY + "} }", "a.sl")
    b = parse_source("class B { void n() {" + DUPLICATED_BODY + "} }", "b.sl")
    pairs = find_duplicates([a, b], min_tokens=20)
    assert any(p.span_a.file != p.span_b.file for p in pairs)


def test_min_tokens_floor_enforced():
    unit = parse_source("class A { }", "a.sl")
    with pytest.raises(DomainError):
        find_duplicates([unit], min_tokens=9)


def test_comments_ignored():
    a = "class A { void m() {" + DUPLICATED_BODY + "} }"
    b = a.replace("int total = 0;", "int total = 0; // note")
    pairs = find_duplicates([parse_source(a, "a.sl"), parse_source(b, "b.sl")], min_tokens=20)
    assert pairs
