"""Exception types shared across the toolchain."""

from __future__ import annotations


class OverrunLintError(Exception):
    """Base class for everything this package raises on purpose."""


class SpannedError(OverrunLintError):
    def __init__(self, span, message: str):
        self.span = span
        self.message = message
        super().__init__(f"{span}: {message}" if span is not None else message)


class LexError(SpannedError):
    """Unterminated string/comment or illegal character."""


class ParseError(SpannedError):
    def __init__(self, span, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(span, f"expected {expected}, found {found}")


class ResolutionError(SpannedError):
    def __init__(self, span, name: str):
        self.name = name
        super().__init__(span, f"undeclared identifier '{name}'")


class DuplicateDeclaration(SpannedError):
    def __init__(self, span, name: str):
        self.name = name
        super().__init__(span, f"duplicate declaration of '{name}'")


class TypeCheckError(SpannedError):
    """Operator/operand mismatch discovered while typing expressions."""


class ConfigError(OverrunLintError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class UnknownRuleError(OverrunLintError):
    def __init__(self, rule_id: str):
        self.rule_id = rule_id
        super().__init__(f"unknown rule id '{rule_id}'")


class EntryNotFoundError(OverrunLintError):
    """Requested entry point does not exist or is not runnable."""


class DomainError(OverrunLintError):
    """Input outside an operation's declared domain."""


class CoverageUnavailableError(OverrunLintError):
    """Trace was produced without coverage recording."""


class SpanOutOfRangeError(OverrunLintError):
    """Annotation target lies outside the source text."""


class InterpreterError(OverrunLintError):
    """Runtime condition the interpreter does not model as a trace fault."""
