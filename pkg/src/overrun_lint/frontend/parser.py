"""Recursive-descent parser producing CompilationUnit trees.

Parsing is strict: the first syntax error aborts the unit with a
ParseError.  Control-structure bodies are normalized to Block nodes
(an `else if` keeps the nested If directly).  `i++`/`i--` are accepted
in statement and for-update position as sugar for `i = i + 1` / `i = i - 1`.
"""

from __future__ import annotations

from ..errors import ParseError
from . import ast
from .ast import TypeRef
from .lexer import (
    COMMENT,
    DOUBLE_LITERAL,
    IDENTIFIER,
    INT_LITERAL,
    KEYWORD,
    OPERATOR,
    PUNCT,
    STRING_LITERAL,
    SourceSpan,
    Token,
    string_literal_value,
    tokenize,
)

PRIMITIVE_TYPES = ("int", "byte", "double", "boolean")


class _TokenStream:
    """Comment-filtering cursor over the token list."""

    def __init__(self, tokens: list[Token], file: str):
        self.tokens = [t for t in tokens if t.kind != COMMENT]
        self.all_tokens = tokens
        self.file = file
        self.pos = 0
        self._pending_comments: list[str] = []
        self._comment_iter = iter([t for t in tokens if t.kind == COMMENT])
        self._comments = [t for t in tokens if t.kind == COMMENT]
        self._comment_idx = 0

    def _sync_comments(self) -> None:
        # Queue comments that appear before the next significant token.
        next_off = (
            self.tokens[self.pos].offset if self.pos < len(self.tokens) else float("inf")
        )
        while (
            self._comment_idx < len(self._comments)
            and self._comments[self._comment_idx].offset < next_off
        ):
            self._pending_comments.append(self._comments[self._comment_idx].text)
            self._comment_idx += 1

    def take_comments(self) -> list[str]:
        self._sync_comments()
        out = self._pending_comments
        self._pending_comments = []
        return out

    def eof(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self, ahead: int = 0) -> Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        self._sync_comments()
        if self.eof():
            raise ParseError(self._eof_span(), "more input", "end of file")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def last(self) -> Token:
        return self.tokens[self.pos - 1]

    def _eof_span(self) -> SourceSpan:
        if self.tokens:
            t = self.tokens[-1].span
            return SourceSpan(self.file, t.end_line, t.end_column, t.end_line, t.end_column)
        return SourceSpan(self.file, 1, 1, 1, 1)

    def at(self, kind: str, text: str | None = None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        if self.eof():
            raise ParseError(self._eof_span(), what or text or kind, "end of file")
        tok = self.tokens[self.pos]
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(tok.span, what or text or kind, repr(tok.text))
        return self.advance()


class Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.ts = _TokenStream(tokens, file)
        self.file = file
        self._uid = 0

    # -- helpers ---------------------------------------------------------

    def _fresh(self) -> int:
        u = self._uid
        self._uid += 1
        return u

    def _span_from(self, start: Token) -> SourceSpan:
        end = self.ts.last().span
        return SourceSpan(self.file, start.span.line, start.span.column, end.end_line, end.end_column)

    def _node(self, cls, start: Token, **kw):
        return cls(span=self._span_from(start), uid=self._fresh(), **kw)

    # -- unit --------------------------------------------------------------

    def parse_unit(self, source: str = "") -> ast.CompilationUnit:
        ts = self.ts
        first = ts.peek()
        start = first if first is not None else None
        package = None
        lead = ts.take_comments()
        if ts.at(KEYWORD, "package"):
            ts.advance()
            parts = [ts.expect(IDENTIFIER).text]
            while ts.at(PUNCT, "."):
                ts.advance()
                parts.append(ts.expect(IDENTIFIER).text)
            ts.expect(PUNCT, ";")
            package = ".".join(parts)
            lead += ts.take_comments()
        classes = []
        while not ts.eof():
            cls = self._class_decl(lead)
            lead = ts.take_comments()
            classes.append(cls)
        trailing = lead
        if start is None:
            span = SourceSpan(self.file, 1, 1, 1, 1)
        else:
            span = self._span_from(start)
        unit = ast.CompilationUnit(
            span=span,
            uid=self._fresh(),
            package_name=package,
            classes=classes,
            source=source,
            file=self.file,
            trailing_comments=trailing,
        )
        unit.next_uid = self._uid
        return unit

    def _class_decl(self, lead: list[str]) -> ast.ClassDecl:
        ts = self.ts
        start = ts.expect(KEYWORD, "class")
        name = ts.expect(IDENTIFIER, what="class name").text
        extends = None
        if ts.at(KEYWORD, "extends"):
            ts.advance()
            extends = ts.expect(IDENTIFIER, what="superclass name").text
        ts.expect(PUNCT, "{")
        fields: list[ast.FieldDecl] = []
        methods: list[ast.MethodDecl] = []
        while not ts.at(PUNCT, "}"):
            member_lead = ts.take_comments()
            member = self._member(name)
            member.leading_comments = member_lead
            if isinstance(member, ast.FieldDecl):
                fields.append(member)
            else:
                methods.append(member)
        ts.expect(PUNCT, "}")
        return self._node(
            ast.ClassDecl,
            start,
            name=name,
            extends=extends,
            fields=fields,
            methods=methods,
            is_builtin_thread_subclass=(extends == "Thread"),
            leading_comments=lead,
        )

    def _member(self, class_name: str):
        ts = self.ts
        start = ts.peek()
        if start is None:
            raise ParseError(ts._eof_span(), "class member", "end of file")
        static = False
        final = False
        while ts.at(KEYWORD, "static") or ts.at(KEYWORD, "final"):
            tok = ts.advance()
            if tok.text == "static":
                static = True
            else:
                final = True
        # Constructor: ClassName followed by '('.
        if ts.at(IDENTIFIER, class_name) and ts.at(PUNCT, "(", ahead=1):
            ts.advance()
            params = self._params()
            body = self._block()
            return self._node(
                ast.MethodDecl,
                start,
                name=class_name,
                params=params,
                return_type=ast.VOID,
                body=body,
                is_constructor=True,
                is_static=static,
            )
        if ts.at(KEYWORD, "void"):
            ts.advance()
            rtype = ast.VOID
        else:
            rtype = self._type()
        name = ts.expect(IDENTIFIER, what="member name").text
        if ts.at(PUNCT, "("):
            params = self._params()
            body = self._block()
            return self._node(
                ast.MethodDecl,
                start,
                name=name,
                params=params,
                return_type=rtype,
                body=body,
                is_static=static,
            )
        init = None
        if ts.at(OPERATOR, "="):
            ts.advance()
            init = self._expr()
        ts.expect(PUNCT, ";")
        return self._node(
            ast.FieldDecl,
            start,
            name=name,
            type=rtype,
            static=static,
            final=final,
            initializer=init,
        )

    def _params(self) -> list[ast.Param]:
        ts = self.ts
        ts.expect(PUNCT, "(")
        params: list[ast.Param] = []
        if not ts.at(PUNCT, ")"):
            while True:
                start = ts.peek()
                final = False
                if ts.at(KEYWORD, "final"):
                    ts.advance()
                    final = True
                ptype = self._type()
                pname = ts.expect(IDENTIFIER, what="parameter name").text
                params.append(self._node(ast.Param, start, name=pname, type=ptype, final=final))
                if ts.at(PUNCT, ","):
                    ts.advance()
                    continue
                break
        ts.expect(PUNCT, ")")
        return params

    def _type(self) -> TypeRef:
        ts = self.ts
        tok = ts.peek()
        if tok is None:
            raise ParseError(ts._eof_span(), "type", "end of file")
        if tok.kind == KEYWORD and tok.text in PRIMITIVE_TYPES:
            ts.advance()
            base = tok.text
        elif tok.kind == IDENTIFIER:
            ts.advance()
            base = tok.text
        else:
            raise ParseError(tok.span, "type", repr(tok.text))
        dims = 0
        while ts.at(PUNCT, "[") and ts.at(PUNCT, "]", ahead=1):
            ts.advance()
            ts.advance()
            dims += 1
        return TypeRef(base, dims)

    # -- statements --------------------------------------------------------

    def _block(self) -> ast.Block:
        ts = self.ts
        start = ts.expect(PUNCT, "{")
        stmts: list[ast.Stmt] = []
        while not ts.at(PUNCT, "}"):
            stmts.append(self._stmt())
        trailing = ts.take_comments()
        ts.expect(PUNCT, "}")
        return self._node(ast.Block, start, stmts=stmts, trailing_comments=trailing)

    def _body_block(self) -> ast.Block:
        """Parse a control-structure body, normalizing to a Block."""
        ts = self.ts
        if ts.at(PUNCT, "{"):
            return self._block()
        start = ts.peek()
        stmt = self._stmt()
        return self._node(ast.Block, start, stmts=[stmt])

    def _stmt(self) -> ast.Stmt:
        ts = self.ts
        lead = ts.take_comments()
        stmt = self._stmt_inner()
        stmt.leading_comments = lead + stmt.leading_comments
        return stmt

    def _stmt_inner(self) -> ast.Stmt:
        ts = self.ts
        tok = ts.peek()
        if tok is None:
            raise ParseError(ts._eof_span(), "statement", "end of file")
        if tok.kind == PUNCT and tok.text == "{":
            return self._block()
        if tok.kind == PUNCT and tok.text == ";":
            ts.advance()
            return self._node(ast.Empty, tok)
        if tok.kind == KEYWORD:
            kw = tok.text
            if kw == "if":
                return self._if_stmt()
            if kw == "while":
                return self._while_stmt()
            if kw == "for":
                return self._for_stmt()
            if kw == "switch":
                return self._switch_stmt()
            if kw == "try":
                return self._try_stmt()
            if kw == "return":
                ts.advance()
                value = None
                if not ts.at(PUNCT, ";"):
                    value = self._expr()
                ts.expect(PUNCT, ";")
                return self._node(ast.Return, tok, value=value)
            if kw == "assert":
                ts.advance()
                cond = self._expr()
                message = None
                if ts.at(PUNCT, ":"):
                    ts.advance()
                    message = self._expr()
                ts.expect(PUNCT, ";")
                return self._node(ast.Assert, tok, condition=cond, message=message)
            if kw == "synchronized":
                ts.advance()
                ts.expect(PUNCT, "(")
                monitor = self._expr()
                ts.expect(PUNCT, ")")
                body = self._block()
                return self._node(ast.Synchronized, tok, monitor=monitor, body=body)
            if kw in PRIMITIVE_TYPES or kw == "final":
                return self._local_decl()
        if self._looks_like_decl():
            return self._local_decl()
        expr = self._expr_or_incr()
        start = tok
        ts.expect(PUNCT, ";")
        return self._node(ast.ExprStmt, start, expr=expr)

    def _looks_like_decl(self) -> bool:
        ts = self.ts
        if not ts.at(IDENTIFIER):
            return False
        if ts.at(IDENTIFIER, ahead=1):
            return True
        return ts.at(PUNCT, "[", ahead=1) and ts.at(PUNCT, "]", ahead=2)

    def _local_decl(self, consume_semi: bool = True) -> ast.LocalDecl:
        ts = self.ts
        start = ts.peek()
        final = False
        if ts.at(KEYWORD, "final"):
            ts.advance()
            final = True
        dtype = self._type()
        name = ts.expect(IDENTIFIER, what="variable name").text
        init = None
        if ts.at(OPERATOR, "="):
            ts.advance()
            init = self._expr()
        if consume_semi:
            ts.expect(PUNCT, ";")
        return self._node(ast.LocalDecl, start, name=name, type=dtype, final=final, initializer=init)

    def _if_stmt(self) -> ast.If:
        ts = self.ts
        start = ts.expect(KEYWORD, "if")
        ts.expect(PUNCT, "(")
        cond = self._expr()
        ts.expect(PUNCT, ")")
        then = self._body_block()
        els: ast.Stmt | None = None
        if ts.at(KEYWORD, "else"):
            ts.advance()
            if ts.at(KEYWORD, "if"):
                els = self._if_stmt()
            else:
                els = self._body_block()
        return self._node(ast.If, start, cond=cond, then=then, els=els)

    def _while_stmt(self) -> ast.While:
        ts = self.ts
        start = ts.expect(KEYWORD, "while")
        ts.expect(PUNCT, "(")
        cond = self._expr()
        ts.expect(PUNCT, ")")
        body = self._body_block()
        return self._node(ast.While, start, cond=cond, body=body)

    def _for_stmt(self) -> ast.For:
        ts = self.ts
        start = ts.expect(KEYWORD, "for")
        ts.expect(PUNCT, "(")
        init: ast.Stmt | None = None
        if not ts.at(PUNCT, ";"):
            if ts.at(KEYWORD, "final") or (ts.at(KEYWORD) and ts.peek().text in PRIMITIVE_TYPES) or self._looks_like_decl():
                init = self._local_decl(consume_semi=False)
            else:
                first = ts.peek()
                expr = self._expr_or_incr()
                init = self._node(ast.ExprStmt, first, expr=expr)
            ts.expect(PUNCT, ";")
        else:
            ts.advance()
        cond: ast.Expr | None = None
        if not ts.at(PUNCT, ";"):
            cond = self._expr()
        ts.expect(PUNCT, ";")
        update: ast.Expr | None = None
        if not ts.at(PUNCT, ")"):
            update = self._expr_or_incr()
        ts.expect(PUNCT, ")")
        body = self._body_block()
        return self._node(ast.For, start, init=init, cond=cond, update=update, body=body)

    def _switch_stmt(self) -> ast.Switch:
        ts = self.ts
        start = ts.expect(KEYWORD, "switch")
        ts.expect(PUNCT, "(")
        subject = self._expr()
        ts.expect(PUNCT, ")")
        ts.expect(PUNCT, "{")
        cases: list[ast.SwitchCase] = []
        while not ts.at(PUNCT, "}"):
            case_start = ts.peek()
            label: ast.Expr | None
            if ts.at(KEYWORD, "case"):
                ts.advance()
                label = self._expr()
            else:
                ts.expect(KEYWORD, "default", what="'case' or 'default'")
                label = None
            ts.expect(PUNCT, ":")
            body: list[ast.Stmt] = []
            while not (ts.at(KEYWORD, "case") or ts.at(KEYWORD, "default") or ts.at(PUNCT, "}")):
                body.append(self._stmt())
            cases.append(self._node(ast.SwitchCase, case_start, label=label, body=body))
        ts.expect(PUNCT, "}")
        return self._node(ast.Switch, start, subject=subject, cases=cases)

    def _try_stmt(self) -> ast.Try:
        ts = self.ts
        start = ts.expect(KEYWORD, "try")
        body = self._block()
        catches: list[ast.CatchClause] = []
        while ts.at(KEYWORD, "catch"):
            cstart = ts.advance()
            ts.expect(PUNCT, "(")
            ctype = self._type()
            cname = ts.expect(IDENTIFIER, what="catch parameter").text
            ts.expect(PUNCT, ")")
            cbody = self._block()
            catches.append(self._node(ast.CatchClause, cstart, exc_type=ctype, name=cname, body=cbody))
        finally_block = None
        if ts.at(KEYWORD, "finally"):
            ts.advance()
            finally_block = self._block()
        if not catches and finally_block is None:
            nxt = ts.peek()
            raise ParseError(
                nxt.span if nxt else ts._eof_span(),
                "'catch' or 'finally'",
                repr(nxt.text) if nxt else "end of file",
            )
        return self._node(ast.Try, start, body=body, catches=catches, finally_block=finally_block)

    # -- expressions -------------------------------------------------------

    def _expr_or_incr(self) -> ast.Expr:
        """Expression, allowing trailing ++/-- sugar in statement position."""
        start = self.ts.peek()
        expr = self._expr()
        if self.ts.at(OPERATOR, "++") or self.ts.at(OPERATOR, "--"):
            op_tok = self.ts.advance()
            if not isinstance(expr, (ast.Name, ast.Index, ast.FieldAccess)):
                raise ParseError(op_tok.span, "assignable expression before '++'/'--'", repr(op_tok.text))
            one = self._node(ast.Literal, op_tok, value=1, kind="int")
            arith = self._node(
                ast.Binary,
                start,
                op="+" if op_tok.text == "++" else "-",
                left=self._clone_expr(expr),
                right=one,
            )
            return self._node(ast.Binary, start, op="=", left=expr, right=arith)
        return expr

    def _clone_expr(self, expr: ast.Expr) -> ast.Expr:
        """Deep-copy an lvalue expression with fresh uids (for ++/-- sugar)."""
        if isinstance(expr, ast.Name):
            return ast.Name(identifier=expr.identifier, span=expr.span, uid=self._fresh())
        if isinstance(expr, ast.Index):
            return ast.Index(
                array=self._clone_expr(expr.array),
                index=self._clone_expr(expr.index),
                span=expr.span,
                uid=self._fresh(),
            )
        if isinstance(expr, ast.FieldAccess):
            return ast.FieldAccess(
                receiver=self._clone_expr(expr.receiver),
                name=expr.name,
                span=expr.span,
                uid=self._fresh(),
            )
        if isinstance(expr, ast.Literal):
            return ast.Literal(value=expr.value, kind=expr.kind, span=expr.span, uid=self._fresh())
        raise ParseError(expr.span, "assignable expression", type(expr).__name__)

    def _expr(self) -> ast.Expr:
        return self._assignment()

    def _assignment(self) -> ast.Expr:
        start = self.ts.peek()
        left = self._logic_or()
        if self.ts.at(OPERATOR, "="):
            eq = self.ts.advance()
            if not isinstance(left, (ast.Name, ast.Index, ast.FieldAccess)):
                raise ParseError(eq.span, "assignable expression on left of '='", repr(eq.text))
            right = self._assignment()
            return self._node(ast.Binary, start, op="=", left=left, right=right)
        return left

    def _binary_chain(self, sub, ops: tuple[str, ...]) -> ast.Expr:
        start = self.ts.peek()
        left = sub()
        while any(self.ts.at(OPERATOR, op) for op in ops):
            op_tok = self.ts.advance()
            right = sub()
            left = self._node(ast.Binary, start, op=op_tok.text, left=left, right=right)
        return left

    def _logic_or(self) -> ast.Expr:
        return self._binary_chain(self._logic_and, ("||",))

    def _logic_and(self) -> ast.Expr:
        return self._binary_chain(self._equality, ("&&",))

    def _equality(self) -> ast.Expr:
        return self._binary_chain(self._relational, ("==", "!="))

    def _relational(self) -> ast.Expr:
        return self._binary_chain(self._additive, ("<", "<=", ">", ">="))

    def _additive(self) -> ast.Expr:
        return self._binary_chain(self._multiplicative, ("+", "-"))

    def _multiplicative(self) -> ast.Expr:
        return self._binary_chain(self._unary, ("*", "/", "%"))

    def _unary(self) -> ast.Expr:
        ts = self.ts
        if ts.at(OPERATOR, "!") or ts.at(OPERATOR, "-"):
            tok = ts.advance()
            operand = self._unary()
            return self._node(ast.Unary, tok, op=tok.text, operand=operand)
        return self._postfix()

    def _postfix(self) -> ast.Expr:
        ts = self.ts
        start = ts.peek()
        expr = self._primary()
        while True:
            if ts.at(PUNCT, "."):
                ts.advance()
                name = ts.expect(IDENTIFIER, what="member name").text
                if ts.at(PUNCT, "("):
                    args = self._args()
                    expr = self._node(ast.Call, start, name=name, args=args, receiver=expr)
                else:
                    expr = self._node(ast.FieldAccess, start, receiver=expr, name=name)
            elif ts.at(PUNCT, "["):
                ts.advance()
                index = self._expr()
                ts.expect(PUNCT, "]")
                expr = self._node(ast.Index, start, array=expr, index=index)
            else:
                return expr

    def _args(self) -> list[ast.Expr]:
        ts = self.ts
        ts.expect(PUNCT, "(")
        args: list[ast.Expr] = []
        if not ts.at(PUNCT, ")"):
            while True:
                args.append(self._expr())
                if ts.at(PUNCT, ","):
                    ts.advance()
                    continue
                break
        ts.expect(PUNCT, ")")
        return args

    def _primary(self) -> ast.Expr:
        ts = self.ts
        tok = ts.peek()
        if tok is None:
            raise ParseError(ts._eof_span(), "expression", "end of file")
        if tok.kind == INT_LITERAL:
            ts.advance()
            return self._node(ast.Literal, tok, value=int(tok.text), kind="int")
        if tok.kind == DOUBLE_LITERAL:
            ts.advance()
            return self._node(ast.Literal, tok, value=float(tok.text), kind="double")
        if tok.kind == STRING_LITERAL:
            ts.advance()
            return self._node(ast.Literal, tok, value=string_literal_value(tok.text), kind="string")
        if tok.kind == KEYWORD:
            if tok.text in ("true", "false"):
                ts.advance()
                return self._node(ast.Literal, tok, value=(tok.text == "true"), kind="boolean")
            if tok.text == "null":
                ts.advance()
                return self._node(ast.Null, tok)
            if tok.text == "this":
                ts.advance()
                return self._node(ast.Name, tok, identifier="this")
            if tok.text == "new":
                ts.advance()
                type_tok = ts.peek()
                if type_tok is None:
                    raise ParseError(ts._eof_span(), "type after 'new'", "end of file")
                if type_tok.kind == KEYWORD and type_tok.text in PRIMITIVE_TYPES:
                    ts.advance()
                    base = type_tok.text
                elif type_tok.kind == IDENTIFIER:
                    ts.advance()
                    base = type_tok.text
                else:
                    raise ParseError(type_tok.span, "type after 'new'", repr(type_tok.text))
                if ts.at(PUNCT, "["):
                    ts.advance()
                    size = self._expr()
                    ts.expect(PUNCT, "]")
                    return self._node(ast.NewArray, tok, elem_type=TypeRef(base), size_expr=size)
                args = self._args()
                return self._node(ast.New, tok, class_name=base, args=args)
        if tok.kind == IDENTIFIER:
            ts.advance()
            if ts.at(PUNCT, "("):
                args = self._args()
                return self._node(ast.Call, tok, name=tok.text, args=args)
            return self._node(ast.Name, tok, identifier=tok.text)
        if tok.kind == PUNCT and tok.text == "(":
            ts.advance()
            inner = self._expr()
            ts.expect(PUNCT, ")")
            return inner
        raise ParseError(tok.span, "expression", repr(tok.text))


def parse(tokens: list[Token], file: str = "<memory>", source: str = "") -> ast.CompilationUnit:
    """Build a CompilationUnit from a token sequence."""
    return Parser(tokens, file).parse_unit(source)


def parse_source(source: str, file: str = "<memory>") -> ast.CompilationUnit:
    """Tokenize and parse in one step."""
    return parse(tokenize(source, file), file, source)
