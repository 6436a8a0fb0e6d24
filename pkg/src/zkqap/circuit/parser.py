"""Recursive-descent parser for ``.zkc`` sources.

::

    def calc(pub w, a, b) -> v {
        m = a * b;
        v = w * (m - a - b) + a + b;
        assert_bool(w);
    }

Parameters are private unless marked ``pub``; outputs are always public.
``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import re

from ..errors import DuplicateAssignment, ParseError, UndefinedVariable
from .syntax import AssertBool, AssertRange, Assign, BinOp, Neg, Num, Param, Program, Var

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<sym>[-+*/(){},;=])"
)
KEYWORDS = {"def", "pub", "assert_bool", "assert_range"}


def tokenize(source: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = match.lastgroup
        text = match.group()
        if kind == "nl":
            line += 1
            line_start = match.end()
        elif kind == "ident" and text in KEYWORDS:
            tokens.append((text, text, line, col))
        elif kind in ("int", "ident"):
            tokens.append((kind, text, line, col))
        elif kind in ("arrow", "sym"):
            tokens.append((text, text, line, col))
        pos = match.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok[2], tok[3])

    def expect(self, kind: str):
        tok = self.tok
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise self.error(f"expected {kind!r}, found {found}")
        self.i += 1
        return tok

    def accept(self, kind: str):
        if self.tok[0] == kind:
            self.i += 1
            return True
        return False

    def program(self) -> Program:
        self.expect("def")
        name = self.expect("ident")[1]
        self.expect("(")
        params = []
        if self.tok[0] != ")":
            params.append(self.param())
            while self.accept(","):
                params.append(self.param())
        self.expect(")")
        self.expect("->")
        outputs = []
        if self.accept("("):
            outputs.append(self.expect("ident"))
            while self.accept(","):
                outputs.append(self.expect("ident"))
            self.expect(")")
        else:
            outputs.append(self.expect("ident"))
        self.expect("{")
        statements = []
        while self.tok[0] != "}":
            statements.append(self.statement())
        self.expect("}")
        self.expect("eof")
        return _check(name, params, outputs, statements)

    def param(self):
        public = self.accept("pub")
        tok = self.expect("ident")
        return Param(tok[1], public), tok

    def statement(self):
        tok = self.tok
        pos = (tok[2], tok[3])
        if self.accept("assert_bool"):
            self.expect("(")
            name = self.expect("ident")
            self.expect(")")
            self.expect(";")
            return AssertBool(name[1], (name[2], name[3]))
        if self.accept("assert_range"):
            self.expect("(")
            name = self.expect("ident")
            self.expect(",")
            bits_tok = self.expect("int")
            bits = int(bits_tok[1])
            if bits < 1:
                raise self.error("bit count must be positive", bits_tok)
            self.expect(")")
            self.expect(";")
            return AssertRange(name[1], bits, (name[2], name[3]))
        target = self.expect("ident")[1]
        self.expect("=")
        expr = self.expr()
        self.expect(";")
        return Assign(target, expr, pos)

    def expr(self):
        node = self.term()
        while self.tok[0] in ("+", "-"):
            op = self.expect(self.tok[0])
            node = BinOp(op[1], node, self.term(), (op[2], op[3]))
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] in ("*", "/"):
            op = self.expect(self.tok[0])
            node = BinOp(op[1], node, self.unary(), (op[2], op[3]))
        return node

    def unary(self):
        tok = self.tok
        if self.accept("-"):
            return Neg(self.unary(), (tok[2], tok[3]))
        return self.primary()

    def primary(self):
        tok = self.tok
        if self.accept("int"):
            return Num(int(tok[1]), (tok[2], tok[3]))
        if self.accept("ident"):
            return Var(tok[1], (tok[2], tok[3]))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise self.error(f"expected an expression, found {found}")


def _where(pos) -> str:
    return f"{pos[0]}:{pos[1]}"


def _uses(expr):
    if isinstance(expr, Var):
        yield expr
    elif isinstance(expr, Neg):
        yield from _uses(expr.operand)
    elif isinstance(expr, BinOp):
        yield from _uses(expr.left)
        yield from _uses(expr.right)


def _check(name, params, output_toks, statements) -> Program:
    """Enforce single assignment and definition before use."""
    defined = set()
    for param, tok in params:
        if param.name in defined:
            raise DuplicateAssignment(f"{tok[2]}:{tok[3]}: parameter {param.name!r} declared twice")
        defined.add(param.name)
    outputs = []
    for tok in output_toks:
        if tok[1] in defined or tok[1] in outputs:
            raise DuplicateAssignment(f"{tok[2]}:{tok[3]}: output {tok[1]!r} is already declared")
        outputs.append(tok[1])
    for stmt in statements:
        if isinstance(stmt, Assign):
            for use in _uses(stmt.expr):
                if use.name not in defined:
                    raise UndefinedVariable(f"{_where(use.pos)}: {use.name!r} used before assignment")
            if stmt.target in defined:
                raise DuplicateAssignment(f"{_where(stmt.pos)}: {stmt.target!r} is assigned more than once")
            defined.add(stmt.target)
        elif stmt.name not in defined:
            raise UndefinedVariable(f"{_where(stmt.pos)}: {stmt.name!r} used before assignment")
    for out, tok in zip(outputs, output_toks):
        if out not in defined:
            raise UndefinedVariable(f"{tok[2]}:{tok[3]}: output {out!r} is never assigned")
    return Program(name, tuple(p for p, _ in params), tuple(outputs), tuple(statements))


def parse(source: str) -> Program:
    return _Parser(source).program()
