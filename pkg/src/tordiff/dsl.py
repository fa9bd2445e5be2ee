"""Lexer, parser and printer for the ring/map/check input language.

    file    := stmt*
    stmt    := ring | map | check | diagram
    ring    := "ring" IDENT "=" field "[" IDENT ("," IDENT)* "]"
               ("/" "(" poly ("," poly)* ")")? ("domain" STRING)?
    field   := "Q" | "F" INT                      (written e.g. F2, F3)
    map     := "map" IDENT ":" IDENT "->" IDENT "{" IDENT "->" poly ("," IDENT "->" poly)* "}"
    check   := "check" IDENT "(" (poly ("," poly)*)? ")"
    diagram := "diagram" IDENT "over" IDENT "{" "pieces" ":" IDENT ("," IDENT)* ";"
               ("product" "(" INT "," INT ")" ":" IDENT "," IDENT ";")* "}"
    poly    := sum with + - * ^, integer literals, unary minus; ^ binds tightest;
               "/" INT divides by an integer literal (for rational coefficients)

Errors never abort the whole file: the parser reports a diagnostic and resumes
at the next statement keyword.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

KEYWORDS = {"ring", "map", "check", "diagram"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[=\[\],/(){}:;+\-*^])
    """,
    re.VERBOSE,
)

_CLOSERS = {"[": "]", "(": ")", "{": "}"}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    col: int
    message: str
    suggestion: str = ""

    def __str__(self):
        s = f"{self.severity}: {self.line}:{self.col}: {self.message}"
        if self.suggestion:
            s += f" (hint: {self.suggestion})"
        return s


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


# -- expression AST; spans are excluded from equality ---------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Var, BinOp, Neg, Pow]


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str
    variables: tuple
    relations: tuple = ()
    domain: str | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: str
    target: str
    images: tuple  # ((var, Expr), ...)
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CheckStmt:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DiagramDecl:
    name: str
    base: str
    pieces: tuple
    products: tuple  # ((i, j, rho1, rho2), ...)
    line: int = field(default=0, compare=False)


@dataclass
class SourceFile:
    text: str
    statements: list
    diagnostics: list

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    def find(self, name: str):
        for s in self.statements:
            if getattr(s, "name", None) == name and not isinstance(s, CheckStmt):
                return s
        return None


class ParseError(Exception):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


# -- lexer ----------------------------------------------------------------


def tokenize(text: str):
    tokens = []
    diags = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            ch = text[pos]
            diags.append(Diagnostic("error", line, col, f"unexpected character {ch!r}", "remove it"))
            pos += 1
            continue
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "string":
            tokens.append(Token("string", tok, line, col))
        elif kind in ("ident", "int", "arrow", "punct"):
            if kind == "ident" and tok in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind if kind != "punct" else tok, tok, line, col))
        pos = m.end()
    return tokens, diags


def _last_char_pos(text: str):
    """1-based position of the last non-whitespace character (or 1:1)."""
    stripped = text.rstrip()
    if not stripped:
        return 1, 1
    idx = len(stripped) - 1
    line = stripped.count("\n", 0, idx) + 1
    col = idx - (stripped.rfind("\n", 0, idx) + 1) + 1
    return line, col


# -- parser ---------------------------------------------------------------


class _Stop(Exception):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens, self.diags = tokenize(text)
        self.i = 0

    # helpers
    def peek(self, k=0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def advance(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, message, tok=None, suggestion=""):
        if tok is None:
            line, col = _last_char_pos(self.text)
        else:
            line, col = tok.line, tok.col
        self.diags.append(Diagnostic("error", line, col, message, suggestion))
        raise _Stop

    def expect(self, kind, what=None, opener=None):
        t = self.peek()
        if t is not None and t.kind == kind:
            return self.advance()
        what = what or repr(kind)
        if opener is not None:
            if t is None:
                self.error(f"unclosed bracket {opener.text!r} opened at {opener.line}:{opener.col}",
                           None, f"add {_CLOSERS[opener.text]!r}")
            self.error(f"expected {what} to close {opener.text!r} opened at {opener.line}:{opener.col}, "
                       f"found {t.text!r}", t, f"add {_CLOSERS[opener.text]!r}")
        if t is None:
            self.error(f"unexpected end of input, expected {what}")
        self.error(f"expected {what}, found {t.text!r}", t)

    def at(self, kind, text=None):
        t = self.peek()
        return t is not None and t.kind == kind and (text is None or t.text == text)

    # statements
    def parse_file(self):
        stmts = []
        while self.peek() is not None:
            t = self.peek()
            start = self.i
            try:
                if t.kind != "kw":
                    self.error(f"expected a statement ('ring', 'map', 'check', 'diagram'), found {t.text!r}", t)
                stmts.append(getattr(self, "stmt_" + t.text)())
            except _Stop:
                self.i = max(self.i, start + 1)
                while self.peek() is not None and self.peek().kind != "kw":
                    self.i += 1
        return stmts

    def stmt_ring(self):
        kw = self.advance()
        name = self.expect("ident", "ring name").text
        self.expect("=", "'='")
        ftok = self.expect("ident", "field (Q or F<p>)")
        fname = ftok.text
        if fname != "Q" and not re.fullmatch(r"F[1-9]\d*", fname):
            self.error(f"unknown field {fname!r}", ftok, "use Q or F<p>, e.g. F2")
        opener = self.expect("[", "'['")
        variables = [self.expect("ident", "variable name").text]
        while self.at(","):
            self.advance()
            variables.append(self.expect("ident", "variable name").text)
        self.expect("]", "']'", opener)
        relations = []
        if self.at("/"):
            self.advance()
            po = self.expect("(", "'('")
            relations.append(self.expr())
            while self.at(","):
                self.advance()
                relations.append(self.expr())
            self.expect(")", "')'", po)
        domain = None
        if self.at("ident", "domain"):
            self.advance()
            domain = _unquote(self.expect("string", "quoted provenance note").text)
        return RingDecl(name, fname, tuple(variables), tuple(relations), domain, kw.line)

    def stmt_map(self):
        kw = self.advance()
        name = self.expect("ident", "map name").text
        self.expect(":", "':'")
        src = self.expect("ident", "source ring").text
        self.expect("arrow", "'->'")
        tgt = self.expect("ident", "target ring").text
        opener = self.expect("{", "'{'")
        images = []
        while True:
            var = self.expect("ident", "variable name").text
            self.expect("arrow", "'->'")
            images.append((var, self.expr()))
            if self.at(","):
                self.advance()
                continue
            break
        self.expect("}", "'}'", opener)
        return MapDecl(name, src, tgt, tuple(images), kw.line)

    def stmt_check(self):
        kw = self.advance()
        name = self.expect("ident", "check name").text
        opener = self.expect("(", "'('")
        args = []
        if not self.at(")"):
            args.append(self.expr())
            while self.at(","):
                self.advance()
                args.append(self.expr())
        self.expect(")", "')'", opener)
        return CheckStmt(name, tuple(args), kw.line)

    def stmt_diagram(self):
        kw = self.advance()
        name = self.expect("ident", "diagram name").text
        t = self.expect("ident", "'over'")
        if t.text != "over":
            self.error(f"expected 'over', found {t.text!r}", t)
        base = self.expect("ident", "base ring").text
        opener = self.expect("{", "'{'")
        t = self.expect("ident", "'pieces'")
        if t.text != "pieces":
            self.error(f"expected 'pieces', found {t.text!r}", t)
        self.expect(":", "':'")
        pieces = [self.expect("ident", "map name").text]
        while self.at(","):
            self.advance()
            pieces.append(self.expect("ident", "map name").text)
        self.expect(";", "';'")
        products = []
        while self.at("ident", "product"):
            self.advance()
            po = self.expect("(", "'('")
            i = int(self.expect("int", "piece index").text)
            self.expect(",", "','")
            j = int(self.expect("int", "piece index").text)
            self.expect(")", "')'", po)
            self.expect(":", "':'")
            r1 = self.expect("ident", "map name").text
            self.expect(",", "','")
            r2 = self.expect("ident", "map name").text
            self.expect(";", "';'")
            products.append((i, j, r1, r2))
        self.expect("}", "'}'", opener)
        return DiagramDecl(name, base, tuple(pieces), tuple(products), kw.line)

    # expressions
    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            if self.advance().text == "*":
                left = BinOp("*", left, self.unary())
            else:
                # only integer denominators, so rational coefficients print and parse back
                t = self.expect("int", "integer denominator")
                left = BinOp("/", left, Num(int(t.text)))
        return left

    def unary(self):
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            t = self.expect("int", "integer exponent")
            return Pow(base, int(t.text))
        return base

    def atom(self):
        t = self.peek()
        if t is None:
            self.error("unexpected end of input, expected an expression")
        if t.kind == "int":
            self.advance()
            return Num(int(t.text))
        if t.kind == "ident":
            self.advance()
            return Var(t.text, t.line, t.col)
        if t.kind == "(":
            opener = self.advance()
            e = self.expr()
            self.expect(")", "')'", opener)
            return e
        self.error(f"expected an expression, found {t.text!r}", t)


def _unquote(s: str) -> str:
    body = s[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def parse_source(text: str) -> SourceFile:
    p = _Parser(text)
    stmts = p.parse_file()
    return SourceFile(text, stmts, p.diags)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    if p.diags:
        raise ParseError(p.diags)
    try:
        e = p.expr()
        if p.peek() is not None:
            p.error(f"unexpected {p.peek().text!r} after expression", p.peek())
    except _Stop:
        raise ParseError(p.diags) from None
    return e


def eval_expr(e: Expr, ring):
    """Evaluate an expression AST into a polynomial of ``ring``."""
    if isinstance(e, Num):
        return ring.const(e.value)
    if isinstance(e, Var):
        if e.name not in ring.names:
            raise KeyError(f"unknown variable {e.name!r} in {ring}")
        return ring.var(e.name)
    if isinstance(e, Neg):
        return -eval_expr(e.operand, ring)
    if isinstance(e, Pow):
        return eval_expr(e.base, ring) ** e.exp
    a = eval_expr(e.left, ring)
    if e.op == "/":
        k = ring.field(e.right.value)
        if k == 0:
            raise ValueError(f"division by {e.right.value} in {ring.field}")
        return a.scale(ring.field.inv(k))
    b = eval_expr(e.right, ring)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    return a * b


# -- printer --------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        b = format_expr(e.base)
        if not isinstance(e.base, (Num, Var)):
            b = f"({b})"
        return f"{b}^{e.exp}"
    if isinstance(e, Neg):
        inner = format_expr(e.operand)
        if isinstance(e.operand, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    prec = _PREC[e.op]
    left = format_expr(e.left)
    if isinstance(e.left, BinOp) and _PREC[e.left.op] < prec:
        left = f"({left})"
    right = format_expr(e.right)
    if isinstance(e.right, BinOp) and _PREC[e.right.op] <= prec:
        right = f"({right})"
    elif isinstance(e.right, Neg) and prec == 2:
        right = f"({right})"
    sep = e.op if e.op in "*/" else f" {e.op} "
    return f"{left}{sep}{right}"


def format_statement(s) -> str:
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = {s.field}[{', '.join(s.variables)}]"
        if s.relations:
            out += " / (" + ", ".join(format_expr(r) for r in s.relations) + ")"
        if s.domain is not None:
            out += f" domain {_quote(s.domain)}"
        return out
    if isinstance(s, MapDecl):
        body = ", ".join(f"{v} -> {format_expr(e)}" for v, e in s.images)
        return f"map {s.name} : {s.source} -> {s.target} {{ {body} }}"
    if isinstance(s, CheckStmt):
        return f"check {s.name}(" + ", ".join(format_expr(a) for a in s.args) + ")"
    if isinstance(s, DiagramDecl):
        lines = [f"diagram {s.name} over {s.base} {{", f"  pieces: {', '.join(s.pieces)};"]
        for i, j, r1, r2 in s.products:
            lines.append(f"  product({i}, {j}): {r1}, {r2};")
        lines.append("}")
        return "\n".join(lines)
    raise TypeError(f"not a statement: {s!r}")


def format_source(sf: SourceFile) -> str:
    return "\n".join(format_statement(s) for s in sf.statements) + "\n"
