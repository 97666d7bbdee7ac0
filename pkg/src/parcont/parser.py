"""The ``.fam`` family description language.

::

    # Example 2
    vars: x1, x2
    params: a
    let gamma = x1^2 + x2^2 - 1
    f1 = (x1 - a) * (x1 - 1) * gamma
    f2 = (x2 - 3) * (x2 - 4)^2 * gamma

Whitespace (newlines included) is insignificant and ``#`` starts a comment.
An expression may open with a sign so that printed polynomials such as
``-x1 + 3`` read back in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from parcont.ideals import FamilySpec
from parcont.poly import Polynomial, VariableContext

KEYWORDS = {"vars", "params", "let"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()=,:])
    """,
    re.VERBOSE,
)


class FamilySyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FamilySyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, context: VariableContext | None = None, bindings=None):
        self.toks = tokenize(text)
        self.i = 0
        self.ctx = context
        self.bindings: dict[str, Polynomial] = dict(bindings or {})

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        if tok.kind == "eof":
            msg = f"{msg} (unexpected end of input)"
        raise FamilySyntaxError(msg, tok.line, tok.col)

    def expect(self, kind, text=None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            self.error(f"expected {want}, found {tok.text!r}" if tok.kind != "eof" else f"expected {want}")
        self.i += 1
        return tok

    def at(self, kind, text=None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    # family := vars_line params_line binding* eq+
    def family(self) -> FamilySpec:
        self.expect("id", "vars")
        self.expect("op", ":")
        xs = self.idlist(required=True)
        self.expect("id", "params")
        self.expect("op", ":")
        ps = self.idlist(required=False)
        try:
            self.ctx = VariableContext(tuple(t.text for t in xs), tuple(t.text for t in ps))
        except ValueError as exc:
            self.error(str(exc), xs[0])
        while self.at("id", "let"):
            self.i += 1
            name = self.new_name()
            self.expect("op", "=")
            self.bindings[name.text] = self.expr()
        names, polys = [], []
        while not self.at("eof"):
            name = self.new_name()
            self.expect("op", "=")
            names.append(name.text)
            polys.append(self.expr())
        if not polys:
            self.error("expected at least one equation")
        if len(set(names)) != len(names):
            self.error("duplicate equation name", self.toks[-1])
        if len(polys) != len(self.ctx.x_vars):
            raise FamilySyntaxError(
                f"nonsquare system: {len(polys)} equations for {len(self.ctx.x_vars)} variables",
                self.tok.line,
                self.tok.col,
            )
        return FamilySpec(self.ctx, tuple(polys), tuple(names))

    def new_name(self) -> Token:
        tok = self.expect("id")
        if tok.text in KEYWORDS:
            self.error(f"{tok.text!r} is a keyword", tok)
        if tok.text in self.ctx.variables or tok.text in self.bindings:
            self.error(f"{tok.text!r} is already declared", tok)
        return tok

    def idlist(self, required: bool) -> list[Token]:
        # an identifier directly followed by '=' starts the next statement
        if not required and not (self.at("id") and not self.peek().text == "=" and self.tok.text not in KEYWORDS):
            return []
        out = [self.expect("id")]
        while self.at("op", ","):
            self.i += 1
            out.append(self.expect("id"))
        for t in out:
            if t.text in KEYWORDS:
                self.error(f"{t.text!r} is a keyword", t)
        return out

    def expr(self) -> Polynomial:
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.at("op", "+") or self.at("op", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.at("op", "*"):
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.at("op", "^"):
            self.i += 1
            tok = self.expect("num")
            if "/" in tok.text:
                self.error("exponent must be a natural number", tok)
            base = base ** int(tok.text)
        return base

    def base(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                self.error("division by zero", tok)
            return self.ctx.const(Fraction(int(num), int(den or 1)))
        if tok.kind == "id":
            self.i += 1
            if tok.text in self.bindings:
                return self.bindings[tok.text]
            if tok.text in self.ctx.variables:
                return self.ctx.var(tok.text)
            self.error(f"undeclared identifier {tok.text!r}", tok)
        if self.at("op", "("):
            self.i += 1
            inner = self.expr()
            self.expect("op", ")")
            return inner
        self.error(f"unexpected {tok.text!r}" if tok.kind != "eof" else "expected an operand")


def parse_family(text: str) -> FamilySpec:
    return _Parser(text).family()


def parse_polynomial(text: str, context: VariableContext, bindings=None) -> Polynomial:
    p = _Parser(text, context, bindings)
    out = p.expr()
    if not p.at("eof"):
        p.error(f"unexpected {p.tok.text!r}")
    return out


def format_family(F: FamilySpec) -> str:
    lines = [f"vars: {', '.join(F.x_vars)}", f"params: {', '.join(F.p_vars)}".rstrip()]
    for name, f in zip(F.names, F.polynomials):
        lines.append(f"{name} = {f}")
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> dict[str, Fraction]:
    """``a=1,b=-2/3`` -> parameter point."""
    from parcont.arith import parse_rational

    out = {}
    if not text.strip():
        return out
    for part in text.split(","):
        name, eq, value = part.partition("=")
        if not eq or not name.strip():
            raise ValueError(f"bad assignment {part!r}; expected name=value")
        out[name.strip()] = parse_rational(value)
    return out
