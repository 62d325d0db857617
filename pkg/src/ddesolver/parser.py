"""Polynomial expressions and DDE description files.

Expression grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

A DDE file is line oriented ``key = value`` with ``#`` comments; keys are
``k``, ``a``, ``vars``, ``rhs`` and ``P`` (see README).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numeric import QQ, Field
from .poly import MultiPoly, format_poly


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
            if text:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


# -- expressions -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

# AST nodes: ("num", Fraction), ("var", name), ("add", a, b), ("sub", a, b),
# ("mul", a, b), ("neg", a), ("pow", a, int)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, op: str):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            e = ("add" if op == "+" else "sub", e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            e = ("mul", e, self.factor())
        return e

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            f = self.factor()
            return ("neg", f) if t[1] == "-" else f
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] == "op" and e[1] == "-":
                self.error("negative exponent", e)
            if e[0] == "op" and e[1] == "(":
                # allow ^(3) but only with a literal inside
                e2 = self.take()
                if e2[0] != "int":
                    self.error("exponent must be a non-negative integer literal", e2)
                self.expect(")")
                e = e2
            if e[0] != "int":
                self.error("exponent must be a non-negative integer literal", e)
            return ("pow", base, e[1])
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            nxt = self.peek()
            # num/den literal binds tighter than anything else
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    self.error("denominator must be an integer literal", d)
                if d[1] == 0:
                    self.error("zero denominator", d)
                return ("num", Fraction(t[1], d[1]))
            return ("num", Fraction(t[1]))
        if t[0] == "name":
            return ("var", t[1], t[2])
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected token {t[1]!r}", t)


def parse_expr(text: str):
    """Parse to an AST of nested tuples."""
    return _Parser(text).parse()


def eval_ast(ast, universe: Sequence[str], K: Field = QQ, text: str = "") -> MultiPoly:
    universe = tuple(universe)
    kind = ast[0]
    if kind == "num":
        return MultiPoly.const(universe, ast[1], K)
    if kind == "var":
        if ast[1] not in universe:
            raise ParseError(f"unknown identifier {ast[1]!r}", text, ast[2])
        return MultiPoly.var(universe, ast[1], K)
    if kind == "neg":
        return -eval_ast(ast[1], universe, K, text)
    if kind == "pow":
        return eval_ast(ast[1], universe, K, text) ** ast[2]
    a = eval_ast(ast[1], universe, K, text)
    b = eval_ast(ast[2], universe, K, text)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def parse_poly(text: str, universe: Sequence[str], K: Field = QQ) -> MultiPoly:
    """Parse an expression into an expanded polynomial over `universe`."""
    return eval_ast(parse_expr(text), universe, K, text)


def print_poly(p: MultiPoly, order=None) -> str:
    return format_poly(p, order)


# -- DDE files ----------------------------------------------------------------------


@dataclass
class DdeSpec:
    """F(t,u) = rhs, with rhs in x (= F), D1..Dk (iterated divided
    differences at u = a), t and u; P is the cleared polynomial equation in
    ``vars`` = [x, z0, ..., z_{k-1}, t, u]."""

    k: int
    a: Fraction
    vars: tuple[str, ...]
    rhs: MultiPoly | None = None
    P: MultiPoly | None = None
    name: str = ""

    @property
    def x(self) -> str:
        return self.vars[0]

    @property
    def t(self) -> str:
        return self.vars[-2]

    @property
    def u(self) -> str:
        return self.vars[-1]

    @property
    def zvars(self) -> tuple[str, ...]:
        return self.vars[1:-2]

    @property
    def rhs_vars(self) -> tuple[str, ...]:
        return rhs_universe(self.vars, self.k)


def rhs_universe(vars: Sequence[str], k: int) -> tuple[str, ...]:
    return (vars[0],) + tuple(f"D{i}" for i in range(1, k + 1)) + (vars[-2], vars[-1])


def _strip_comment(line: str) -> str:
    out = []
    quote = None
    for ch in line:
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out).strip()


def _unquote(v: str, key: str, lineno: int) -> str:
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "\"'":
        return v[1:-1]
    raise ParseError(f"line {lineno}: value of {key!r} must be quoted")


def parse_dde(contents: str, name: str = "") -> DdeSpec:
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(contents.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ("k", "a", "vars", "rhs", "P"):
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = (value, lineno)

    for key in ("k", "vars"):
        if key not in fields:
            raise ParseError(f"missing key {key!r}")
    if "rhs" not in fields and "P" not in fields:
        raise ParseError("at least one of 'rhs' and 'P' is required")

    value, lineno = fields["k"]
    try:
        k = int(value)
    except ValueError:
        raise ParseError(f"line {lineno}: k must be an integer") from None
    if k < 1:
        raise ParseError(f"line {lineno}: k must be positive")

    a = Fraction(0)
    if "a" in fields:
        value, lineno = fields["a"]
        try:
            a = Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: a must be a rational number") from None
    elif "rhs" in fields or "P" in fields:
        raise ParseError("missing key 'a'")

    value, lineno = fields["vars"]
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError(f"line {lineno}: vars must be a bracketed list")
    names = tuple(s.strip() for s in value[1:-1].split(",") if s.strip())
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
            raise ParseError(f"line {lineno}: bad variable name {v!r}")
    if len(set(names)) != len(names):
        raise ParseError(f"line {lineno}: repeated variable name")
    if len(names) != k + 3:
        raise ParseError(f"line {lineno}: vars must list x, {k} z-variables, t and u (got {len(names)} names for k={k})")

    spec = DdeSpec(k=k, a=a, vars=names, name=name)
    if "rhs" in fields:
        value, lineno = fields["rhs"]
        text = _unquote(value, "rhs", lineno)
        spec.rhs = parse_poly(text, spec.rhs_vars)
    if "P" in fields:
        value, lineno = fields["P"]
        text = _unquote(value, "P", lineno)
        spec.P = parse_poly(text, names)
        if spec.P.is_zero():
            raise ParseError(f"line {lineno}: P is zero")

    if spec.rhs is not None:
        from .systems import clear_denominators

        derived = clear_denominators(spec)
        if spec.P is not None:
            if derived.clear_denominators() != spec.P.clear_denominators():
                raise ParseError("P is inconsistent with rhs")
        else:
            spec.P = derived
    return spec


def load_dde(path: str) -> DdeSpec:
    with open(path) as fh:
        return parse_dde(fh.read(), name=path)


def shipped_example(name: str) -> DdeSpec:
    """Load one of the DDE files bundled with the package."""
    from importlib import resources

    text = resources.files("ddesolver").joinpath("data").joinpath(name).read_text()
    return parse_dde(text, name=name)
