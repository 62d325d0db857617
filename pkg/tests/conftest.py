import random
from fractions import Fraction

import sympy

from ddesolver.numeric import QQ
from ddesolver.poly import MultiPoly


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.vars)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) if not isinstance(c, int) else sympy.Integer(c)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, vars, K=QQ) -> MultiPoly:
    P = sympy.Poly(sympy.expand(expr), *sympy.symbols(vars))
    terms = {}
    for m, c in P.terms():
        q = Fraction(int(c.p), int(c.q))
        terms[m] = K(q) if K is not QQ else q
    return MultiPoly(tuple(vars), terms, K)


def random_poly(rng: random.Random, vars, max_deg=3, nterms=5, K=QQ, coeff=9):
    terms = {}
    for _ in range(nterms):
        m = [0] * len(vars)
        for _ in range(rng.randint(0, max_deg)):
            m[rng.randrange(len(vars))] += 1
        terms[tuple(m)] = K(rng.randint(-coeff, coeff))
    return MultiPoly(tuple(vars), {m: c for m, c in terms.items() if c}, K)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
