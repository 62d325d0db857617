from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_poly
from ddesolver.parser import ParseError, parse_dde, parse_expr, parse_poly, print_poly, shipped_example
from ddesolver.poly import MultiPoly

V = ("x", "y", "t")


def test_precedence_and_rationals():
    x, y, t = MultiPoly.gens(V)
    assert parse_poly("1 + 2*x^2*y - 3/4*t", V) == 1 + 2 * x**2 * y - Fraction(3, 4) * t
    assert parse_poly("-x^2", V) == -(x**2)
    assert parse_poly("(x+y)**2", V) == (x + y) ** 2
    assert parse_poly("2*(x - -y)", V) == 2 * x + 2 * y


@pytest.mark.parametrize(
    "text",
    ["", "x +", "x^-1", "x^y", "x / y", "1/0", "(x", "x y", "x $ 1", "q + 1"],
)
def test_malformed_expressions(text):
    with pytest.raises(ParseError):
        parse_poly(text, V)


def test_error_reports_position():
    with pytest.raises(ParseError) as e:
        parse_poly("x + q", V)
    assert e.value.pos == 4


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_print_parse_round_trip(seed):
    import random

    p = random_poly(random.Random(seed), V, max_deg=4)
    p = p * Fraction(seed % 7 + 1, 3)
    assert parse_poly(print_poly(p), V) == p


def test_parse_expr_ast():
    assert parse_expr("2^3") == ("pow", ("num", Fraction(2)), 3)


def test_shipped_examples_load():
    c = shipped_example("3constellations.dde")
    assert c.k == 2 and c.a == 1
    assert c.zvars == ("z0", "z1") and c.t == "t" and c.u == "u"
    assert c.rhs is not None and c.P is not None
    tam = shipped_example("3tamari.dde")
    assert tam.k == 3 and tam.zvars == ("z0", "z1", "z2")


def test_p_only_file():
    text = 'k = 1\na = 0\nvars = [x, z0, t, u]\nP = "u*x - u - t*x^2*u + t*(x - z0)"\n'
    spec = parse_dde(text)
    assert spec.rhs is None and spec.P.degree("x") == 2


@pytest.mark.parametrize(
    "text",
    [
        "k = 1\nvars = [x, z0, t, u]\n",  # no equation
        'k = 0\na = 0\nvars = [x, t, u]\nP = "x"\n',
        'k = 1\na = 0\nvars = [x, z0, t]\nP = "x"\n',
        'k = 1\na = 0\nvars = [x, x, t, u]\nP = "x"\n',
        'k = 1\na = 0\nvars = [x, z0, t, u]\nP = x\n',
        'k = 1\na = 0\nvars = [x, z0, t, u]\nP = "0"\n',
        'k = 1\na = 0\nvars = [x, z0, t, u]\nP = "w"\n',
        'k = 1\na = 1/0\nvars = [x, z0, t, u]\nP = "x"\n',
        'k = 1\na = 0\nvars = [x, z0, t, u]\nfoo = "x"\n',
        'k = 1\nk = 1\na = 0\nvars = [x, z0, t, u]\nP = "x"\n',
        'k = 1\na = 0\nvars = [x, z0, t, u]\nrhs = "1 + t*x*D1"\nP = "x"\n',
    ],
)
def test_malformed_dde_files(text):
    with pytest.raises(ParseError):
        parse_dde(text)


def test_comments_inside_quotes_survive():
    text = 'k = 1\na = 0\nvars = [x, z0, t, u]  # comment\nrhs = "1 + t*u*x*D1"  # trailing\n'
    spec = parse_dde(text)
    assert spec.rhs.degree("D1") == 1
