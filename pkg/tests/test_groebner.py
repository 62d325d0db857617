import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, random_poly, to_sympy
from ddesolver.groebner import (
    NotZeroDimensional,
    buchberger,
    change_order_to_lex,
    char_poly,
    eliminate,
    hilbert_function,
    hilbert_numerator,
    minimal_polynomial,
    multiplication_matrix,
    normal_form,
    quotient_basis,
)
from ddesolver import univariate as up
from ddesolver.numeric import GF
from ddesolver.poly import MonomialOrder, MultiPoly

V = ("x", "y", "z")


def sympy_gb(gens, order):
    G = sympy.groebner([to_sympy(g) for g in gens], *sympy.symbols(V), order=order)
    return sorted(str(from_sympy(g, V).monic(MonomialOrder.lex(3) if order == "lex" else MonomialOrder.grevlex(3))) for g in G.exprs)


@pytest.mark.parametrize("kind", ["lex", "grevlex"])
@given(seed=st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_reduced_basis_matches_sympy(kind, seed):
    rng = random.Random(seed)
    gens = [random_poly(rng, V, max_deg=2, nterms=3, coeff=5) for _ in range(3)]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    order = MonomialOrder.lex(3) if kind == "lex" else MonomialOrder.grevlex(3)
    G = buchberger(gens, order)
    assert sorted(str(g) for g in G) == sympy_gb(gens, kind)


@given(seed=st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_homogenized_route_matches_direct(seed):
    rng = random.Random(seed)
    K = GF(32003)
    gens = [random_poly(rng, V, max_deg=3, nterms=4, K=K) for _ in range(3)]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    order = MonomialOrder.block([[0], [1, 2]])
    a = buchberger(gens, order, method="homogenize")
    b = buchberger(gens, order, method="direct")
    assert [str(g) for g in a] == [str(g) for g in b]


def test_hilbert_function_counts_standard_monomials():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(0, 6))]
        gens = [g for g in gens if sum(g)]
        num = hilbert_numerator(gens, n)
        for d in range(7):
            count = sum(
                1
                for m in itertools.product(range(d + 1), repeat=n)
                if sum(m) == d and not any(all(a <= b for a, b in zip(g, m)) for g in gens)
            )
            assert hilbert_function(num, n, d) == count


def test_elimination_of_twisted_cubic():
    t, x, y, z = MultiPoly.gens(("t", "x", "y", "z"))
    G = buchberger([x - t, y - t**2, z - t**3], MonomialOrder.block([[0], [1, 2, 3]]))
    E = eliminate(G, ["t"])
    # the curve is cut out by the 2x2 minors of [[x, y], [y, z]] ... in x, y, z
    for f in (y - x**2, z - x * y, x * z - y**2):
        assert normal_form(f, G).is_zero()
    assert all(e.free_of(["t"]) for e in E) and E


def test_unit_ideal():
    x, y = MultiPoly.gens(("x", "y"))
    G = buchberger([x * y - 1, x], MonomialOrder.grevlex(2))
    assert G.is_one()


def planted_system(rng, K, npts, nvars):
    """Random generators of the vanishing ideal of random F_p points, and the points."""
    vars = tuple(f"x{i}" for i in range(nvars))
    xs = rng.sample(range(K.p), npts)
    pts = [(a,) + tuple(rng.randrange(K.p) for _ in range(nvars - 1)) for a in xs]
    X = MultiPoly.gens(vars, K)
    gens = [MultiPoly(vars, {(i,) + (0,) * (nvars - 1): c for i, c in enumerate(up.from_roots(K, xs)) if c}, K)]
    for j in range(1, nvars):
        h = up.interpolate(K, xs, [p[j] for p in pts])
        gens.append(X[j] - MultiPoly(vars, {(i,) + (0,) * (nvars - 1): c for i, c in enumerate(h) if c}, K))
    # hide the shape basis behind a unimodular recombination
    mixed = []
    for i, b in enumerate(gens):
        g = b
        for c in gens[i + 1:]:
            g = g + c * random_poly(rng, vars, max_deg=1, nterms=2, K=K)
        mixed.append(g)
    return mixed, pts, vars


def test_stickelberger_characteristic_polynomials():
    """chi of multiplication by each variable is prod (T - coordinate) over
    the variety, which is found by exhaustive enumeration."""
    rng = random.Random(11)
    K = GF(13)
    checked = 0
    while checked < 50:
        nvars = rng.choice([2, 3])
        gens, pts, vars = planted_system(rng, K, rng.randint(1, 5), nvars)
        G = buchberger(gens, MonomialOrder.grevlex(nvars))
        variety = [e for e in itertools.product(range(K.p), repeat=nvars) if all(g.evaluate(dict(zip(vars, e))) == 0 for g in gens)]
        assert sorted(variety) == sorted(set(pts))
        B = quotient_basis(G)
        assert B.dimension == len(variety)
        for i, v in enumerate(vars):
            chi = char_poly(multiplication_matrix(v, G))
            assert chi == up.from_roots(K, [e[i] for e in variety])
        checked += 1


def test_minimal_polynomial_and_fglm():
    rng = random.Random(2)
    K = GF(101)
    gens, pts, vars = planted_system(rng, K, 4, 3)
    G = buchberger(gens, MonomialOrder.grevlex(3))
    for i, v in enumerate(vars):
        assert minimal_polynomial(G, v) == up.squarefree_part(K, up.from_roots(K, [p[i] for p in pts]))
    L = change_order_to_lex(G)
    assert [str(g) for g in L] == [str(g) for g in buchberger(gens, MonomialOrder.lex(3))]


def test_positive_dimensional_rejected():
    x, y = MultiPoly.gens(("x", "y"))
    G = buchberger([x * y], MonomialOrder.grevlex(2))
    with pytest.raises(NotZeroDimensional):
        quotient_basis(G)
