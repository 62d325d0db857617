from fractions import Fraction
from math import comb

import pytest

from ddesolver.hermite_pade import Bidegree, GuessProblem, guess_algebraic, prove_guess
from ddesolver.numeric import GF, QQ
from ddesolver.parser import parse_poly, shipped_example
from ddesolver.poly import MultiPoly
from ddesolver.series import UniSeries, check_annihilation, expand_specialized

TZ = ("t", "z0")


def catalan(n):
    return [comb(2 * k, k) // (k + 1) for k in range(n)]


def motzkin(n):
    m = [1, 1]
    for k in range(2, n):
        m.append(((2 * k + 1) * m[-1] + (3 * k - 3) * m[-2]) // (k + 2))
    return m[:n]


def test_bidegree_counts():
    b = Bidegree(3, 5)
    assert (b.unknowns, b.matching_order, b.threshold) == (24, 23, 31)
    with pytest.raises(ValueError):
        Bidegree(-1, 2)


@pytest.mark.parametrize(
    "coeffs, bounds, order, expected",
    [
        (catalan(40), Bidegree(1, 2), None, "t*z0^2 - z0 + 1"),
        (motzkin(40), Bidegree(2, 2), 20, "t^2*z0^2 + t*z0 - z0 + 1"),
        ([Fraction(1, 2) ** k for k in range(40)], Bidegree(1, 1), None, "t*z0 - 2*z0 + 2"),
    ],
)
def test_guess_known_algebraic_series(coeffs, bounds, order, expected):
    s = UniSeries(coeffs, QQ)
    prob = GuessProblem(s, bounds, matching_order=order)
    M = guess_algebraic(prob)
    assert M == parse_poly(expected, TZ).clear_denominators()
    ok, order = prove_guess(M, s, bounds.threshold)
    assert ok and order >= bounds.threshold
    # the linear model, recomputed independently by substitution
    assert check_annihilation(M, UniSeries(coeffs[: prob.matching_order], QQ)) == prob.matching_order


def test_minimal_matching_order_can_return_spurious_relation():
    # 9 unknowns, 8 conditions: a kernel vector always exists and here it
    # is not the true relation, which certification then rejects
    s = UniSeries(motzkin(40), QQ)
    b = Bidegree(2, 2)
    M = guess_algebraic(GuessProblem(s, b))
    assert M != parse_poly("t^2*z0^2 + t*z0 - z0 + 1", TZ)
    assert check_annihilation(M, UniSeries(s.coeffs[:8], QQ)) == 8
    assert not prove_guess(M, s, b.threshold)[0]


def test_guess_mod_p_is_image_of_rational_guess():
    K = GF(1000003)
    coeffs = motzkin(30)
    Mq = guess_algebraic(GuessProblem(UniSeries(coeffs, QQ), Bidegree(2, 2), matching_order=20))
    Mp = guess_algebraic(GuessProblem(UniSeries([K(c) for c in coeffs], K), Bidegree(2, 2), matching_order=20))
    lead = Mp.terms[max(Mp.terms, key=lambda m: (m[1], m[0]))]
    ref = Mq.terms[max(Mq.terms, key=lambda m: (m[1], m[0]))]
    scale = K.div(K(ref), lead)
    assert {m: K.mul(c, scale) for m, c in Mp.terms.items()} == {m: K(c) for m, c in Mq.terms.items()}


def test_no_relation_at_small_bounds():
    assert guess_algebraic(GuessProblem(UniSeries(catalan(10), QQ), Bidegree(0, 1), matching_order=10)) is None


def test_constellation_cubic():
    s = expand_specialized(shipped_example("3constellations.dde"), 40)
    b = Bidegree(3, 5)
    M = guess_algebraic(GuessProblem(s, b))
    cubic = parse_poly("81*t^2*z0^3-81*t^2*z0^2+27*t^2*z0+18*t*z0^2-3*t^2-66*t*z0+47*t+z0-1", TZ)
    assert M == cubic
    assert prove_guess(M, s, b.threshold) == (True, 31)


def test_prove_guess_rejects_wrong_relation_and_short_series():
    s = UniSeries(catalan(20), QQ)
    wrong = parse_poly("t*z0^2 - z0 + 1 + t^5", TZ)
    assert prove_guess(wrong, s, 9) == (False, 5)
    with pytest.raises(ValueError):
        prove_guess(wrong, s, 30)
    assert prove_guess(MultiPoly(TZ, {}, QQ), s, 9) == (False, 0)


def test_too_short_series_rejected():
    with pytest.raises(ValueError):
        GuessProblem(UniSeries(catalan(5), QQ), Bidegree(3, 3))
