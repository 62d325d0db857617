from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ddesolver.numeric import (
    GF,
    QQ,
    ModularImage,
    crt_combine,
    crt_pair,
    is_prime,
    prime_stream,
    rational_reconstruct,
    reduce_rational,
)

def first_primes(bits, n, seed=0):
    out = []
    for p in prime_stream(bits, seed):
        out.append(p)
        if len(out) == n:
            return out


def test_is_prime_matches_sympy():
    for n in list(range(-3, 2000)) + [2**61 - 1, 2**31 - 1, 2**62 - 57, 561, 1105, 3215031751]:
        assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("bits", [16, 31, 62])
def test_prime_stream_bits_and_determinism(bits):
    a = first_primes(bits, 5)
    assert a == first_primes(bits, 5)
    assert len(set(a)) == 5
    for p in a:
        assert p.bit_length() == bits
        assert sympy.isprime(p)
    assert first_primes(bits, 5, seed=1) != a


def test_prime_stream_rejects_bad_size():
    with pytest.raises(ValueError):
        next(prime_stream(8))


ROUND_TRIP_PRIMES = first_primes(31, 3)


@given(st.fractions(max_denominator=10**9).filter(lambda q: abs(q.numerator) < 10**9))
@settings(max_examples=1000, deadline=None)
def test_crt_then_rational_reconstruction_round_trip(q):
    ps = ROUND_TRIP_PRIMES
    ims = [ModularImage(reduce_rational(q, p), p) for p in ps]
    im = crt_combine(ims)
    assert im.modulus == ps[0] * ps[1] * ps[2]
    assert rational_reconstruct(im) == q


def test_rational_reconstruction_fails_beyond_bound():
    p = 10007
    # 5000/7 needs numerator and denominator below sqrt(p/2) ~ 70
    assert rational_reconstruct(ModularImage(reduce_rational(Fraction(5000, 7), p), p)) != Fraction(5000, 7)


def test_crt_pair_agrees_with_combine():
    r, m = crt_pair(3, 7, 5, 11)
    im = crt_combine([ModularImage(3, 7), ModularImage(5, 11)])
    assert (r, m) == (im.residue, im.modulus) == (38, 77)


def test_crt_rejects_non_coprime():
    with pytest.raises(ValueError):
        crt_combine([ModularImage(1, 6), ModularImage(1, 4)])


def test_prime_field_arithmetic():
    K = GF(101)
    assert K.mul(K.inv(7), 7) == 1
    assert K(Fraction(1, 2)) == 51
    assert K.symmetric(100) == -1
    with pytest.raises(ZeroDivisionError):
        K.inv(0)
    with pytest.raises(ZeroDivisionError):
        K(Fraction(1, 101))
    with pytest.raises(ValueError):
        GF(100)


def test_rational_field():
    assert QQ.div(Fraction(1, 3), Fraction(2, 3)) == Fraction(1, 2)
    assert QQ.is_zero(QQ.sub(QQ.one, Fraction(1)))


def test_small_crt_and_reconstruction_examples():
    assert crt_combine([ModularImage(1, 3), ModularImage(2, 5)]) == ModularImage(7, 15)
    assert crt_combine([ModularImage(8, 15), ModularImage(3, 7)]) == ModularImage(38, 105)
    assert rational_reconstruct(ModularImage(8, 15)) == Fraction(1, 2)
    # |n|, d <= 2 admits -1/2 since 2 * 7 = -1 mod 15
    assert rational_reconstruct(ModularImage(7, 15)) == Fraction(-1, 2)
    brute = [Fraction(n, d) for n in range(-2, 3) for d in (1, 2) if (d * 7 - n) % 15 == 0]
    assert brute == [Fraction(-1, 2)]
