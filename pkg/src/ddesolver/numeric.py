"""Exact arithmetic substrate: rationals, word-size prime fields, CRT and
rational reconstruction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator

# BigRational is Python's Fraction: numerator/denominator are arbitrary
# precision, the denominator is positive and the pair is reduced.
BigRational = Fraction


class ReconstructionFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class ModularImage:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)


def crt_combine(images: Iterable[ModularImage]) -> ModularImage:
    """Combine residues modulo pairwise coprime moduli."""
    res, mod = 0, 1
    for im in images:
        if gcd(mod, im.modulus) != 1:
            raise ValueError(f"moduli {mod} and {im.modulus} are not coprime")
        # res + mod * k = im.residue (mod im.modulus)
        k = (im.residue - res) * pow(mod, -1, im.modulus) % im.modulus
        res += mod * k
        mod *= im.modulus
    return ModularImage(res % mod, mod)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Fast path of crt_combine for two images, used in inner loops."""
    k = (r2 - r1) * pow(m1, -1, m2) % m2
    return (r1 + m1 * k) % (m1 * m2), m1 * m2


def rational_reconstruct(image: ModularImage) -> Fraction | None:
    """Return n/d with |n|, d <= floor(sqrt(m/2)) and d*r = n (mod m).

    Returns None when no such fraction exists.
    """
    m = image.modulus
    if m <= 1:
        raise ValueError("modulus must exceed 1")
    bound = isqrt(m // 2)
    r0, r1 = m, image.residue % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(s1, m) != 1:
        return None
    return Fraction(r1, s1)


# -- primality ---------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream(bit_size: int, seed: int = 0) -> Iterator[int]:
    """Deterministic stream of distinct primes with exactly `bit_size` bits."""
    if not 16 <= bit_size <= 62:
        raise ValueError("bit_size must lie in [16, 62]")
    rng = random.Random(f"primes/{bit_size}/{seed}")
    lo, hi = 1 << (bit_size - 1), (1 << bit_size) - 1
    # about half of the odd candidates near the top are hit before
    # we give up; only reachable for the smallest sizes
    budget = (hi - lo) // 2
    seen: set[int] = set()
    misses = 0
    while True:
        c = rng.randrange(lo, hi + 1) | 1
        if c > hi or c in seen:
            misses += 1
            if misses > budget:
                raise RuntimeError(f"exhausted primes of {bit_size} bits")
            continue
        seen.add(c)
        if is_prime(c):
            misses = 0
            yield c


# -- coefficient rings ---------------------------------------------------------


class Field:
    """Coefficient field interface used by polynomials and linear algebra.

    Elements are plain Python values (int, Fraction, ...); the field object
    carries the operations so the same code runs over Q and over F_p.
    """

    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    zero: object
    one: object

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r


class RationalField(Field):
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, int):
            return x
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        f = Fraction(1) / a
        return f.numerator if f.denominator == 1 else f

    def div(self, a, b):
        f = Fraction(a) / b
        return f.numerator if f.denominator == 1 else f

    def mul(self, a, b):
        r = a * b
        if isinstance(r, Fraction) and r.denominator == 1:
            return r.numerator
        return r

    def add(self, a, b):
        r = a + b
        if isinstance(r, Fraction) and r.denominator == 1:
            return r.numerator
        return r

    def sub(self, a, b):
        r = a - b
        if isinstance(r, Fraction) and r.denominator == 1:
            return r.numerator
        return r

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeField(Field):
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def symmetric(self, a: int) -> int:
        return a - self.p if a > self.p // 2 else a

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def reduce_rational(x, p: int) -> int:
    """Image of a rational number in F_p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"{x} has no image mod {p}")
    return x.numerator * pow(x.denominator, -1, p) % p
