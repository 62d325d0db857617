"""Dense univariate polynomials over a field.

A polynomial is a list of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  All functions take the
field as first argument so the same code serves Q and F_p.
"""

from __future__ import annotations

from .numeric import Field, PrimeField


def trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: list) -> int:
    return len(f) - 1


def add(K: Field, f: list, g: list) -> list:
    if len(f) < len(g):
        f, g = g, f
    r = list(f)
    for i, c in enumerate(g):
        r[i] = K.add(r[i], c)
    return trim(r)


def sub(K: Field, f: list, g: list) -> list:
    r = list(f) + [K.zero] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        r[i] = K.sub(r[i], c)
    return trim(r)


def scale(K: Field, f: list, c) -> list:
    if K.is_zero(c):
        return []
    return trim([K.mul(a, c) for a in f])


def mul(K: Field, f: list, g: list) -> list:
    if not f or not g:
        return []
    if isinstance(K, PrimeField):
        p = K.p
        r = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    r[i + j] += a * b
        return trim([c % p for c in r])
    r = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            r[i + j] = K.add(r[i + j], K.mul(a, b))
    return trim(r)


def divmod_(K: Field, f: list, g: list) -> tuple[list, list]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = K.inv(g[-1])
    q = [K.zero] * max(0, len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv)
        q[i - dg] = c
        for j in range(dg + 1):
            r[i - dg + j] = K.sub(r[i - dg + j], K.mul(c, g[j]))
    return trim(q), trim(r[:dg])


def rem(K: Field, f: list, g: list) -> list:
    return divmod_(K, f, g)[1]


def monic(K: Field, f: list) -> list:
    if not f:
        return []
    return scale(K, f, K.inv(f[-1]))


def gcd(K: Field, f: list, g: list) -> list:
    while g:
        f, g = g, rem(K, f, g)
    return monic(K, f)


def derivative(K: Field, f: list) -> list:
    return trim([K.mul(K(i), f[i]) for i in range(1, len(f))])


def evaluate(K: Field, f: list, x):
    r = K.zero
    for c in reversed(f):
        r = K.add(K.mul(r, x), c)
    return r


def squarefree_part(K: Field, f: list) -> list:
    """Product of the distinct irreducible factors (characteristic 0 or
    degree below the characteristic)."""
    if len(f) <= 2:
        return monic(K, f)
    d = derivative(K, f)
    if not d:
        # only happens in characteristic p for p-th powers; not needed here
        return monic(K, f)
    g = gcd(K, f, d)
    q, r = divmod_(K, f, g)
    return monic(K, q)


def interpolate(K: Field, xs: list, ys: list) -> list:
    """Newton interpolation through (xs[i], ys[i])."""
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation abscissae must be distinct")
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = K.div(K.sub(coef[i], coef[i - 1]), K.sub(xs[i], xs[i - j]))
    r: list = []
    for i in range(n - 1, -1, -1):
        # r = r * (X - xs[i]) + coef[i]
        r = sub(K, [K.zero] + r, scale(K, r, xs[i])) if r else []
        r = add(K, r, [coef[i]])
    return r


def from_roots(K: Field, roots: list) -> list:
    r = [K.one]
    for a in roots:
        r = mul(K, r, [K.neg(a), K.one])
    return r


def rational_reconstruct(K: Field, f: list, m: list, num_deg: int) -> tuple[list, list] | None:
    """Find n/d with deg n <= num_deg, deg d < deg m - num_deg and
    d*f = n (mod m); d is returned monic.  None on failure."""
    dm = len(m) - 1
    den_deg = dm - num_deg - 1
    r0, r1 = list(m), rem(K, f, m)
    s0, s1 = [], [K.one]
    while len(r1) - 1 > num_deg:
        q, rr = divmod_(K, r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
    if not s1 or len(s1) - 1 > den_deg:
        return None
    if gcd(K, s1, m) != [K.one]:
        return None
    lc = K.inv(s1[-1])
    return scale(K, r1, lc), scale(K, s1, lc)


def roots_by_enumeration(K: PrimeField, f: list) -> list[int]:
    """All roots in F_p by exhaustive search (small p only)."""
    return [a for a in range(K.p) if evaluate(K, f, a) == 0]
