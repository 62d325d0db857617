"""Power-series solution of a DDE.

The unknown F(t, u) is expanded in the shifted variable v = u - a, where
the divided difference at a is a plain shift: the coefficient of v^i in
Delta_a^l F is the coefficient of v^(i+l) in F.  With c the common
denominator of the right-hand side (in v) and d its degree in x, D1..Dk,
the substitution H = c*F, t = c^d * s makes every coefficient an integer,
so the expansion runs on exact integers.  Products of series are computed
one t-coefficient at a time; each product of v-polynomials is done with a
single big-integer multiplication (Kronecker substitution) through gmpy2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Sequence

import gmpy2

from .numeric import QQ, PrimeField
from .poly import MultiPoly


class SeriesError(ValueError):
    pass


# -- Kronecker packing ----------------------------------------------------------------------


def _pack(coeffs: Sequence[int], W: int):
    """sum c_i 2^(W i) as an mpz, for signed coefficients."""
    nb = W // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nb, "little") for c in coeffs)
    if all(c >= 0 for c in coeffs):
        return gmpy2.mpz.from_bytes(pos, "little")
    neg = b"".join((-c if c < 0 else 0).to_bytes(nb, "little") for c in coeffs)
    return gmpy2.mpz.from_bytes(pos, "little") - gmpy2.mpz.from_bytes(neg, "little")


_OFFSETS: dict[tuple[int, int], object] = {}


def _offset(W: int, n: int):
    key = (W, n)
    if key not in _OFFSETS:
        nb = W // 8
        one = (1 << (W - 1)).to_bytes(nb, "little")
        _OFFSETS[key] = gmpy2.mpz.from_bytes(one * n, "little")
    return _OFFSETS[key]


def _unpack(value, W: int, n: int) -> list[int]:
    """Inverse of _pack for n slots whose values lie in (-2^(W-1), 2^(W-1))."""
    nb = W // 8
    half = 1 << (W - 1)
    data = (value + _offset(W, n)).to_bytes(nb * n, "little")
    return [int.from_bytes(data[i * nb:(i + 1) * nb], "little") - half for i in range(n)]


def _bits(coeffs) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def _width(bits: int) -> int:
    return (bits + 2 + 63) // 64 * 64


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer polynomials (dense, lowest degree first)."""
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    W = _width(_bits(a) + _bits(b) + min(len(a), len(b)).bit_length())
    return _trim(_unpack(_pack(a, W) * _pack(b, W), W, n))


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def series_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Truncated product of integer series: first n coefficients."""
    a, b = list(a[:n]), list(b[:n])
    if not a or not b:
        return [0] * n
    r = poly_mul(a, b)[:n]
    return r + [0] * (n - len(r))


# -- series types -------------------------------------------------------------------------------


@dataclass
class UniSeries:
    """First N+1 coefficients of a univariate power series in t."""

    coeffs: list
    K: object = QQ

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)


@dataclass
class BivariateSeries:
    """F(t, u) mod t^(N+1), stored in powers of v = u - a.

    ``vcoeffs[n][i]`` is the coefficient of t^n v^i.
    """

    vcoeffs: list[list]
    a: Fraction
    K: object = QQ

    @property
    def order(self) -> int:
        return len(self.vcoeffs) - 1

    def coeffs_u(self) -> list[list]:
        """Coefficients as polynomials in u (Taylor shift back)."""
        return [_taylor_shift(c, self.a, self.K) for c in self.vcoeffs]

    def __getitem__(self, n):
        return self.coeffs_u()[n]


def _taylor_shift(c: Sequence, a, K) -> list:
    """Coefficients of q(u) = c(u - a) given those of c(v) in v."""
    # q(u) = sum c_i (u - a)^i
    n = len(c)
    out = [K.zero] * n
    if n == 0:
        return []
    negA = K.neg(K(a)) if not isinstance(K, PrimeField) else (-K(a)) % K.p
    for i, ci in enumerate(c):
        if K.is_zero(ci):
            continue
        for j in range(i + 1):
            term = K.mul(K.mul(ci, K(comb(i, j))), K.pow(negA, i - j))
            out[j] = K.add(out[j], term)
    return _trim(out)


def _to_v(coeffs_u: Sequence, a, K) -> list:
    """Coefficients in v = u - a of a polynomial given in u."""
    return _taylor_shift(coeffs_u, K.neg(K(a)), K)


# -- the expansion engine -----------------------------------------------------------------------------


class _Expander:
    """Incremental expansion of H = c*F in s = t / c^d, exact integers or mod p."""

    def __init__(self, rhs: MultiPoly, k: int, a, p: int | None = None):
        self.k = k
        self.p = p
        self.a = Fraction(a)
        nsym = k + 1
        # group rhs terms by exponent vector in (x, D1..Dk): j -> v-poly
        groups: dict[tuple, dict[int, list]] = {}
        tpos, upos = k + 1, k + 2
        for m, c in rhs.terms.items():
            alpha = tuple(m[:nsym])
            j = m[tpos]
            if any(alpha) and j == 0:
                raise SeriesError("every term involving x or D must carry a factor t")
            upoly = groups.setdefault(alpha, {}).setdefault(j, [])
            e = m[upos]
            while len(upoly) <= e:
                upoly.append(Fraction(0))
            upoly[e] += Fraction(c)
        d = max((sum(al) for al in groups), default=0)
        d = max(d, 1)
        terms: list[tuple[tuple, int, list]] = []
        for alpha, byj in groups.items():
            for j, upoly in byj.items():
                vpoly = _to_v(upoly, self.a, QQ)
                if vpoly:
                    terms.append((alpha, j, vpoly))
        c = 1
        for _, _, vp in terms:
            for x in vp:
                c = lcm(c, Fraction(x).denominator)
        self.c, self.d = c, d
        # integer-scaled term list
        self.terms = []
        self.f0 = []
        for alpha, j, vp in terms:
            scale = c ** (1 + d * j - sum(alpha))
            ip = [int(Fraction(x) * scale) for x in vp]
            if p is not None:
                ip = [x % p for x in ip]
            if j == 0:
                self.f0 = ip
            else:
                self.terms.append((alpha, j, ip))
        self.terms.sort()
        self.H: list[list[int]] = []
        # product nodes: alpha -> list of coefficients; parents for composites
        self.nodes: dict[tuple, list[list[int]]] = {}
        self.parent: dict[tuple, tuple[tuple, int]] = {}
        for alpha, _, _ in self.terms:
            self._register(alpha)
        self._packcache: dict = {}

    def _register(self, alpha: tuple):
        if alpha in self.nodes:
            return
        self.nodes[alpha] = []
        if sum(alpha) >= 2:
            i = max(idx for idx, e in enumerate(alpha) if e)
            beta = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            self.parent[alpha] = (beta, i)
            self._register(beta)

    def _base(self, i: int, m: int) -> list[int]:
        # symbol i is x (i = 0) or D_i; D_i drops the first i v-coefficients
        return self.H[m][i:]

    def _coeff(self, alpha: tuple, m: int) -> list[int]:
        if sum(alpha) == 0:
            return [1] if m == 0 else []
        if sum(alpha) == 1:
            return self._base(alpha.index(1), m)
        node = self.nodes[alpha]
        while len(node) <= m:
            node.append(self._convolve(alpha, len(node)))
        return node[m]

    def _convolve(self, alpha: tuple, m: int) -> list[int]:
        beta, i = self.parent[alpha]
        A = [self._coeff(beta, r) for r in range(m + 1)]
        B = [self._base(i, r) for r in range(m + 1)]
        pairs = [(A[r], B[m - r]) for r in range(m + 1) if A[r] and B[m - r]]
        if not pairs:
            return []
        if self.p is not None:
            bits = 2 * self.p.bit_length()
        else:
            bits = max(_bits(x) for x, _ in pairs) + max(_bits(y) for _, y in pairs)
        n = max(len(x) + len(y) - 1 for x, y in pairs)
        W = _width(bits + (len(pairs) * n).bit_length())
        total = gmpy2.mpz(0)
        for x, y in pairs:
            total += _pack(x, W) * _pack(y, W)
        out = _trim(_unpack(total, W, n))
        if self.p is not None:
            out = _trim([v % self.p for v in out])
        return out

    def step(self):
        n = len(self.H)
        if n == 0:
            self.H.append(_trim([self.c * x for x in self.f0]) if self.p is None else _trim([self.c * x % self.p for x in self.f0]))
            return
        acc: list[int] = []
        for alpha, j, q in self.terms:
            if j > n:
                continue
            prod = self._coeff(alpha, n - j)
            if not prod:
                continue
            term = poly_mul(q, prod) if self.p is None else _mulmod(q, prod, self.p)
            if len(acc) < len(term):
                acc.extend([0] * (len(term) - len(acc)))
            for i, v in enumerate(term):
                acc[i] += v
        if self.p is not None:
            acc = [v % self.p for v in acc]
        self.H.append(_trim(acc))

    def F(self, n: int):
        """Coefficient of t^n of F, in v, as Fractions (or ints mod p)."""
        scale = self.c ** (self.d * n + 1)
        if self.p is not None:
            inv = pow(scale, -1, self.p)
            return [h * inv % self.p for h in self.H[n]]
        if scale == 1:
            return list(self.H[n])
        return [Fraction(h, scale) for h in self.H[n]]


def _mulmod(a, b, p):
    W = _width(2 * p.bit_length() + min(len(a), len(b)).bit_length())
    return [v % p for v in _unpack(_pack(a, W) * _pack(b, W), W, len(a) + len(b) - 1)]


def _rhs_of(dde) -> MultiPoly:
    if getattr(dde, "rhs", None) is None:
        raise SeriesError("series expansion needs the right-hand side of the DDE")
    return dde.rhs


def expand_bivariate(dde, N: int, p: int | None = None) -> BivariateSeries:
    """F(t, u) mod t^(N+1), exactly (or modulo the prime p)."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    K = QQ
    if p is not None:
        from .numeric import GF

        K = GF(p)
        a = Fraction(dde.a)
        if a.denominator % p == 0:
            raise SeriesError(f"prime {p} divides the denominator of a")
    ex = _Expander(_rhs_of(dde), dde.k, dde.a, p)
    if p is not None and ex.c % p == 0:
        raise SeriesError(f"prime {p} divides a denominator of the equation")
    for _ in range(N + 1):
        ex.step()
    return BivariateSeries([ex.F(n) for n in range(N + 1)], Fraction(dde.a), K)


def specialize_u(s: BivariateSeries, a, i: int = 0) -> UniSeries:
    """i-th u-derivative of F at u = a, mod t^(N+1)."""
    if i < 0:
        raise ValueError("derivative order must be non-negative")
    K = s.K
    a = Fraction(a)
    if a == s.a:
        vco = s.vcoeffs
    else:
        vco = [_to_v(_taylor_shift(c, s.a, K), a, K) for c in s.vcoeffs]
    f = K(factorial(i))
    return UniSeries([K.mul(f, c[i]) if len(c) > i else K.zero for c in vco], K)


def expand_specialized(dde, N: int, i: int = 0, p: int | None = None) -> UniSeries:
    return specialize_u(expand_bivariate(dde, N, p), dde.a, i)


def divided_difference(s: BivariateSeries, a, l: int = 1) -> BivariateSeries:
    """Delta_a^l applied coefficient-wise."""
    if l < 1:
        raise ValueError("l must be at least 1")
    K = s.K
    a = Fraction(a)
    if a == s.a:
        return BivariateSeries([list(c[l:]) for c in s.vcoeffs], s.a, K)
    out = []
    for c in s.coeffs_u():
        q = list(c)
        for _ in range(l):
            q = _divide_linear(q, a, K)
        out.append(_to_v(q, s.a, K))
    return BivariateSeries(out, s.a, K)


def _divide_linear(c: list, a, K) -> list:
    """(c(u) - c(a)) / (u - a) by synthetic division."""
    if len(c) <= 1:
        return []
    a = K(a)
    q = [K.zero] * (len(c) - 1)
    acc = K.zero
    for i in range(len(c) - 1, 0, -1):
        acc = K.add(K.mul(acc, a), c[i])
        q[i - 1] = acc
    return _trim(q)


def differentiate_u(s: BivariateSeries) -> BivariateSeries:
    K = s.K
    return BivariateSeries([_trim([K.mul(K(i), c[i]) for i in range(1, len(c))]) for c in s.vcoeffs], s.a, K)


# -- annihilation --------------------------------------------------------------------------------------


def check_annihilation(R: MultiPoly, s: UniSeries, tvar: str = "t", zvar: str = "z0") -> int:
    """Largest n <= N+1 with R(t, s(t)) = 0 mod t^n, computed exactly."""
    N1 = len(s.coeffs)
    if R.is_zero():
        return N1
    extra = [v for v in R.used_vars() if v not in (tvar, zvar)]
    if extra:
        raise ValueError(f"R involves variables {extra} besides {tvar}, {zvar}")
    K = s.K
    if isinstance(K, PrimeField):
        return _check_mod_p(R, s, tvar, zvar)
    # integer series S = D * s
    D = 1
    for c in s.coeffs:
        D = lcm(D, Fraction(c).denominator)
    S = [int(Fraction(c) * D) for c in s.coeffs]
    dz = R.degree(zvar) if zvar in R.vars else 0
    by_z = R.coeffs_in(zvar) if zvar in R.vars else {0: R}
    # R(t, S/D) * D^dz * den = sum_j den*r_j(t) * S^j * D^(dz-j)
    den = 1
    for c in R.terms.values():
        den = lcm(den, Fraction(c).denominator)
    acc = [0] * N1
    power = [1] + [0] * (N1 - 1)
    for j in range(dz + 1):
        if j:
            power = series_mul(power, S, N1)
        rj = by_z.get(j)
        if rj is None or rj.is_zero():
            continue
        tco = [0] * N1
        for m, c in rj.terms.items():
            e = m[rj.vars.index(tvar)] if tvar in rj.vars else 0
            if e < N1:
                tco[e] += int(Fraction(c) * den)
        term = series_mul(tco, power, N1)
        f = D ** (dz - j)
        for i in range(N1):
            acc[i] += term[i] * f
    for i, v in enumerate(acc):
        if v:
            return i
    return N1


def _check_mod_p(R: MultiPoly, s: UniSeries, tvar, zvar) -> int:
    K = s.K
    p = K.p
    N1 = len(s.coeffs)
    Rp = R.change_field(K)
    dz = Rp.degree(zvar) if zvar in Rp.vars else 0
    by_z = Rp.coeffs_in(zvar) if zvar in Rp.vars else {0: Rp}
    S = [int(c) % p for c in s.coeffs]
    acc = [0] * N1
    power = [1] + [0] * (N1 - 1)
    for j in range(dz + 1):
        if j:
            power = [v % p for v in series_mul(power, S, N1)]
        rj = by_z.get(j)
        if rj is None or rj.is_zero():
            continue
        tco = [0] * N1
        for m, c in rj.terms.items():
            e = m[rj.vars.index(tvar)] if tvar in rj.vars else 0
            if e < N1:
                tco[e] = (tco[e] + c) % p
        term = series_mul(tco, power, N1)
        for i in range(N1):
            acc[i] = (acc[i] + term[i]) % p
    for i, v in enumerate(acc):
        if v:
            return i
    return N1


def residual(dde, s: BivariateSeries) -> list[list]:
    """Coefficients (in v) of F - rhs(F, Delta F, ...) mod t^(N+1); all
    empty lists when s solves the equation to its order."""
    K = s.K
    N1 = len(s.vcoeffs)
    rhs = _rhs_of(dde)
    k = dde.k
    syms = [s] + [divided_difference(s, s.a, l) for l in range(1, k + 1)]
    # dense bivariate arithmetic over K in (t, v)
    def mul(A, B):
        out = [[] for _ in range(N1)]
        for i, ai in enumerate(A):
            if not ai:
                continue
            for j in range(N1 - i):
                bj = B[j]
                if not bj:
                    continue
                prod = [K.zero] * (len(ai) + len(bj) - 1)
                for x, cx in enumerate(ai):
                    for y, cy in enumerate(bj):
                        prod[x + y] = K.add(prod[x + y], K.mul(cx, cy))
                out[i + j] = _addp(K, out[i + j], prod)
        return out

    total = [[] for _ in range(N1)]
    cache: dict = {}
    for m, c in rhs.terms.items():
        alpha = m[: k + 1]
        if alpha not in cache:
            acc = [[K.one]] + [[] for _ in range(N1 - 1)]
            for i, e in enumerate(alpha):
                for _ in range(e):
                    acc = mul(acc, syms[i].vcoeffs)
            cache[alpha] = acc
        base = cache[alpha]
        j, e = m[k + 1], m[k + 2]
        # u^e in v: (v + a)^e
        ue = [K.mul(K(comb(e, i)), K.pow(K(s.a), e - i)) for i in range(e + 1)]
        for n in range(N1 - j):
            if base[n]:
                prod = [K.zero] * (len(base[n]) + len(ue) - 1)
                for x, cx in enumerate(base[n]):
                    for y, cy in enumerate(ue):
                        prod[x + y] = K.add(prod[x + y], K.mul(K.mul(cx, cy), K(c)))
                total[n + j] = _addp(K, total[n + j], prod)
    return [_trim(_subp(K, list(s.vcoeffs[n]), total[n])) for n in range(N1)]


def _addp(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, x in enumerate(b):
        r[i] = K.add(r[i], x)
    return _trim(r)


def _subp(K, a, b):
    r = list(a) + [K.zero] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        r[i] = K.sub(r[i], x)
    return r
