"""Sparse multivariate polynomials over a pluggable coefficient field.

A MultiPoly lives in a fixed, named variable universe.  Terms are stored in
a dict mapping exponent tuples to nonzero coefficients; the field object
(``QQ``, ``GF(p)`` or a ``RationalFunctionField``) carries the arithmetic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Sequence

from . import univariate as up
from .numeric import QQ, Field, PrimeField, RationalField


# -- monomial orders -------------------------------------------------------


class MonomialOrder:
    """lex, grevlex, or a block order whose blocks are compared by grevlex.

    ``blocks`` is a list of lists of variable indices; earlier blocks
    dominate.  lex is the block order with singleton blocks, grevlex the
    order with a single block.
    """

    def __init__(self, kind: str, nvars: int, blocks: Sequence[Sequence[int]] | None = None):
        if kind == "lex":
            blocks = [[i] for i in range(nvars)]
        elif kind == "grevlex":
            blocks = [list(range(nvars))]
        elif kind == "block":
            if blocks is None:
                raise ValueError("block order needs blocks")
            flat = sorted(i for b in blocks for i in b)
            if flat != list(range(nvars)):
                raise ValueError("blocks must partition the variables")
        else:
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.blocks = [list(b) for b in blocks]

    @classmethod
    def lex(cls, nvars: int) -> "MonomialOrder":
        return cls("lex", nvars)

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls("grevlex", nvars)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[int]]) -> "MonomialOrder":
        return cls("block", sum(len(b) for b in blocks), blocks)

    def key(self, m: Sequence[int]) -> tuple:
        """Sort key: larger key means larger monomial.

        Within a block, grevlex compares total degree, then prefers the
        monomial whose last differing exponent is smaller; negating the
        reversed exponents turns that into a plain tuple comparison.
        """
        k: list[int] = []
        for b in self.blocks:
            k.append(sum(m[i] for i in b))
            k.extend(-m[i] for i in reversed(b))
        return tuple(k)

    def eliminates(self, indices: Iterable[int]) -> bool:
        """True when the variables `indices` form a union of leading blocks."""
        want = set(indices)
        seen: set[int] = set()
        for b in self.blocks:
            if seen == want:
                return True
            seen |= set(b)
            if not seen <= want:
                return False
        return seen == want

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(map(tuple, self.blocks)))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.block({self.blocks})"
        return f"MonomialOrder.{self.kind}({self.nvars})"


def mono_compare(order: MonomialOrder, m1: Sequence[int], m2: Sequence[int]) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to or greater than m2."""
    if len(m1) != len(m2) or len(m1) != order.nvars:
        raise ValueError("monomials and order use different variable universes")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


# -- polynomials ---------------------------------------------------------------


class NotDivisible(ArithmeticError):
    pass


class MultiPoly:
    __slots__ = ("vars", "terms", "K")

    def __init__(self, vars: Sequence[str], terms: dict | None = None, K: Field = QQ):
        self.vars = tuple(vars)
        self.K = K
        self.terms = {} if terms is None else {m: c for m, c in terms.items() if not K.is_zero(c)}

    # construction
    @classmethod
    def const(cls, vars, c, K: Field = QQ) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): K(c)}, K)

    @classmethod
    def var(cls, vars, name: str, K: Field = QQ) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): K.one}, K)

    @classmethod
    def gens(cls, vars, K: Field = QQ) -> list["MultiPoly"]:
        return [cls.var(vars, v, K) for v in vars]

    def _new(self, terms: dict) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.vars, p.K, p.terms = self.vars, self.K, terms
        return p

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable universes differ: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(self.vars, other, self.K)

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.K.zero)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if self.is_constant():
                return self.constant_value() == other or (not self.terms and other == 0)
            return False
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        K = self.K
        r = dict(self.terms)
        for m, c in other.terms.items():
            if m in r:
                s = K.add(r[m], c)
                if K.is_zero(s):
                    del r[m]
                else:
                    r[m] = s
            else:
                r[m] = c
        return self._new(r)

    __radd__ = __add__

    def __neg__(self):
        K = self.K
        return self._new({m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.K(other)
            if self.K.is_zero(c):
                return self._new({})
            K = self.K
            return self._new({m: K.mul(a, c) for m, a in self.terms.items()})
        other = self._coerce(other)
        K = self.K
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        r: dict = {}
        prime = isinstance(K, PrimeField)
        n = len(self.vars)
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(m1[i] + m2[i] for i in range(n))
                if prime or isinstance(K, RationalField):
                    r[m] = r.get(m, 0) + c1 * c2
                else:
                    r[m] = K.add(r[m], K.mul(c1, c2)) if m in r else K.mul(c1, c2)
        if prime:
            p = K.p
            r = {m: c % p for m, c in r.items() if c % p}
        elif isinstance(K, RationalField):
            r = {m: K(c) for m, c in r.items() if c != 0}
        else:
            r = {m: c for m, c in r.items() if not K.is_zero(c)}
        return self._new(r)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        r = MultiPoly.const(self.vars, 1, self.K)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def scale(self, c) -> "MultiPoly":
        return self * c

    # degrees and coefficients
    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not in {self.vars}") from None

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in `var`; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = self.index(var)
        return max(m[i] for m in self.terms)

    def free_of(self, names: Iterable[str]) -> bool:
        idx = [self.vars.index(v) for v in names if v in self.vars]
        return all(m[i] == 0 for m in self.terms for i in idx)

    def used_vars(self) -> list[str]:
        return [v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms)]

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Map d -> coefficient of var^d (a MultiPoly free of var)."""
        i = self.index(var)
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            d = m[i]
            out.setdefault(d, {})[m[:i] + (0,) + m[i + 1:]] = c
        return {d: self._new(t) for d, t in out.items()}

    def coeff_list(self, var: str) -> list["MultiPoly"]:
        cs = self.coeffs_in(var)
        if not cs:
            return []
        zero = self._new({})
        return [cs.get(d, zero) for d in range(max(cs) + 1)]

    def lc_in(self, var: str) -> "MultiPoly":
        return self.coeffs_in(var)[self.degree(var)]

    def leading_term(self, order: MonomialOrder):
        """(monomial, coefficient) of the largest term under `order`."""
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or MonomialOrder.lex(len(self.vars))
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    # calculus and substitution
    def diff(self, var: str) -> "MultiPoly":
        i = self.index(var)
        K = self.K
        r = {}
        for m, c in self.terms.items():
            if m[i]:
                c2 = K.mul(K(m[i]), c)
                if not K.is_zero(c2):
                    r[m[:i] + (m[i] - 1,) + m[i + 1:]] = c2
        return self._new(r)

    def subs(self, bindings: dict) -> "MultiPoly":
        """Substitute field elements or MultiPolys (same universe) for variables."""
        if not bindings:
            return self
        idx = {self.index(v): val for v, val in bindings.items()}
        K = self.K
        scalar = {i: v for i, v in idx.items() if not isinstance(v, MultiPoly)}
        polys = {i: v for i, v in idx.items() if isinstance(v, MultiPoly)}
        scalar = {i: K(v) for i, v in scalar.items()}
        # scalars first: collapse exponents to zero
        terms: dict = {}
        if scalar:
            powcache: dict = {}
            for m, c in self.terms.items():
                m2 = list(m)
                for i, v in scalar.items():
                    e = m[i]
                    if e:
                        key = (i, e)
                        if key not in powcache:
                            powcache[key] = K.pow(v, e)
                        c = K.mul(c, powcache[key])
                        m2[i] = 0
                t = tuple(m2)
                terms[t] = K.add(terms[t], c) if t in terms else c
            res = self._new({m: c for m, c in terms.items() if not K.is_zero(c)})
        else:
            res = self
        if not polys:
            return res
        # polynomial values: Horner over each substituted variable in turn
        for i, val in polys.items():
            v = self.vars[i]
            cl = res.coeff_list(v)
            acc = res._new({})
            for c in reversed(cl):
                acc = acc * val + c
            res = acc
        return res

    def evaluate(self, point: dict):
        """Full evaluation to a field element."""
        p = self.subs(point)
        if not p.is_constant():
            raise ValueError("not all variables bound")
        return p.constant_value()

    def change_field(self, K: Field) -> "MultiPoly":
        """Map coefficients into another field (e.g. QQ -> GF(p))."""
        return MultiPoly(self.vars, {m: K(c) for m, c in self.terms.items()}, K)

    def reorder(self, vars: Sequence[str]) -> "MultiPoly":
        """Same polynomial in another universe; used variables must exist there."""
        vars = tuple(vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append((i, vars.index(v)))
            elif any(m[i] for m in self.terms):
                raise ValueError(f"variable {v!r} is used but absent from {vars}")
        n = len(vars)
        r = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, j in pos:
                e[j] = m[i]
            r[tuple(e)] = c
        return MultiPoly(vars, r, self.K)

    def rename(self, mapping: dict[str, str]) -> "MultiPoly":
        return MultiPoly([mapping.get(v, v) for v in self.vars], self.terms, self.K)

    # integer content
    def clear_denominators(self) -> "MultiPoly":
        """Primitive integer polynomial with positive leading coefficient
        under lex; only for coefficients in Q."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // igcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self.terms.items()}
        g = reduce(igcd, (abs(c) for c in ints.values()))
        lead = max(ints)
        if ints[lead] < 0:
            g = -g
        return self._new({m: c // g for m, c in ints.items()})

    def monic(self, order: MonomialOrder | None = None) -> "MultiPoly":
        if not self.terms:
            return self
        order = order or MonomialOrder.lex(len(self.vars))
        _, c = self.leading_term(order)
        return self * self.K.inv(c)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, vars={self.vars}, K={self.K!r})"

    def __str__(self):
        return format_poly(self)


# -- canonical text ------------------------------------------------------------------


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: MultiPoly, order: MonomialOrder | None = None) -> str:
    """Expanded sum of terms in descending order, explicit `*` and `^`."""
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms(order):
        factors = []
        for v, e in zip(p.vars, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        neg = isinstance(c, (int, Fraction)) and c < 0
        if neg:
            c = -c
        if factors:
            mono = "*".join(factors)
            s = mono if c == 1 else f"{_format_coeff(c)}*{mono}"
        else:
            s = _format_coeff(c)
        if not out:
            out.append(("-" if neg else "") + s)
        else:
            out.append((" - " if neg else " + ") + s)
    return "".join(out)


# -- exact division --------------------------------------------------------------------


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient of an exact division; raises NotDivisible otherwise."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    q = p._coerce(q)
    if not p.terms:
        return p
    K = p.K
    qm = max(q.terms)  # lex leading monomial
    qinv = K.inv(q.terms[qm])
    qterms = list(q.terms.items())
    rem = dict(p.terms)
    quo: dict = {}
    n = len(p.vars)
    heap = [tuple(-x for x in m) for m in rem]
    heapq.heapify(heap)
    while rem:
        m = tuple(-x for x in heapq.heappop(heap))
        c = rem.get(m)
        if c is None:
            continue
        e = tuple(m[i] - qm[i] for i in range(n))
        if min(e) < 0:
            raise NotDivisible("inexact polynomial division")
        f = K.mul(c, qinv)
        quo[e] = f
        for mm, cc in qterms:
            t = tuple(mm[i] + e[i] for i in range(n))
            if t in rem:
                v = K.sub(rem[t], K.mul(f, cc))
            else:
                v = K.neg(K.mul(f, cc))
                heapq.heappush(heap, tuple(-x for x in t))
            if K.is_zero(v):
                rem.pop(t, None)
            else:
                rem[t] = v
    return p._new(quo)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


# -- resultants ------------------------------------------------------------------------


def _upoly(p: MultiPoly, var: str) -> list[MultiPoly]:
    return p.coeff_list(var)


def _from_upoly(cs: list[MultiPoly], var: str, like: MultiPoly) -> MultiPoly:
    x = MultiPoly.var(like.vars, var, like.K)
    r = like._new({})
    for c in reversed(cs):
        r = r * x + c
    return r


def _utrim(cs: list) -> list:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _prem(A: list[MultiPoly], B: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder: LC(B)^(degA-degB+1) A = Q B + R."""
    R = list(A)
    db = len(B) - 1
    lb = B[-1]
    delta = len(A) - len(B) + 1
    e = 0
    while len(R) - 1 >= db and R:
        lr = R[-1]
        s = len(R) - 1 - db
        R = [c * lb for c in R]
        for j in range(db + 1):
            R[s + j] = R[s + j] - lr * B[j]
        R.pop()
        _utrim(R)
        e += 1
    if delta - e > 0:
        f = lb ** (delta - e)
        R = [c * f for c in R]
    return R


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant in `var`, by the subresultant PRS."""
    q = p._coerce(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    A, B = _upoly(p, var), _upoly(q, var)
    one = MultiPoly.const(p.vars, 1, p.K)
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -1
        A, B = B, A
    if len(B) == 1:
        return B[0] ** (len(A) - 1) * s
    g = h = one
    while len(B) > 1:
        delta = len(A) - len(B)
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return p._new({})
        div = g * h**delta
        B = [exact_divide(c, div) for c in R]
        g = A[-1]
        if delta:
            h = exact_divide(g**delta, h ** (delta - 1)) if delta > 1 else g
    da = len(A) - 1
    h = exact_divide(B[0] ** da, h ** (da - 1)) if da > 1 else B[0] ** da
    return h * s


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    A, B = list(reversed(_upoly(p, var))), list(reversed(_upoly(q, var)))
    m, n = len(A) - 1, len(B) - 1
    zero = p._new({})
    rows = []
    for i in range(n):
        rows.append([zero] * i + A + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + B + [zero] * (m - 1 - i))
    return rows


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    d = p.degree(var)
    if d < 2:
        raise ValueError("discriminant needs degree at least 2")
    r = resultant(p, p.diff(var), var)
    r = exact_divide(r, p.lc_in(var))
    return -r if (d * (d - 1) // 2) % 2 else r


# -- gcd and squarefree parts ---------------------------------------------------------------


def _is_integral(p: MultiPoly) -> bool:
    return all(isinstance(c, int) for c in p.terms.values())


def _content_gcd(cs: list[MultiPoly]) -> MultiPoly:
    g = cs[0]
    for c in cs[1:]:
        if g.is_constant() and not g.is_zero() and not isinstance(g.K, RationalField):
            break
        g = poly_gcd(g, c)
    return g


def _unit_normalize(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    if isinstance(p.K, RationalField):
        return p.clear_denominators()
    return p.monic()


def _int_content(p: MultiPoly) -> int:
    return reduce(igcd, (abs(c) for c in p.terms.values()), 0)


def _norm_inf(p: MultiPoly) -> int:
    return max((abs(c) for c in p.terms.values()), default=0)


def _heugcd(f: MultiPoly, g: MultiPoly, depth: int = 0) -> MultiPoly | None:
    """Heuristic gcd of integral polynomials by evaluation at a large integer
    and xi-adic reconstruction, checked by exact division; None when the
    heuristic gives up."""
    used = [v for v in f.vars if v in set(f.used_vars()) | set(g.used_vars())]
    if not used:
        return MultiPoly.const(f.vars, igcd(f.constant_value(), g.constant_value()), f.K)
    var = used[-1]
    i = f.index(var)
    cf, cg = _int_content(f), _int_content(g)
    c = igcd(cf, cg)
    f = f._new({m: v // cf for m, v in f.terms.items()})
    g = g._new({m: v // cg for m, v in g.terms.items()})
    B = 2 * min(_norm_inf(f), _norm_inf(g)) + 29
    # below 2*min(|f|, |g|) + 2 a candidate passing the division test need not be the gcd
    xi = B
    for _ in range(6):
        fe, ge = f.subs({var: xi}), g.subs({var: xi})
        if fe.is_zero() or ge.is_zero():
            xi = xi * 73794 // 27011
            continue
        h = _heugcd(fe, ge, depth + 1)
        if h is not None:
            terms: dict = {}
            for m, v in h.terms.items():
                e = 0
                while v:
                    d = v % xi
                    if d > xi // 2:
                        d -= xi
                    if d:
                        mm = m[:i] + (m[i] + e,) + m[i + 1:]
                        terms[mm] = terms.get(mm, 0) + d
                    v = (v - d) // xi
                    e += 1
            cand = f._new({m: v for m, v in terms.items() if v})
            if not cand.is_zero():
                cand = cand.clear_denominators()
                if divides(cand, f) and divides(cand, g):
                    return cand * c
        xi = xi * 73794 // 27011
    return None


def _lex_lc(p: MultiPoly):
    return p.terms[max(p.terms)]


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd over Z (for integral input, result primitive with positive lex
    leading coefficient) or over F_p (monic).

    Over Z a heuristic evaluation gcd is tried first; recursive primitive
    PRS is the fallback and the method over F_p."""
    q = p._coerce(q)
    if p.is_zero():
        return _unit_normalize(q)
    if q.is_zero():
        return _unit_normalize(p)
    if isinstance(p.K, RationalField):
        p, q = p.clear_denominators(), q.clear_denominators()
        h = _heugcd(p, q)
        if h is not None:
            return _unit_normalize(h)
    used = [v for v in p.vars if v in set(p.used_vars()) | set(q.used_vars())]
    if not used:
        if isinstance(p.K, RationalField):
            return MultiPoly.const(p.vars, igcd(p.constant_value(), q.constant_value()), p.K)
        return MultiPoly.const(p.vars, 1, p.K)
    var = used[0]
    if p.degree(var) == 0 or q.degree(var) == 0:
        # the gcd is free of var: gcd of all var-coefficients
        return _unit_normalize(_content_gcd(list(p.coeffs_in(var).values()) + list(q.coeffs_in(var).values())))
    A, B = _upoly(p, var), _upoly(q, var)
    ca, cb = _content_gcd(A), _content_gcd(B)
    c = poly_gcd(ca, cb)
    A = [exact_divide(x, ca) for x in A]
    B = [exact_divide(x, cb) for x in B]
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        R = _prem(A, B)
        A = B
        if not R:
            B = []
            break
        cr = _content_gcd(R)
        B = [exact_divide(x, cr) for x in R]
    if len(B) == 1:
        # coprime in var
        return _unit_normalize(c)
    cA = _content_gcd(A)
    A = [exact_divide(x, cA) for x in A]
    return _unit_normalize(_from_upoly(A, var, p) * c)


def squarefree_part(p: MultiPoly, var: str) -> MultiPoly:
    """p / gcd(p, dp/dvar), normalized.

    The content with respect to `var` divides the derivative as well, so
    factors free of `var` are removed.
    """
    if p.degree(var) < 1:
        return _unit_normalize(p)
    g = poly_gcd(p, p.diff(var))
    base = p.clear_denominators() if isinstance(p.K, RationalField) else p
    return _unit_normalize(exact_divide(base, g))


def squarefree_full(p: MultiPoly) -> MultiPoly:
    """Squarefree in every variable (removes repeated factors in any variable)."""
    for v in p.used_vars():
        p = squarefree_part(p, v)
    return p


# -- univariate bridges -------------------------------------------------------------------------


def to_dense(p: MultiPoly, var: str) -> list:
    """Dense coefficient list of a polynomial that only involves `var`."""
    i = p.index(var)
    if not p.terms:
        return []
    out = [p.K.zero] * (p.degree(var) + 1)
    for m, c in p.terms.items():
        if any(e for j, e in enumerate(m) if j != i):
            raise ValueError(f"polynomial involves variables other than {var}")
        out[m[i]] = c
    return out


def from_dense(cs: list, vars: Sequence[str], var: str, K: Field = QQ) -> MultiPoly:
    vars = tuple(vars)
    i = vars.index(var)
    n = len(vars)
    terms = {}
    for d, c in enumerate(cs):
        if not K.is_zero(c):
            e = [0] * n
            e[i] = d
            terms[tuple(e)] = c
    return MultiPoly(vars, terms, K)


def interpolate(points: Sequence[tuple], var: str = "z", vars: Sequence[str] | None = None, K: Field = QQ) -> MultiPoly:
    """Polynomial in `var` of degree < len(points) through the points.

    Values may be field elements or MultiPolys free of `var`; in the latter
    case interpolation is coefficient-wise and `var` must belong to their
    universe.
    """
    xs = [K(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    ys = [y for _, y in points]
    if any(isinstance(y, MultiPoly) for y in ys):
        like = next(y for y in ys if isinstance(y, MultiPoly))
        ys = [y if isinstance(y, MultiPoly) else MultiPoly.const(like.vars, y, like.K) for y in ys]
        K = like.K
        monos = set().union(*(y.terms for y in ys))
        i = like.index(var)
        res: dict = {}
        for m in monos:
            if m[i]:
                raise ValueError(f"values must be free of {var}")
            dense = up.interpolate(K, xs, [y.terms.get(m, K.zero) for y in ys])
            for d, c in enumerate(dense):
                if not K.is_zero(c):
                    res[m[:i] + (d,) + m[i + 1:]] = c
        return MultiPoly(like.vars, res, K)
    dense = up.interpolate(K, xs, [K(y) for y in ys])
    return from_dense(dense, vars or (var,), var, K)


# -- rational function field --------------------------------------------------------------------


class RationalFunctionField(Field):
    """K(s) for a single variable s; elements are (num, den) dense lists
    with den monic and gcd(num, den) = 1."""

    def __init__(self, K: Field, name: str = "s"):
        self.base = K
        self.name = name
        self.characteristic = K.characteristic
        self.zero = ((), (K.one,))
        self.one = ((K.one,), (K.one,))

    def _norm(self, n: list, d: list):
        K = self.base
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            return self.zero
        g = up.gcd(K, n, d)
        if len(g) > 1:
            n, _ = up.divmod_(K, n, g)
            d, _ = up.divmod_(K, d, g)
        lc = K.inv(d[-1])
        return tuple(up.scale(K, n, lc)), tuple(up.scale(K, d, lc))

    def __call__(self, x):
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
            return x
        if isinstance(x, MultiPoly):
            return self._norm(to_dense(x, self.name), [self.base.one])
        c = self.base(x)
        return self.zero if self.base.is_zero(c) else ((c,), (self.base.one,))

    def frac(self, num: list, den: list):
        return self._norm(list(num), list(den))

    def is_zero(self, a) -> bool:
        return not a[0]

    def add(self, a, b):
        K = self.base
        if a[1] == b[1]:
            return self._norm(up.add(K, list(a[0]), list(b[0])), list(a[1]))
        n = up.add(K, up.mul(K, list(a[0]), list(b[1])), up.mul(K, list(b[0]), list(a[1])))
        return self._norm(n, up.mul(K, list(a[1]), list(b[1])))

    def neg(self, a):
        return (tuple(self.base.neg(c) for c in a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        K = self.base
        return self._norm(up.mul(K, list(a[0]), list(b[0])), up.mul(K, list(a[1]), list(b[1])))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self._norm(list(a[1]), list(a[0]))

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.base == self.base and other.name == self.name

    def __hash__(self):
        return hash(("RF", self.base, self.name))

    def __repr__(self):
        return f"{self.base!r}({self.name})"


def normalize_annihilator(R: MultiPoly, tvar: str = "t", zvar: str = "z0", squarefree: bool = True) -> MultiPoly:
    """Canonical form of an annihilating polynomial in (t, z0): primitive over
    Z, lex-leading coefficient (t > z0) positive, and with `squarefree` also
    squarefree in z0 with factors free of z0 or free of t removed."""
    if R.is_zero():
        raise ValueError("the zero polynomial has no canonical annihilator form")
    extra = [v for v in R.used_vars() if v not in (tvar, zvar)]
    if extra:
        raise ValueError(f"annihilator involves {extra}")
    R = R.reorder((tvar, zvar))
    if squarefree and R.degree(zvar) > 0:
        R = squarefree_part(R, zvar)
        if R.degree(tvar) > 0:
            cont = _content_gcd(list(R.coeffs_in(tvar).values()))
            if not cont.is_constant():
                R = exact_divide(R, cont)
    return R.clear_denominators()
