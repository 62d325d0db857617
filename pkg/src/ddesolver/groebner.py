"""Buchberger's algorithm and zero-dimensional quotient computations.

Internally a monomial is a single Python int.  The high part holds the
order key (for each block of a block order: the partial sums of its
exponents, total first) so that integer comparison is the monomial order;
the low part holds the exponents themselves in guarded fields so that
divisibility is one subtraction and one mask.  Both parts are linear in the
exponents, hence monomial multiplication is integer addition.

Polynomials are pairs (monos, coeffs) sorted by decreasing monomial.  Over
F_p coefficients are ints reduced lazily; other fields go through the Field
interface.
"""

from __future__ import annotations

import heapq
from itertools import islice
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .numeric import Field, PrimeField
from .poly import MonomialOrder, MultiPoly

log = logging.getLogger(__name__)

_W = 16  # bits per key field
_E = 16  # bits per exponent field, top bit is the guard
_FULL = True
# drive the homogeneous stage by the known Hilbert series
_HILBERT = True


class NotZeroDimensional(ArithmeticError):
    pass


class MonomialRing:
    """Packing of exponent vectors for a given universe and order."""

    def __init__(self, vars: Sequence[str], order: MonomialOrder):
        self.vars = tuple(vars)
        self.n = n = len(self.vars)
        if order.nvars != n:
            raise ValueError("order and universe sizes differ")
        self.order = order
        # key fields: list of index lists whose exponent sums form a field
        keys: list[list[int]] = []
        for b in order.blocks:
            if len(b) == 1:
                keys.append(list(b))
            else:
                for j in range(len(b), 1, -1):
                    keys.append(list(b[:j]))
        self.keys = keys
        self.low_bits = _E * n
        self.LOW = (1 << self.low_bits) - 1
        self.GUARD = sum(1 << (_E * i + _E - 1) for i in range(n))
        # packed value of each variable
        self.unit = []
        for i in range(n):
            v = 1 << (_E * (n - 1 - i))
            for f, idx in enumerate(keys):
                if i in idx:
                    v += 1 << (self.low_bits + _W * (len(keys) - 1 - f))
            self.unit.append(v)
        self._shifts = [_E * (n - 1 - i) for i in range(n)]
        self._mask = (1 << _E) - 1

    def encode(self, e: Sequence[int]) -> int:
        u = self.unit
        r = 0
        for i, x in enumerate(e):
            if x:
                r += x * u[i]
        return r

    def decode(self, m: int) -> tuple[int, ...]:
        mask = self._mask
        return tuple((m >> s) & mask for s in self._shifts)

    def divides(self, d: int, m: int) -> bool:
        G = self.GUARD
        return (((m & self.LOW) | G) - (d & self.LOW)) & G == G

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.decode(a), self.decode(b)
        return all(not (x and y) for x, y in zip(ea, eb))

    def degree(self, m: int) -> int:
        return sum(self.decode(m))


# -- conversions -------------------------------------------------------------------------


def _to_internal(R: MonomialRing, p: MultiPoly):
    items = sorted(((R.encode(m), c) for m, c in p.terms.items()), reverse=True)
    return [m for m, _ in items], [c for _, c in items]


def _to_multipoly(R: MonomialRing, K: Field, monos, coeffs) -> MultiPoly:
    return MultiPoly(R.vars, {R.decode(m): c for m, c in zip(monos, coeffs)}, K)


# -- reduction ----------------------------------------------------------------------------


class _Reducer:
    """Divisor lookup with memoization.  Among the divisors of a monomial
    the one with the fewest terms is used; the cache remembers the best
    divisor seen so far and how many basis elements have been checked."""

    def __init__(self, R: MonomialRing):
        self.R = R
        self.polys: list[tuple[int, int, list, list]] = []  # (lm, lm_low, monos, coeffs)
        self.cache: dict[int, tuple[int, int]] = {}  # mono -> (best index or -1, count checked)

    def add(self, monos, coeffs):
        self.polys.append((monos[0], monos[0] & self.R.LOW, monos, coeffs))

    def find(self, m: int) -> int:
        polys = self.polys
        n = len(polys)
        best, start = self.cache.get(m, (-1, 0))
        if start == n:
            return best
        G = self.R.GUARD
        ml = (m & self.R.LOW) | G
        blen = len(polys[best][2]) if best >= 0 else None
        for i in range(start, n):
            q = polys[i]
            if (ml - q[1]) & G == G and (blen is None or len(q[2]) < blen):
                best, blen = i, len(q[2])
        self.cache[m] = (best, n)
        return best


def _reduce_fp(p: int, monos, coeffs, red: _Reducer, full: bool = True):
    """Normal form over F_p of a polynomial against the reducer set.

    Coefficients of the accumulator are left unreduced until a term is
    popped; reducers are monic.
    """
    acc = dict(zip(monos, coeffs))
    heap = [-m for m in monos]
    heapq.heapify(heap)
    out_m: list[int] = []
    out_c: list[int] = []
    polys = red.polys
    find = red.find
    pop = heapq.heappop
    push = heapq.heappush
    get = acc.get
    while heap:
        m = -pop(heap)
        c = acc.pop(m, 0) % p
        if not c:
            continue
        i = find(m)
        if i < 0:
            out_m.append(m)
            out_c.append(c)
            if not full:
                # leading term irreducible: copy the rest untouched
                rest = sorted(acc.items(), reverse=True)
                for mm, cc in rest:
                    cc %= p
                    if cc:
                        out_m.append(mm)
                        out_c.append(cc)
                break
            continue
        lm, _, gm, gc = polys[i]
        shift = m - lm
        c = p - c
        for t, g in zip(islice(gm, 1, None), islice(gc, 1, None)):
            t += shift
            v = get(t)
            if v is None:
                acc[t] = c * g
                push(heap, -t)
            else:
                acc[t] = v + c * g
    return out_m, out_c


def _reduce_generic(K: Field, monos, coeffs, red: _Reducer, full: bool = True):
    acc = dict(zip(monos, coeffs))
    heap = [-m for m in monos]
    heapq.heapify(heap)
    out_m: list[int] = []
    out_c: list = []
    polys = red.polys
    while heap:
        m = -heapq.heappop(heap)
        c = acc.pop(m, None)
        if c is None or K.is_zero(c):
            continue
        i = red.find(m)
        if i < 0:
            out_m.append(m)
            out_c.append(c)
            if not full:
                for mm, cc in sorted(acc.items(), reverse=True):
                    if not K.is_zero(cc):
                        out_m.append(mm)
                        out_c.append(cc)
                break
            continue
        lm, _, gm, gc = polys[i]
        shift = m - lm
        for j in range(1, len(gm)):
            t = gm[j] + shift
            v = acc.get(t)
            if v is None:
                acc[t] = K.neg(K.mul(c, gc[j]))
                heapq.heappush(heap, -t)
            else:
                acc[t] = K.sub(v, K.mul(c, gc[j]))
    return out_m, out_c


def _make_monic(K: Field, monos, coeffs):
    if not coeffs:
        return monos, coeffs
    if isinstance(K, PrimeField):
        p = K.p
        inv = pow(coeffs[0], -1, p)
        return monos, [c * inv % p for c in coeffs]
    inv = K.inv(coeffs[0])
    return monos, [K.mul(c, inv) for c in coeffs]


# -- Buchberger -----------------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    generators: list[MultiPoly]
    order: MonomialOrder
    vars: tuple[str, ...]
    K: Field
    reduced: bool = True
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ring = MonomialRing(self.vars, self.order)
        self._internal = [_to_internal(self.ring, g) for g in self.generators]
        self._reducer = None

    def reducer(self) -> _Reducer:
        if self._reducer is None:
            r = _Reducer(self.ring)
            for m, c in self._internal:
                r.add(m, c)
            self._reducer = r
        return self._reducer

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [self.ring.decode(m[0]) for m, _ in self._internal]

    def is_one(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


class Budget:
    """Optional cap on the work done by one Gröbner computation."""

    def __init__(self, max_pairs: int | None = None):
        self.max_pairs = max_pairs


class BudgetExceeded(RuntimeError):
    pass


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder, strategy: str = "sugar", max_pairs: int | None = None, method: str = "auto") -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by `gens`.

    Pairs are pruned with the Gebauer-Möller criteria; `strategy` selects
    the pair with the smallest sugar degree ("sugar") or the smallest lcm
    ("normal").

    With ``method="homogenize"`` (the default for non-homogeneous input
    under an order with several blocks) a grevlex basis is computed first;
    its homogenization generates the homogenized ideal, whose basis under
    the block order extended by the homogenizing variable (last in the last
    block) dehomogenizes to a basis for `order`.  Elimination orders are
    far cheaper this way.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    if method not in ("auto", "direct", "homogenize"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "homogenize" if len(order.blocks) > 1 and not all(_is_homogeneous(g) for g in gens) else "direct"
    if method == "homogenize":
        return _via_homogenization(gens, order, strategy, max_pairs)
    return _buchberger(gens, order, strategy, max_pairs)


def _is_homogeneous(g: MultiPoly) -> bool:
    return len({sum(m) for m in g.terms}) <= 1


def _homogenize(g: MultiPoly, hvars) -> MultiPoly:
    d = g.degree()
    return MultiPoly(hvars, {m + (d - sum(m),): c for m, c in g.terms.items()}, g.K)


def _via_homogenization(gens, order, strategy, max_pairs) -> GroebnerBasis:
    vars, K = gens[0].vars, gens[0].K
    n = len(vars)
    G0 = _buchberger(gens, MonomialOrder.grevlex(n), strategy, max_pairs)
    if G0.is_one():
        return _unit_basis(vars, order, K)
    h = "_h"
    while h in vars:
        h += "_"
    hvars = tuple(vars) + (h,)
    blocks = [list(b) for b in order.blocks]
    blocks[-1].append(n)
    log.debug("homogenized route: grevlex basis of %d elements, %s", len(G0), G0.stats)
    # grevlex with the homogenizing variable last: the leading monomials of
    # the homogenized basis are those of G0, which fixes the Hilbert series
    target = hilbert_numerator([m + (0,) for m in G0.leading_monomials()], n + 1) if _HILBERT else None
    G1 = _buchberger([_homogenize(g, hvars) for g in G0.generators], MonomialOrder.block(blocks), strategy, max_pairs, hilbert=target, interreduce=False)
    log.debug("homogenized route: block basis of %d elements, %s", len(G1), G1.stats)
    # with h last in a grevlex block, dehomogenizing commutes with taking
    # leading monomials, so redundant elements are dropped beforehand
    kept: dict = {}
    for g, lm in zip(G1.generators, G1.leading_monomials()):
        kept.setdefault(lm[:-1], g)
    minimal = set(_minimalize(kept))
    deh = [g.subs({h: 1}).reorder(vars) for lm, g in kept.items() if lm in minimal]
    R = MonomialRing(vars, order)
    polys = [_to_internal(R, g) for g in deh if not g.is_zero()]
    final = _interreduce(R, K, polys)
    stats = {"pairs": G0.stats.get("pairs", 0) + G1.stats.get("pairs", 0), "added": G0.stats.get("added", 0) + G1.stats.get("added", 0)}
    polys = [_to_multipoly(R, K, m, [_norm(K, x) for x in c]) for m, c in final]
    return GroebnerBasis(polys, order, vars, K, True, stats)


# -- Hilbert series ----------------------------------------------------------------------------


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    r = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while r and r[-1] == 0:
        r.pop()
    return r


def _poly_mul(a, b):
    r = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def hilbert_numerator(monos, n: int) -> list[int]:
    """Numerator N(s) of the Hilbert series N(s)/(1-s)^n of the quotient by
    the monomial ideal generated by `monos` (exponent tuples of length n),
    as a dense coefficient list."""
    return _hnum(tuple(_minimalize(monos)), n)


def _hnum(gens, n):
    if not gens:
        return [1]
    if len(gens) == 1 or all(sum(1 for e in g if e) == 1 for g in gens):
        # pure powers (or a single monomial): a complete intersection
        r = [1]
        for g in gens:
            r = _poly_mul(r, [1] + [0] * (sum(g) - 1) + [-1])
        return r
    # pivot on the variable occurring in most generators, at its median exponent
    # the pivot power must lie outside the ideal: pick a variable from a
    # mixed generator and stay below its pure power, if any
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    v = max((i for i in range(n) if any(g[i] for g in mixed)), key=lambda i: counts[i])
    exps = sorted(g[v] for g in gens if g[v])
    e = exps[len(exps) // 2]
    pure = [g[v] for g in gens if g[v] and sum(1 for x in g if x) == 1]
    if pure:
        e = min(e, pure[0] - 1)
    piv = tuple(e if i == v else 0 for i in range(n))
    plus = _minimalize(list(gens) + [piv])
    colon = _minimalize([tuple(max(x - y, 0) for x, y in zip(g, piv)) for g in gens])
    a = _hnum(tuple(plus), n)
    b = _hnum(tuple(colon), n)
    return _poly_add(a, [0] * e + b)


def hilbert_function(num: list[int], n: int, d: int) -> int:
    """Dimension of the degree-d part of the quotient."""
    from math import comb

    return sum(c * comb(d - i + n - 1, n - 1) for i, c in enumerate(num) if i <= d)


def _interreduce(R: MonomialRing, K: Field, polys):
    """Reduced form of a Gröbner basis given in internal representation:
    drop elements with a redundant leading monomial, make monic, tail-reduce."""
    fp = isinstance(K, PrimeField)
    polys = sorted((_make_monic(K, m, c) for m, c in polys), key=lambda mc: mc[0][0])
    keep = []
    for m, c in polys:
        if any(R.divides(k[0][0], m[0]) for k in keep):
            continue
        keep.append((m, c))
    # an element's own leading monomial never divides its tail, so one
    # reducer over all kept elements serves every tail
    red = _Reducer(R)
    for mc in keep:
        red.add(*mc)
    final = []
    for m, c in keep:
        if fp:
            tm, tc = _reduce_fp(K.p, m[1:], c[1:], red)
        else:
            tm, tc = _reduce_generic(K, m[1:], c[1:], red)
        final.append(([m[0]] + tm, [c[0]] + tc))
    final.sort(key=lambda mc: mc[0][0])
    return final


def _buchberger(gens, order, strategy, max_pairs, hilbert: list[int] | None = None, interreduce: bool = True) -> GroebnerBasis:
    """Core loop.  `hilbert` is the Hilbert series numerator of the ideal
    (homogeneous input only): pairs are then processed by degree and the
    remaining pairs of a degree are skipped as soon as the leading terms
    found so far account for the whole degree."""
    vars, K = gens[0].vars, gens[0].K
    nv = len(vars)
    R = MonomialRing(vars, order)
    fp = isinstance(K, PrimeField)
    p = K.p if fp else 0

    def reduce(m, c, red, full=True):
        return _reduce_fp(p, m, c, red, full) if fp else _reduce_generic(K, m, c, red, full)

    store: list[tuple[list, list]] = []
    sugar: list[int] = []
    active: list[int] = []
    red = _Reducer(R)
    pairs: list = []  # heap of (key, lcm, i, j)
    count = 0
    npairs = 0

    def pair_key(lcm, i, j):
        if hilbert is not None:
            return (R.degree(lcm), lcm)
        if strategy == "normal":
            return (lcm,)
        s = max(sugar[i] + R.degree(lcm) - R.degree(store[i][0][0]), sugar[j] + R.degree(lcm) - R.degree(store[j][0][0]))
        return (s, lcm)

    def update(h: int):
        nonlocal pairs
        lm_h = store[h][0][0]
        # new pairs, Gebauer-Möller criterion M and F
        cand = []
        for g in active:
            l = R.lcm(lm_h, store[g][0][0])
            cand.append((l, g, R.coprime(lm_h, store[g][0][0])))
        cand.sort(key=lambda x: x[0])
        kept = []
        seen_lcms: list[int] = []
        for l, g, cop in cand:
            if any(R.divides(l2, l) for l2 in seen_lcms):
                continue
            seen_lcms.append(l)
            kept.append((l, g, cop))
        # criterion B on old pairs
        newpairs = []
        for item in pairs:
            _, l, i, j = item
            if R.divides(lm_h, l):
                li = R.lcm(store[i][0][0], lm_h)
                lj = R.lcm(store[j][0][0], lm_h)
                if li != l and lj != l:
                    continue
            newpairs.append(item)
        # product criterion: pairs with coprime leading monomials are
        # dropped, together with every pair sharing their lcm
        coprime_lcms = {l for l, g, cop in cand if cop}
        for l, g, cop in kept:
            if l in coprime_lcms:
                continue
            newpairs.append((pair_key(l, g, h), l, g, h))
        heapq.heapify(newpairs)
        pairs = newpairs
        active[:] = [g for g in active if not R.divides(lm_h, store[g][0][0])]
        active.append(h)
        red.add(*store[h])

    def add_poly(m, c, s):
        m, c = _make_monic(K, m, c)
        store.append((m, c))
        sugar.append(s)
        return len(store) - 1

    # inputs: interreduce by adding one at a time (sorted by leading monomial)
    inputs = []
    for g in gens:
        m, c = _to_internal(R, g)
        inputs.append((m, c, g.degree()))
    inputs.sort(key=lambda x: x[0][0])
    for m, c, s in inputs:
        m, c = reduce(m, c, red)
        if not m:
            continue
        if m[0] == 0:
            return _unit_basis(vars, order, K)
        update(add_poly(m, c, s))

    cur_deg = -1
    missing = 0
    skipped = 0
    while pairs:
        key, l, i, j = heapq.heappop(pairs)
        if hilbert is not None:
            if key[0] != cur_deg:
                cur_deg = key[0]
                lms = [R.decode(store[a][0][0]) for a in active]
                missing = hilbert_function(hilbert_numerator(lms, nv), nv, cur_deg) - hilbert_function(hilbert, nv, cur_deg)
            if missing <= 0:
                skipped += 1
                continue
        npairs += 1
        if npairs % 200 == 0:
            log.debug("buchberger: %d pairs done, %d queued, %d active, sugar %s", npairs, len(pairs), len(active), sugar[-1])
        if max_pairs is not None and npairs > max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} S-pairs")
        mi, ci = store[i]
        mj, cj = store[j]
        si, sj = l - mi[0], l - mj[0]
        s = max(sugar[i] + R.degree(si), sugar[j] + R.degree(sj))
        sm, sc = _spoly(K, fp, p, mi, ci, si, mj, cj, sj)
        if not sm:
            continue
        m, c = reduce(sm, sc, red, _FULL and hilbert is None)
        if not m:
            continue
        if m[0] == 0:
            return _unit_basis(vars, order, K)
        count += 1
        missing -= 1
        update(add_poly(m, c, s))

    final = _interreduce(R, K, [store[i] for i in active]) if interreduce else [store[i] for i in active]
    polys = [_to_multipoly(R, K, m, [_norm(K, x) for x in c]) for m, c in final]
    gb = GroebnerBasis(polys, order, vars, K, interreduce, {"pairs": npairs, "added": count, "skipped": skipped})
    return gb


def _norm(K, c):
    if isinstance(K, PrimeField):
        return c % K.p
    return c


def _spoly(K, fp, p, mi, ci, si, mj, cj, sj):
    """si*fi - sj*fj for monic fi, fj."""
    acc: dict = {}
    if fp:
        for m, c in zip(mi[1:], ci[1:]):
            acc[m + si] = c
        for m, c in zip(mj[1:], cj[1:]):
            t = m + sj
            acc[t] = (acc.get(t, 0) - c) % p
        items = sorted(((m, c) for m, c in acc.items() if c % p), reverse=True)
    else:
        for m, c in zip(mi[1:], ci[1:]):
            acc[m + si] = c
        for m, c in zip(mj[1:], cj[1:]):
            t = m + sj
            acc[t] = K.sub(acc[t], c) if t in acc else K.neg(c)
        items = sorted(((m, c) for m, c in acc.items() if not K.is_zero(c)), reverse=True)
    return [m for m, _ in items], [c for _, c in items]


def _unit_basis(vars, order, K) -> GroebnerBasis:
    return GroebnerBasis([MultiPoly.const(vars, 1, K)], order, vars, K, True, {})


# -- normal forms and elimination ------------------------------------------------------------------


def normal_form(p: MultiPoly, G: GroebnerBasis) -> MultiPoly:
    if p.vars != G.vars:
        p = p.reorder(G.vars)
    R = G.ring
    m, c = _to_internal(R, p)
    if isinstance(G.K, PrimeField):
        m, c = _reduce_fp(G.K.p, m, c, G.reducer())
        c = [x % G.K.p for x in c]
    else:
        m, c = _reduce_generic(G.K, m, c, G.reducer())
    return _to_multipoly(R, G.K, m, c)


def eliminate(G: GroebnerBasis, drop: Sequence[str]) -> list[MultiPoly]:
    idx = [G.vars.index(v) for v in drop]
    if idx and not G.order.eliminates(idx):
        raise ValueError(f"order {G.order} does not eliminate {list(drop)}")
    return [g for g in G.generators if g.free_of(drop)]


# -- zero-dimensional structure -------------------------------------------------------------------


@dataclass
class QuotientBasis:
    monomials: list[tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


def quotient_basis(G: GroebnerBasis, limit: int = 100000) -> QuotientBasis:
    """Standard monomials, in increasing order."""
    if G.is_one():
        return QuotientBasis([])
    n = len(G.vars)
    lms = G.leading_monomials()
    # zero-dimensional iff every variable has a pure power among the LMs
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            raise NotZeroDimensional(f"no pure power of {G.vars[i]} among leading monomials")

    def standard(e):
        return not any(all(a >= b for a, b in zip(e, m)) for m in lms)

    out = []
    seen = {(0,) * n}
    stack = [(0,) * n]
    while stack:
        e = stack.pop()
        if not standard(e):
            continue
        out.append(e)
        if len(out) > limit:
            raise NotZeroDimensional("quotient too large")
        for i in range(n):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f not in seen:
                seen.add(f)
                stack.append(f)
    R = G.ring
    out.sort(key=R.encode)
    return QuotientBasis(out)


@dataclass
class MultiplicationMatrix:
    var: str
    matrix: list[list]
    basis: QuotientBasis
    K: Field


def multiplication_matrix(var: str, G: GroebnerBasis, basis: QuotientBasis | None = None) -> MultiplicationMatrix:
    basis = basis or quotient_basis(G)
    pos = {e: i for i, e in enumerate(basis.monomials)}
    D = basis.dimension
    K = G.K
    i = G.vars.index(var)
    M = [[K.zero] * D for _ in range(D)]
    for j, e in enumerate(basis.monomials):
        f = e[:i] + (e[i] + 1,) + e[i + 1:]
        if f in pos:
            M[pos[f]][j] = K.one
            continue
        nf = normal_form(MultiPoly(G.vars, {f: K.one}, K), G)
        for m, c in nf.terms.items():
            M[pos[m]][j] = c
    return MultiplicationMatrix(var, M, basis, K)


def char_poly(M, K: Field | None = None) -> list:
    """det(T*I - M) as a dense coefficient list (lowest degree first),
    via reduction to Hessenberg form."""
    if isinstance(M, MultiplicationMatrix):
        K = M.K
        M = M.matrix
    n = len(M)
    A = [list(r) for r in M]
    # Hessenberg reduction by similarity transforms
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if not K.is_zero(A[i][m - 1])), None)
        if piv is None:
            continue
        if piv != m:
            A[piv], A[m] = A[m], A[piv]
            for r in A:
                r[piv], r[m] = r[m], r[piv]
        inv = K.inv(A[m][m - 1])
        for i in range(m + 1, n):
            u = K.mul(A[i][m - 1], inv)
            if K.is_zero(u):
                continue
            for j in range(n):
                A[i][j] = K.sub(A[i][j], K.mul(u, A[m][j]))
            for r in A:
                r[m] = K.add(r[m], K.mul(u, r[i]))
    # characteristic polynomial of the Hessenberg matrix
    from . import univariate as up

    polys = [[K.one]]
    for m in range(1, n + 1):
        pm = up.mul(K, [K.neg(A[m - 1][m - 1]), K.one], polys[m - 1])
        t = K.one
        for i in range(1, m):
            t = K.mul(t, A[m - i][m - i - 1])
            coef = K.mul(t, A[m - i - 1][m - 1])
            pm = up.sub(K, pm, up.scale(K, polys[m - i - 1], coef))
        polys.append(pm)
    return polys[n]


def minimal_polynomial(G: GroebnerBasis, var: str, max_degree: int = 10000) -> list:
    """Monic generator of the ideal intersected with K[var], as a dense list.

    Successive normal forms of var^i are tested for a linear dependency.
    """
    K = G.K
    if G.is_one():
        return [K.one]
    R = G.ring
    i = G.vars.index(var)
    unit = R.unit[i]
    fp = isinstance(K, PrimeField)
    p = K.p if fp else 0
    red = G.reducer()
    # echelon rows: pivot mono -> (row dict, combo dict over powers)
    pivots: dict[int, tuple[dict, list]] = {}
    cur_m, cur_c = [0], [K.one]
    nf_m, nf_c = (_reduce_fp(p, cur_m, cur_c, red) if fp else _reduce_generic(K, cur_m, cur_c, red))
    for deg in range(max_degree + 1):
        if deg > 0:
            sm = [m + unit for m in nf_m]
            nf_m, nf_c = _reduce_fp(p, sm, nf_c, red) if fp else _reduce_generic(K, sm, nf_c, red)
            if fp:
                nf_c = [c % p for c in nf_c]
        row = dict(zip(nf_m, nf_c))
        combo = [K.zero] * deg + [K.one]
        # eliminate against existing pivots, in decreasing pivot order
        while row:
            lead = max(row)
            if lead not in pivots:
                break
            prow, pcombo = pivots[lead]
            f = row[lead]
            for m, c in prow.items():
                v = K.sub(row.get(m, K.zero), K.mul(f, c))
                if K.is_zero(v):
                    row.pop(m, None)
                else:
                    row[m] = v
            for d2, c in enumerate(pcombo):
                if not K.is_zero(c):
                    combo[d2] = K.sub(combo[d2], K.mul(f, c))
        if not row:
            while combo and K.is_zero(combo[-1]):
                combo.pop()
            inv = K.inv(combo[-1])
            return [K.mul(c, inv) for c in combo]
        lead = max(row)
        inv = K.inv(row[lead])
        pivots[lead] = ({m: K.mul(c, inv) for m, c in row.items()}, [K.mul(c, inv) for c in combo])
    raise NotZeroDimensional(f"no polynomial in {var} of degree <= {max_degree}")


def change_order_to_lex(G: GroebnerBasis, target: Sequence[str] | None = None) -> GroebnerBasis:
    """FGLM: reduced lex Gröbner basis of a zero-dimensional ideal.

    `target` is the lex variable order (default: the universe order); the
    output lives in that universe.
    """
    K = G.K
    target = tuple(target or G.vars)
    if sorted(target) != sorted(G.vars):
        raise ValueError("target must be a permutation of the variables")
    lex = MonomialOrder.lex(len(target))
    if G.is_one():
        return _unit_basis(target, lex, K)
    quotient_basis(G)  # raises when not zero-dimensional
    Rsrc = G.ring
    Rt = MonomialRing(target, lex)
    perm = [G.vars.index(v) for v in target]
    fp = isinstance(K, PrimeField)
    p = K.p if fp else 0
    red = G.reducer()

    def nf(m, c):
        if fp:
            m, c = _reduce_fp(p, m, c, red)
            return m, [x % p for x in c]
        return _reduce_generic(K, m, c, red)

    def src_exp(et):
        e = [0] * len(target)
        for k, i in enumerate(perm):
            e[i] = et[k]
        return tuple(e)

    nforms: dict[tuple, tuple[list, list]] = {}
    staircase: list[tuple] = []
    pivots: dict[int, tuple[dict, dict]] = {}
    new_gb: list[MultiPoly] = []
    new_lms: list[tuple] = []
    cand = [(Rt.encode((0,) * len(target)), (0,) * len(target))]
    seen = set()
    n = len(target)
    while cand:
        cand.sort()
        key, et = cand.pop(0)
        if et in seen:
            continue
        seen.add(et)
        if any(all(a >= b for a, b in zip(et, lm)) for lm in new_lms):
            continue
        # normal form via a predecessor in the staircase
        pred = None
        for k in range(n):
            if et[k]:
                q = et[:k] + (et[k] - 1,) + et[k + 1:]
                if q in nforms:
                    pred = (q, k)
                    break
        if pred is None:
            v = nf([Rsrc.encode(src_exp(et))], [K.one])
        else:
            q, k = pred
            qm, qc = nforms[q]
            v = nf([m + Rsrc.unit[perm[k]] for m in qm], qc)
        nforms[et] = v
        row = dict(zip(*v))
        combo = {et: K.one}
        while row:
            lead = max(row)
            if lead not in pivots:
                break
            prow, pcombo = pivots[lead]
            f = row[lead]
            for m, c in prow.items():
                w = K.sub(row.get(m, K.zero), K.mul(f, c))
                if K.is_zero(w):
                    row.pop(m, None)
                else:
                    row[m] = w
            for m, c in pcombo.items():
                w = K.sub(combo.get(m, K.zero), K.mul(f, c))
                if K.is_zero(w):
                    combo.pop(m, None)
                else:
                    combo[m] = w
        if not row:
            new_gb.append(MultiPoly(target, combo, K))
            new_lms.append(et)
            continue
        lead = max(row)
        inv = K.inv(row[lead])
        pivots[lead] = ({m: K.mul(c, inv) for m, c in row.items()}, {m: K.mul(c, inv) for m, c in combo.items()})
        staircase.append(et)
        for k in range(n):
            f = et[:k] + (et[k] + 1,) + et[k + 1:]
            if f not in seen:
                cand.append((Rt.encode(f), f))
    new_gb.sort(key=lambda g: Rt.encode(g.leading_term(lex)[0]))
    return GroebnerBasis([g.monic(lex) for g in new_gb], lex, target, K, True)
