"""Annihilating polynomials R(t, z0) with R(t, F(t,a)) = 0 for a DDE.

Four algorithms share one multi-modular evaluation-interpolation driver:
each per-point kernel works over F_p with one of t, z0 specialized and
returns a univariate image in the other variable; the driver interpolates,
combines primes by CRT and lifts to Q by rational reconstruction.
"""

from __future__ import annotations

import json
import logging
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import univariate as up
from .groebner import (
    BudgetExceeded,
    NotZeroDimensional,
    buchberger,
    char_poly,
    eliminate,
    minimal_polynomial,
    multiplication_matrix,
    normal_form,
    quotient_basis,
)
from .hermite_pade import Bidegree, GuessProblem, guess_algebraic, prove_guess
from .numeric import GF, QQ, ModularImage, PrimeField, crt_pair, prime_stream, rational_reconstruct
from .parser import DdeSpec
from .poly import MonomialOrder, MultiPoly, discriminant, normalize_annihilator
from .series import check_annihilation, expand_specialized
from .systems import (
    AssumptionViolated,
    build_duplicated_system,
    build_kernel_system,
    det_bareiss,
    hermite_matrix,
)

log = logging.getLogger(__name__)

ALGORITHMS = ("duplication", "elimination", "geometry", "hybrid")


class Unsupported(ValueError):
    """The requested algorithm does not apply to this input."""


class BadPoint(ArithmeticError):
    """A specialization is unlucky (dimension jump, degree drop, ...)."""


@dataclass
class SolveOptions:
    algorithm: str = "elimination"
    eval_variable: str = "t"
    prime_bits: int = 31
    seed: int = 0
    max_primes: int = 12
    max_points: int = 400
    series_margin: int = 0
    fiber: int | None = None
    extra_saturation: MultiPoly | None = None
    certify: bool = True
    max_bound_retries: int = 3
    threads: int = 1
    trace: object = None  # writable text stream for JSON-lines records

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.eval_variable not in ("t", "z0"):
            raise ValueError("eval_variable must be 't' or 'z0'")
        if not 16 <= self.prime_bits <= 62:
            raise ValueError("prime_bits must lie in [16, 62]")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass
class ModularPoint:
    prime: int
    value: int
    status: str = "good"
    reason: str = ""
    seconds: float = 0.0


@dataclass
class AnnihilatorResult:
    R: MultiPoly
    bidegree: Bidegree
    certified_order: int | None
    algorithm: str
    primes: list[int] = field(default_factory=list)
    points: list[ModularPoint] = field(default_factory=list)

    def as_dict(self) -> dict:
        from .parser import print_poly

        return {
            "R": print_poly(self.R),
            "bidegree": [self.bidegree.b_t, self.bidegree.b_z0],
            "certified_order": self.certified_order,
            "algorithm": self.algorithm,
            "primes": self.primes,
        }


def _emit(opts: SolveOptions, record: dict):
    if opts.trace is not None:
        opts.trace.write(json.dumps(record, sort_keys=True) + "\n")
        opts.trace.flush() if hasattr(opts.trace, "flush") else None


def _as_spec(problem, k=None, a=None) -> DdeSpec:
    if isinstance(problem, DdeSpec):
        return problem
    if not isinstance(problem, MultiPoly):
        raise TypeError("expected a DdeSpec or the polynomial P")
    if k is None or a is None:
        raise ValueError("k and a are required when P is given directly")
    return DdeSpec(k=k, a=Fraction(a), vars=problem.vars, P=problem)


def _fp_value(K: PrimeField, x) -> int:
    return K(Fraction(x))


# -- per-point kernels ---------------------------------------------------------------------


class _Kernel:
    """Base for per-point computations: specializes `ev` (t or z0) and
    returns the monic squarefree eliminant in the other variable."""

    def __init__(self, dde: DdeSpec, ev: str, opts: SolveOptions):
        self.dde = dde
        self.k = dde.k
        self.a = Fraction(dde.a)
        self.tname, self.zname = dde.t, dde.zvars[0]
        self.ev = self.tname if ev == "t" else self.zname
        self.free = self.zname if ev == "t" else self.tname
        self.fiber = opts.fiber or len(dde.zvars)
        self.extra = opts.extra_saturation
        self.seed = opts.seed

    def specialize(self, polys: Sequence[MultiPoly], vars: Sequence[str], K: PrimeField, value: int) -> list[MultiPoly]:
        V = tuple(v for v in vars if v != self.ev)
        return [g.change_field(K).subs({self.ev: value}).reorder(V) for g in polys]

    def extra_equation(self, V: Sequence[str], K: PrimeField, value: int, mvar: str):
        """m'' * Q - 1 for the optional extra saturation Q(t, z0)."""
        if self.extra is None:
            return []
        Q = self.extra.change_field(K)
        Q = MultiPoly(Q.vars, Q.terms, K)
        if self.ev in Q.vars:
            Q = Q.subs({self.ev: value})
        Q = Q.reorder(tuple(V))
        if Q.is_zero():
            raise BadPoint("extra saturation vanishes")
        return [MultiPoly.var(V, mvar, K) * Q - 1]

    def finish(self, K: PrimeField, dense: list) -> list:
        dense = up.trim(list(dense))
        if not dense:
            raise AssumptionViolated("the eliminant is identically zero")
        return up.monic(K, up.squarefree_part(K, dense)) if len(dense) > 1 else [K.one]


class EliminationKernel(_Kernel):
    """Kernel system, projection away from {m, x}, branching on u-degrees
    with Hermite distinct-root conditions, final elimination to one
    variable."""

    def __call__(self, p: int, value: int) -> list:
        K = GF(p)
        S = build_kernel_system(self.dde.P, self.k, self.a)
        V = tuple(v for v in S.vars if v != self.ev)
        eqs = self.specialize(S.equations, S.vars, K, value)
        mvar, xvar, uvar = V[0], V[1], V[2]
        n = len(V)
        G = buchberger(eqs, MonomialOrder.block([[0, 1], list(range(2, n))]))
        if G.is_one():
            return [K.one]
        self.closure_diagnostic(G, xvar, mvar)
        W = V[2:]
        E = [g.reorder(W) for g in eliminate(G, [mvar, xvar])]
        rng = random.Random(f"{self.seed}:{p}:{value}")
        result = [K.one]
        for beqs, bineqs in self.branches(E, W, uvar, K, rng):
            result = up.mul(K, result, self.final(beqs, bineqs, W, K, value))
        return self.finish(K, result)

    @staticmethod
    def closure_diagnostic(G, xvar, mvar):
        # the projection is closed when some element is monic in x up to a constant
        for g in G:
            if g.free_of([mvar]) and g.degree(xvar) > 0 and g.lc_in(xvar).is_constant():
                return True
        log.debug("elimination: no element with constant leading coefficient in %s; using the closure", xvar)
        return False

    def branches(self, E, W, uvar, K, rng, max_branches: int = 64):
        order = MonomialOrder.block([[0], list(range(1, len(W)))])
        ell = self.fiber
        work = [(list(E), [])]
        out = []
        while work:
            if len(out) + len(work) > max_branches:
                raise BadPoint("too many branches")
            eqs, ineqs = work.pop()
            G = buchberger(eqs, order)
            while not G.is_one():
                low = [g for g in G if 0 < g.degree(uvar) < ell]
                if not low:
                    break
                # fewer than ell roots in u unless these vanish identically
                coeffs = [c for g in low for c in g.coeffs_in(uvar).values() if not c.is_zero()]
                G = staged_basis(list(G) + coeffs, order, K, rng)
            if G.is_one():
                continue
            high = [g for g in G if g.degree(uvar) >= ell]
            if not high:
                out.append((list(G), ineqs))
                continue
            g = high[0]
            lc = g.lc_in(uvar)
            cond = hermite_condition(g, uvar, ell, K, rng, G)
            if not cond.is_zero():
                out.append((list(G), ineqs + [lc, cond]))
            if not lc.is_constant():
                work.append((list(G) + [lc], ineqs))
        return out

    def final(self, eqs, ineqs, W, K, value) -> list:
        names = [f"_m{i}" for i in range(len(ineqs) + 1)]
        V2 = tuple(names) + tuple(W)
        system = [e.reorder(V2) for e in eqs]
        for mv, q in zip(names, ineqs):
            if q.is_constant():
                continue
            system.append(MultiPoly.var(V2, mv, K) * q.reorder(V2) - 1)
        system += self.extra_equation(V2, K, value, names[-1])
        fi = V2.index(self.free)
        drop = [i for i in range(len(V2)) if i != fi]
        G = buchberger(system, MonomialOrder.block([drop, [fi]]))
        if G.is_one():
            return [K.one]
        el = [g for g in G if g.free_of([v for v in V2 if v != self.free])]
        if not el:
            raise AssumptionViolated(f"no nonzero polynomial in {self.free} alone (the finiteness assumption fails)")
        dense = [K.zero] * (el[0].degree(self.free) + 1)
        for m, c in el[0].terms.items():
            dense[m[fi]] = c
        return dense


def staged_basis(eqs, order, K: PrimeField, rng: random.Random, tries: int = 2):
    """Basis of the ideal of `eqs`, built up from the smallest generators.

    Generators are grouped by size.  Normal forms are linear, so a group
    is tested with one random combination of its members: when that
    reduces to zero the whole group lies in the ideal except with
    probability 1/p.  A nonzero remainder is added and the test repeated;
    after `tries` remainders the group is added in full.
    """
    eqs = sorted((e for e in eqs if not e.is_zero()), key=lambda e: len(e.terms))
    groups: list[list[MultiPoly]] = []
    for e in eqs:
        if groups and len(e.terms) <= 4 * len(groups[-1][0].terms):
            groups[-1].append(e)
        else:
            groups.append([e])
    p = K.p
    G = buchberger(groups[0], order)
    for grp in groups[1:]:
        if G.is_one():
            break
        for _ in range(tries):
            acc: dict = {}
            for c in grp:
                lam = rng.randrange(1, p)
                for m, x in c.terms.items():
                    acc[m] = (acc.get(m, 0) + lam * x) % p
            r = normal_form(MultiPoly(grp[0].vars, {m: x for m, x in acc.items() if x}, K), G)
            if r.is_zero():
                break
            G = buchberger(list(G) + [r], order)
        else:
            G = buchberger(list(G) + grp, order)
    return G


def hermite_condition(g: MultiPoly, var: str, ell: int, K: PrimeField, rng: random.Random, G=None) -> MultiPoly:
    """Random combination of the ell x ell minors of the cleared Hermite
    matrix of g: det(A H B) for random A (ell x d) and B (d x ell), which
    by Cauchy-Binet combines all minors.  Reduced modulo G when given."""
    h = hermite_matrix(g, var)
    d = h.degree
    if ell > d:
        return g._new({})
    sums = h.sums
    if G is not None:
        from .groebner import normal_form

        sums = [normal_form(s, G) for s in sums]
    p = K.p
    A = [[rng.randrange(1, p) for _ in range(d)] for _ in range(ell)]
    B = [[rng.randrange(1, p) for _ in range(ell)] for _ in range(d)]
    C = []
    for r in range(ell):
        row = []
        for c in range(ell):
            w = [0] * (2 * d - 1)
            for i in range(d):
                for j in range(d):
                    w[i + j] = (w[i + j] + A[r][i] * B[j][c]) % p
            e = g._new({})
            for m_, wm in enumerate(w):
                if wm:
                    e = e + sums[m_] * wm
            row.append(e)
        C.append(row)
    D = det_bareiss(C) if ell > 1 else C[0][0]
    if G is not None and not D.is_zero():
        from .groebner import normal_form

        D = normal_form(D, G)
    return D


class DuplicationKernel(_Kernel):
    """Zero-dimensional duplicated system; eliminant = minimal polynomial
    of the free variable in the quotient."""

    def __call__(self, p: int, value: int) -> list:
        K = GF(p)
        S = build_duplicated_system(self.dde.P, self.k, self.a)
        V = tuple(v for v in S.vars if v != self.ev)
        eqs = self.specialize(S.equations, S.vars, K, value)
        if self.extra is not None:
            V = ("_m2",) + V
            eqs = [e.reorder(V) for e in eqs] + self.extra_equation(V, K, value, "_m2")
        G = buchberger(eqs, MonomialOrder.grevlex(len(V)))
        if G.is_one():
            return [K.one]
        try:
            quotient_basis(G)
        except NotZeroDimensional as e:
            raise BadPoint(f"positive-dimensional specialization: {e}") from None
        return self.finish(K, minimal_polynomial(G, self.free))


class GeometryKernel(_Kernel):
    """k = 2: characteristic polynomial of z1 in the kernel system, with the
    remaining parameter handled by inner evaluation-interpolation; image =
    numerator of its discriminant."""

    def __init__(self, dde, ev, opts):
        super().__init__(dde, ev, opts)
        if dde.k != 2:
            raise Unsupported("the geometry algorithm is implemented for k = 2 only")
        self.mult_var = dde.zvars[1]

    def charpoly_at(self, eqs, V, K, phi):
        W = tuple(v for v in V if v != self.free)
        sys = [e.subs({self.free: phi}).reorder(W) for e in eqs]
        G = buchberger(sys, MonomialOrder.grevlex(len(W)))
        try:
            B = quotient_basis(G)
        except NotZeroDimensional as e:
            raise BadPoint(f"positive-dimensional inner specialization: {e}") from None
        if B.dimension == 0:
            return [K.one]
        return char_poly(multiplication_matrix(self.mult_var, G, B))

    def __call__(self, p: int, value: int) -> list:
        K = GF(p)
        S = build_kernel_system(self.dde.P, self.k, self.a)
        V = tuple(v for v in S.vars if v != self.ev)
        eqs = self.specialize(S.equations, S.vars, K, value)
        if self.extra is not None:
            V = ("_m2",) + V
            eqs = [e.reorder(V) for e in eqs] + self.extra_equation(V, K, value, "_m2")
        rng = random.Random(f"{self.seed}:{p}:{value}:inner")
        chi = interpolate_family(K, lambda phi: self.charpoly_at(eqs, V, K, phi), rng)
        if len(chi) <= 2:
            return [K.one]
        # chi as a polynomial in (T, free)
        T = "_T"
        terms = {}
        for i, ci in enumerate(chi):
            for d, c in enumerate(ci):
                if c:
                    terms[(i, d)] = c
        X = MultiPoly((T, self.free), terms, K)
        disc = discriminant(X, T)
        dense = [K.zero] * (disc.degree(self.free) + 1)
        for m, c in disc.terms.items():
            dense[m[1]] = c
        return self.finish(K, dense)


def interpolate_family(K: PrimeField, f: Callable[[int], list], rng: random.Random, max_points: int = 200, exclude=(0,)):
    """Lift a family of univariate polynomials phi -> f(phi) (dense, monic
    in their main variable, coefficients rational in phi) to polynomial
    coefficients in phi after clearing denominators.

    Points are added until two consecutive rational reconstructions agree.
    Returns the list over the main variable of dense lists in phi.
    """
    p = K.p
    xs: list[int] = []
    ys: list[list] = []
    prev = None
    degs: Counter = Counter()
    while len(xs) < max_points:
        phi = rng.randrange(1, p)
        if phi in xs or phi in exclude:
            continue
        try:
            y = up.trim(list(f(phi)))
        except BadPoint:
            continue
        if not y:
            raise AssumptionViolated("zero polynomial at an inner point")
        y = up.monic(K, y)
        degs[len(y)] += 1
        xs.append(phi)
        ys.append(y)
        if len(xs) < 3:
            continue
        size = degs.most_common(1)[0][0]
        good = [(x, v) for x, v in zip(xs, ys) if len(v) == size]
        cur = _rfr_all(K, [x for x, _ in good], [v for _, v in good])
        if cur is not None and cur == prev:
            return _clear_rational(K, cur)
        prev = cur
    raise BudgetExceeded("inner interpolation did not stabilize")


def _rfr_all(K: PrimeField, xs, ys):
    """Rational function reconstruction of each coefficient (balanced degree
    bounds).  None if any fails."""
    n = len(xs)
    m = up.from_roots(K, xs)
    num_deg = (n - 1) // 2
    out = []
    for i in range(len(ys[0])):
        vals = [y[i] for y in ys]
        f = up.interpolate(K, xs, vals)
        r = up.rational_reconstruct(K, f, m, num_deg)
        if r is None:
            return None
        out.append((tuple(up.trim(r[0])), tuple(r[1])))
    return tuple(out)


def _clear_rational(K: PrimeField, fracs) -> list:
    L = [K.one]
    for _, d in fracs:
        L = up.mul(K, L, up.divmod_(K, list(d), up.gcd(K, L, list(d)))[0])
    L = up.monic(K, L)
    out = []
    for n, d in fracs:
        q, r = up.divmod_(K, L, list(d))
        out.append(up.trim(up.mul(K, list(n), q)))
    return out


# -- multi-modular driver --------------------------------------------------------------------


def eval_interp_drive(
    kernel: Callable[[int, int], list],
    variable: str,
    opts: SolveOptions,
    names: tuple[str, str] = ("t", "z0"),
    bound: int | None = None,
    images: str = "monic",
    certify: Callable[[MultiPoly], bool] | None = None,
    exclude: Sequence = (0,),
    primes: Sequence[int] | None = None,
    points_log: list | None = None,
) -> MultiPoly:
    """Lift per-point univariate images to R(t, z0) over Q.

    `variable` is the specialized variable (t or z0); kernel(p, value)
    returns the image in the other variable as a dense list over F_p.
    With images="monic" images are defined up to a scalar: they are made
    monic and their coefficients reconstructed as rational functions of
    the evaluation variable.  With images="exact" the kernel returns true
    specializations and plain interpolation is used.  `bound` is a degree
    bound in the evaluation variable; without it points are added until
    the reconstruction stabilizes.  Primes are added until two consecutive
    reconstructions over Q agree (and `certify` accepts the result).
    """
    if variable not in ("t", "z0"):
        raise ValueError("variable must be 't' or 'z0'")
    if images not in ("monic", "exact"):
        raise ValueError("images must be 'monic' or 'exact'")
    tname, zname = names
    ev_idx = 0 if variable == "t" else 1
    rng = random.Random(opts.seed)
    stream = iter(primes) if primes is not None else prime_stream(opts.prime_bits, opts.seed)
    npoints = None if bound is None else (2 * bound + 2 if images == "monic" else bound + 1)
    acc: dict | None = None
    modulus = 1
    shape = None
    prev = None
    used: list[int] = []
    total_points = 0
    # kernels run in worker processes when threads > 1; the results are
    # consumed in draw order, so the output does not depend on the width
    pool = ProcessPoolExecutor(opts.threads) if opts.threads > 1 else None
    try:
        for _ in range(opts.max_primes):
            try:
                p = next(stream)
            except StopIteration:
                break
            K = GF(p)
            excl = {K(Fraction(e)) for e in exclude}
            t0 = time.time()
            try:
                image, n_used, pts = _lift_one_prime(kernel, K, rng, npoints, images, excl, opts.max_points - total_points, pool, opts.threads)
            except BadPoint as e:
                _emit(opts, {"event": "prime", "prime": p, "status": "bad", "reason": str(e)})
                continue
            total_points += len(pts)
            if points_log is not None:
                points_log.extend(pts)
            if npoints is None:
                npoints = n_used
            # image: {(deg_ev, deg_free): coeff}
            sh = tuple(sorted(image))
            if shape is not None and sh != shape:
                if len(sh) > len(shape):
                    log.info("prime %d: larger support, discarding earlier primes", p)
                    acc, modulus, prev, used = None, 1, None, []
                else:
                    _emit(opts, {"event": "prime", "prime": p, "status": "bad", "reason": "support mismatch"})
                    continue
            shape = sh
            used.append(p)
            if acc is None:
                acc = dict(image)
                modulus = p
            else:
                for key in acc:
                    acc[key], _ = crt_pair(acc[key], modulus, image[key], p)
                modulus *= p
            _emit(opts, {"event": "prime", "prime": p, "status": "good", "points": len(pts), "seconds": round(time.time() - t0, 3)})
            cand = _reconstruct(acc, modulus, images)
            if cand is None:
                prev = None
                continue
            terms = {}
            for (dev, dfree), c in cand.items():
                terms[(dev, dfree) if ev_idx == 0 else (dfree, dev)] = c
            R = MultiPoly((tname, zname), terms, QQ)
            if prev is not None and R == prev:
                if certify is None or certify(R):
                    return R
            prev = R
        raise BudgetExceeded(f"no stable reconstruction after {len(used)} primes")
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


def _reconstruct(acc: dict, modulus: int, images: str):
    out = {}
    for key, r in acc.items():
        if images == "exact":
            v = r if r <= modulus // 2 else r - modulus
            out[key] = Fraction(v)
            continue
        q = rational_reconstruct(ModularImage(r, modulus))
        if q is None:
            return None
        if q:
            out[key] = q
    return out


def _timed(kernel, p, v):
    t0 = time.time()
    try:
        return kernel(p, v), time.time() - t0
    except BadPoint as e:
        return e, time.time() - t0


def _evaluations(kernel, p, rng, excl, pool, width):
    """(value, image or BadPoint, seconds) for fresh random points, in draw
    order.  With a pool, `width` points are evaluated ahead concurrently;
    the sequence consumed is the same as without one."""
    seen = set(excl)

    def draw():
        while True:
            v = rng.randrange(1, p)
            if v not in seen:
                seen.add(v)
                return v

    if pool is None:
        while True:
            v = draw()
            yield (v, *_timed(kernel, p, v))
    pending = []
    while True:
        while len(pending) < width:
            v = draw()
            pending.append((v, pool.submit(_timed, kernel, p, v)))
        v, fut = pending.pop(0)
        yield (v, *fut.result())


def _lift_one_prime(kernel, K: PrimeField, rng, npoints, images, excl, budget, pool=None, width=1):
    p = K.p
    xs: list[int] = []
    ys: list[list] = []
    pts: list[ModularPoint] = []
    degs: Counter = Counter()
    prev = None
    target = None
    evals = _evaluations(kernel, p, rng, excl, pool, width)
    while True:
        if len(pts) >= max(budget, 1):
            raise BudgetExceeded("evaluation point budget exhausted")
        v, y, secs = next(evals)
        if isinstance(y, BadPoint):
            pts.append(ModularPoint(p, v, "bad", str(y), secs))
            continue
        y = up.trim(list(y))
        if not y:
            raise AssumptionViolated("the eliminant is identically zero")
        if images == "monic":
            y = up.monic(K, y)
        degs[len(y)] += 1
        pts.append(ModularPoint(p, v, "good", "", secs))
        xs.append(v)
        ys.append(y)
        if len(xs) < 3:
            continue
        if target is None:
            # majority over the first three samples
            size, count = degs.most_common(1)[0]
            if count < 2:
                size = max(degs)
            target = size
        good = [(x, w) for x, w in zip(xs, ys) if len(w) == target]
        for x, w in zip(xs, ys):
            if len(w) != target and not any(q.value == x and q.status == "bad" for q in pts):
                for q in pts:
                    if q.value == x:
                        q.status, q.reason = "bad", "degree drop" if len(w) < target else "degree jump"
        if 2 * len(good) < len(xs) - 2 and len(xs) > 6:
            raise BadPoint("too many unlucky points")
        gx = [x for x, _ in good]
        gy = [w for _, w in good]
        if npoints is not None:
            if len(gx) < npoints:
                continue
            gx, gy = gx[:npoints], gy[:npoints]
            cur = _fit(K, gx, gy, images)
            if cur is None:
                raise BadPoint("reconstruction failed at the given bound")
            return _to_bivariate(K, cur, images), npoints, pts
        if len(gx) < 2:
            continue
        cur = _fit(K, gx, gy, images)
        if cur is not None and cur == prev:
            return _to_bivariate(K, cur, images), len(gx), pts
        prev = cur


def _fit(K, xs, ys, images):
    if images == "exact":
        return tuple(tuple(up.interpolate(K, xs, [y[i] for y in ys])) for i in range(len(ys[0])))
    return _rfr_all(K, xs, ys)


def _to_bivariate(K, cur, images) -> dict:
    if images == "exact":
        cols = [list(c) for c in cur]
    else:
        cols = _clear_rational(K, cur)
    out = {}
    for dfree, col in enumerate(cols):
        for dev, c in enumerate(col):
            if c:
                out[(dev, dfree)] = c
    return out


# -- algorithms ----------------------------------------------------------------------------------


def _series_for(dde: DdeSpec, n_terms: int):
    return expand_specialized(dde, n_terms - 1, 0)


def _certifier(dde: DdeSpec, opts: SolveOptions, state: dict):
    if dde.rhs is None or not opts.certify:
        return None
    tname, zname = dde.t, dde.zvars[0]

    def certify(R: MultiPoly) -> bool:
        Rn = normalize_annihilator(R, tname, zname)
        bt, bz = Rn.degree(tname), Rn.degree(zname)
        need = max(2 * bt * bz, 40) + 1 + opts.series_margin
        s = state.get("series")
        if s is None or len(s.coeffs) < need:
            s = _series_for(dde, need)
            state["series"] = s
        order = check_annihilation(Rn, type(s)(s.coeffs[:need], s.K), tname, zname)
        state["order"] = order
        return order >= need

    return certify


def _solve_with(kernel_cls, problem, k, a, opts: SolveOptions, name: str) -> AnnihilatorResult:
    dde = _as_spec(problem, k, a)
    opts = opts or SolveOptions(algorithm=name)
    kernel = kernel_cls(dde, opts.eval_variable, opts)
    state: dict = {}
    pts: list[ModularPoint] = []
    t0 = time.time()
    R = eval_interp_drive(
        kernel,
        opts.eval_variable,
        opts,
        names=(dde.t, dde.zvars[0]),
        certify=_certifier(dde, opts, state),
        exclude=(0, dde.a),
        points_log=pts,
    )
    for q in pts:
        _emit(opts, {"event": "point", "prime": q.prime, "value": q.value, "status": q.status, "reason": q.reason, "seconds": round(q.seconds, 3)})
    R = normalize_annihilator(R, dde.t, dde.zvars[0])
    res = AnnihilatorResult(R, Bidegree(R.degree(dde.t), R.degree(dde.zvars[0])), state.get("order"), name, sorted({q.prime for q in pts}), pts)
    _emit(opts, {"event": "result", **res.as_dict(), "seconds": round(time.time() - t0, 3)})
    return res


def solve_duplication(problem, k=None, a=None, opts: SolveOptions | None = None) -> AnnihilatorResult:
    """Eliminant of the duplicated system (k copies of the kernel equations
    with distinct u's)."""
    return _solve_with(DuplicationKernel, problem, k, a, opts, "duplication")


def solve_elimination(problem, k=None, a=None, opts: SolveOptions | None = None) -> AnnihilatorResult:
    """Projection of the kernel system, restricted to the parameters whose
    u-fiber has at least `fiber` points."""
    return _solve_with(EliminationKernel, problem, k, a, opts, "elimination")


def solve_geometry(problem, k=None, a=None, opts: SolveOptions | None = None) -> AnnihilatorResult:
    """Discriminant of the characteristic polynomial of z1 (k = 2 only)."""
    dde = _as_spec(problem, k, a)
    if dde.k != 2:
        raise Unsupported("the geometry algorithm is implemented for k = 2 only")
    return _solve_with(GeometryKernel, dde, None, None, opts, "geometry")


def discover_bidegree(problem, k=None, a=None, opts: SolveOptions | None = None, attempts: int = 6) -> Bidegree:
    """(deg_t R, deg_z0 R) from elimination images over one prime: t
    specialized gives deg_z0, z0 specialized gives deg_t.  Each degree is
    accepted once two independent random points agree."""
    dde = _as_spec(problem, k, a)
    opts = opts or SolveOptions()
    p = next(prime_stream(opts.prime_bits, opts.seed))
    K = GF(p)
    rng = random.Random(opts.seed)
    excl = {0, _fp_value(K, dde.a)}
    degs = {}
    for ev in ("t", "z0"):
        kernel = EliminationKernel(dde, ev, opts)
        seen: list[int] = []
        for _ in range(attempts):
            v = rng.randrange(1, p)
            if v in excl:
                continue
            try:
                d = len(kernel(p, v)) - 1
            except BadPoint:
                continue
            _emit(opts, {"event": "bidegree-point", "variable": ev, "prime": p, "value": v, "degree": d})
            if d in seen:
                degs[ev] = d
                break
            seen.append(d)
        else:
            raise BudgetExceeded(f"no two agreeing degrees with {ev} specialized")
    return Bidegree(degs["z0"], degs["t"])


def solve_hybrid(dde: DdeSpec, opts: SolveOptions | None = None, bidegree: Bidegree | None = None) -> AnnihilatorResult:
    """Bounds from modular elimination, guess by Hermite-Padé approximation
    on the series, certification to order 2*b_t*b_z0 + 1."""
    if not isinstance(dde, DdeSpec) or dde.rhs is None:
        raise Unsupported("the hybrid algorithm needs the right-hand side of the DDE (series expansion)")
    opts = opts or SolveOptions(algorithm="hybrid")
    t0 = time.time()
    bd = bidegree or discover_bidegree(dde, opts=opts)
    tname, zname = dde.t, dde.zvars[0]
    s = None
    for _ in range(opts.max_bound_retries + 1):
        need = max(bd.threshold, bd.matching_order) + opts.series_margin
        if s is None or len(s.coeffs) < need:
            s = _series_for(dde, need)
        M = guess_algebraic(GuessProblem(type(s)(s.coeffs[:need], s.K), bd, tvar=tname, zvar=zname))
        if M is not None:
            ok, order = prove_guess(M, s, bd.threshold, tname, zname)
            _emit(opts, {"event": "guess", "bounds": [bd.b_t, bd.b_z0], "certified": ok, "order": order})
            if ok:
                res = AnnihilatorResult(M, bd, order, "hybrid")
                _emit(opts, {"event": "result", **res.as_dict(), "seconds": round(time.time() - t0, 3)})
                return res
        bd = Bidegree(bd.b_t + 1, bd.b_z0 + 1)
    raise BudgetExceeded("no certified guess within the bound retries")


def annihilating_polynomial(dde: DdeSpec, opts: SolveOptions | None = None) -> AnnihilatorResult:
    opts = opts or SolveOptions()
    if opts.algorithm == "hybrid":
        return solve_hybrid(dde, opts)
    solver = {"duplication": solve_duplication, "elimination": solve_elimination, "geometry": solve_geometry}[opts.algorithm]
    return solver(dde, opts=opts)
