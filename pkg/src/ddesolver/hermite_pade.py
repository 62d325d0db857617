"""Guessing a polynomial equation M(t, s(t)) = 0 for a truncated series by
Hermite-Padé approximation, and certifying a guess by substitution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import gmpy2

from .numeric import QQ, PrimeField
from .poly import MultiPoly, normalize_annihilator
from .series import UniSeries, check_annihilation, series_mul


@dataclass(frozen=True)
class Bidegree:
    b_t: int
    b_z0: int

    def __post_init__(self):
        if self.b_t < 0 or self.b_z0 < 0:
            raise ValueError("degree bounds must be non-negative")

    @property
    def unknowns(self) -> int:
        return (self.b_t + 1) * (self.b_z0 + 1)

    @property
    def matching_order(self) -> int:
        return self.unknowns - 1

    @property
    def threshold(self) -> int:
        return 2 * self.b_t * self.b_z0 + 1


@dataclass
class GuessProblem:
    series: UniSeries
    bounds: Bidegree
    matching_order: int | None = None
    tvar: str = "t"
    zvar: str = "z0"

    def __post_init__(self):
        if self.matching_order is None:
            self.matching_order = self.bounds.matching_order
        if len(self.series.coeffs) < self.matching_order:
            raise ValueError(f"series has {len(self.series.coeffs)} terms, matching needs {self.matching_order}")

    @property
    def threshold(self) -> int:
        return self.bounds.threshold


def _columns(prob: GuessProblem):
    """Monomials t^i z0^j sorted by lex z0 > t, and the coefficient vectors
    of t^i s^j mod t^n, all scaled to integers by the same factor (or
    reduced mod p)."""
    bt, bz = prob.bounds.b_t, prob.bounds.b_z0
    n = prob.matching_order
    K = prob.series.K
    coeffs = list(prob.series.coeffs[:n])
    if isinstance(K, PrimeField):
        p = K.p
        S = [int(c) % p for c in coeffs]
        D = 1
    else:
        p = 0
        D = 1
        for c in coeffs:
            D = lcm(D, Fraction(c).denominator)
        S = [int(Fraction(c) * D) for c in coeffs]
    powers = [[1] + [0] * (n - 1)]
    for _ in range(bz):
        nxt = series_mul(powers[-1], S, n)
        powers.append([v % p for v in nxt] if p else nxt)
    monos, cols = [], []
    for j in range(bz + 1):
        scale = D ** (bz - j)
        for i in range(bt + 1):
            col = [0] * i + [v * scale for v in powers[j][: n - i]]
            col += [0] * (n - len(col))
            monos.append((i, j))
            cols.append([v % p for v in col] if p else col)
    return monos, cols, p


def _first_dependency(cols, p: int):
    """Smallest f such that column f is a combination of columns < f, and
    the combination (as a vector with entry 1 at f), or None."""
    n = len(cols[0]) if cols else 0
    pivots: list[tuple[int, list]] = []  # (row, reduced column) in echelon form
    if p:
        for f, col in enumerate(cols):
            v = list(col)
            coords = []
            for r, pc in pivots:
                c = v[r] * pow(pc[r], -1, p) % p
                coords.append(c)
                if c:
                    v = [(a - c * b) % p for a, b in zip(v, pc)]
            nz = next((r for r in range(n) if v[r]), None)
            if nz is None:
                return f, _back_substitute_mod(pivots, cols, f, p)
            pivots.append((nz, v))
        return None
    mp = [[gmpy2.mpz(x) for x in col] for col in cols]
    for f, col in enumerate(mp):
        v = list(col)
        for r, pc in pivots:
            if v[r]:
                # fraction-free elimination of row r
                a, b = pc[r], v[r]
                g = gmpy2.gcd(a, b)
                a, b = a // g, b // g
                v = [a * x - b * y for x, y in zip(v, pc)]
                cont = 0
                for x in v:
                    if x:
                        cont = gmpy2.gcd(cont, x)
                        if cont == 1:
                            break
                if cont > 1:
                    v = [x // cont for x in v]
        nz = next((r for r in range(n) if v[r]), None)
        if nz is None:
            return f, _solve_exact(mp, f)
        pivots.append((nz, v))
    return None


def _back_substitute_mod(pivots, cols, f, p):
    # solve sum_{i<f} y_i col_i = -col_f restricted to pivot rows
    rows = [r for r, _ in pivots]
    A = [[cols[i][r] % p for i in range(f)] + [(-cols[f][r]) % p] for r in rows]
    y = _gauss_mod(A, p)
    return y + [1]


def _gauss_mod(A, p):
    m = len(A)
    ncol = len(A[0]) - 1
    A = [list(r) for r in A]
    where = [-1] * ncol
    row = 0
    for c in range(ncol):
        piv = next((r for r in range(row, m) if A[r][c]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = pow(A[row][c], -1, p)
        A[row] = [x * inv % p for x in A[row]]
        for r in range(m):
            if r != row and A[r][c]:
                k = A[r][c]
                A[r] = [(x - k * y) % p for x, y in zip(A[r], A[row])]
        where[c] = row
        row += 1
    return [A[where[c]][ncol] if where[c] >= 0 else 0 for c in range(ncol)]


def _solve_exact(cols, f):
    """Rational y with sum_{i<f} y_i col_i = -col_f (columns < f independent)."""
    n = len(cols[0])
    # rows x (f + 1) augmented matrix, fraction-free Gauss-Jordan on f pivots
    A = [[cols[i][r] for i in range(f)] + [-cols[f][r]] for r in range(n)]
    prev = gmpy2.mpz(1)
    prow = []
    row = 0
    for c in range(f):
        piv = next(r for r in range(row, n) if A[r][c])
        A[row], A[piv] = A[piv], A[row]
        pr = A[row]
        for r in range(n):
            if r != row:
                k = A[r][c]
                A[r] = [(x * pr[c] - k * y) // prev for x, y in zip(A[r], pr)]
        prev = pr[c]
        prow.append(row)
        row += 1
    # after Bareiss Gauss-Jordan each pivot row reads prev * y_c = entry
    return [Fraction(int(A[prow[c]][f]), int(A[prow[c]][c])) for c in range(f)] + [Fraction(1)]


def guess_algebraic(prob: GuessProblem) -> MultiPoly | None:
    """Kernel vector of the Hermite-Padé system with the smallest leading
    monomial under lex z0 > t, as a primitive integer polynomial (or over
    F_p when the series is modular).  None when the kernel is trivial."""
    monos, cols, p = _columns(prob)
    dep = _first_dependency(cols, p)
    if dep is None:
        return None
    f, vec = dep
    vars = (prob.tvar, prob.zvar)
    if p:
        K = prob.series.K
        terms = {monos[i]: v % p for i, v in enumerate(vec) if v % p}
        return MultiPoly(vars, terms, K)
    terms = {monos[i]: Fraction(v) for i, v in enumerate(vec) if v}
    return normalize_annihilator(MultiPoly(vars, terms, QQ), prob.tvar, prob.zvar, squarefree=False)


def prove_guess(M: MultiPoly, series: UniSeries, threshold: int, tvar: str = "t", zvar: str = "z0") -> tuple[bool, int]:
    """(certified, verified order): M(t, s) = 0 mod t^order, certified when
    the order reaches `threshold`."""
    if len(series.coeffs) < threshold:
        raise ValueError(f"series has {len(series.coeffs)} terms, certification needs {threshold}")
    if M.is_zero():
        return False, 0
    order = check_annihilation(M, UniSeries(series.coeffs[:threshold], series.K), tvar, zvar)
    return order >= threshold, order
