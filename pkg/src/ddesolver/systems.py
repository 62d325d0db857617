"""Polynomial systems attached to a DDE: the cleared equation P, the kernel
system, the duplicated system, Hermite trace forms and root-count
conditions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .poly import MonomialOrder, MultiPoly, NotDivisible, exact_divide

log = logging.getLogger(__name__)


class AssumptionViolated(RuntimeError):
    """A finiteness or genericity assumption failed for the input DDE."""


@dataclass
class ConstraintSystem:
    equations: list[MultiPoly]
    inequations: list[MultiPoly]
    vars: tuple[str, ...]
    roles: dict[str, list[str]]
    order: MonomialOrder
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        for e in self.equations + self.inequations:
            if e.vars != self.vars:
                raise ValueError("all polynomials must share the system's universe")

    def __len__(self):
        return len(self.equations)


# -- clearing divided differences -----------------------------------------------------


def clear_denominators(dde) -> MultiPoly:
    """Cleared polynomial equation P(x, z0..z_{k-1}, t, u) of a DDE given by
    its right-hand side.

    D_l stands for (x - sum_{i<l} z_i (u-a)^i / i!) / (u-a)^l, with z_i the
    i-th u-derivative of F at u = a.  rhs - x is multiplied by the least
    power of (u - a) that makes it polynomial; the result is made primitive
    over Z with positive lex-leading coefficient.
    """
    if dde.rhs is None:
        raise ValueError("the DDE has no right-hand side")
    k, a = dde.k, Fraction(dde.a)
    V = dde.vars
    x, t, u = (MultiPoly.var(V, v) for v in (V[0], V[-2], V[-1]))
    zs = [MultiPoly.var(V, v) for v in V[1:-2]]
    ua = u - a
    numer = []
    for l in range(1, k + 1):
        s = x
        for i in range(l):
            s = s - zs[i] * ua**i * Fraction(1, factorial(i))
        numer.append(s)
    rhs = dde.rhs
    weights = [sum((l + 1) * m[1 + l] for l in range(k)) for m in rhs.terms]
    L = max(weights, default=0)
    out = -x * ua**L
    for (m, c), w in zip(rhs.terms.items(), weights):
        term = MultiPoly.const(V, c) * x ** m[0] * t ** m[k + 1] * u ** m[k + 2]
        for l in range(k):
            if m[1 + l]:
                term = term * numer[l] ** m[1 + l]
        out = out + term * ua ** (L - w)
    while L > 0:
        try:
            out = exact_divide(out, ua)
        except NotDivisible:
            break
        L -= 1
    if out.is_zero():
        raise AssumptionViolated("the cleared equation is identically zero")
    return out.clear_denominators()


# -- modelings ---------------------------------------------------------------------------


def _names(P: MultiPoly, k: int):
    V = P.vars
    if len(V) != k + 3:
        raise ValueError(f"P must live in [x, z0..z{k - 1}, t, u], got {V}")
    return V[0], list(V[1:-2]), V[-2], V[-1]


def build_kernel_system(P: MultiPoly, k: int, a, mvar: str = "m") -> ConstraintSystem:
    """{P, dP/dx, dP/du, m*u*(u-a) - 1} over the universe (m, x, u, z..., t)."""
    x, zs, t, u = _names(P, k)
    V = (mvar, x, u, *zs, t)
    Pe = P.reorder(V)
    uu = MultiPoly.var(V, u, P.K)
    m = MultiPoly.var(V, mvar, P.K)
    Px, Pu = Pe.diff(x), Pe.diff(u)
    eqs = [Pe, Px, Pu, m * uu * (uu - P.K(a)) - 1]
    diags = []
    for name, g in (("dP/dx", Px), ("dP/du", Pu)):
        if g.is_zero():
            diags.append(f"{name} vanishes identically")
            log.warning("kernel system: %s vanishes identically", name)
    order = MonomialOrder.block([[0, 1], [2], list(range(3, len(V)))])
    roles = {"m": [mvar], "x": [x], "u": [u], "z": zs, "param": [t]}
    return ConstraintSystem(eqs, [uu, uu - P.K(a)], V, roles, order, diags)


def build_duplicated_system(P: MultiPoly, k: int, a, mvar: str = "m") -> ConstraintSystem:
    """k copies (x_i, u_i) of the kernel equations sharing the z-block, with
    the saturation m * prod(u_i - u_j) * prod u_i (u_i - a) - 1."""
    x, zs, t, u = _names(P, k)
    xs = [f"{x}{i}" for i in range(1, k + 1)]
    us = [f"{u}{i}" for i in range(1, k + 1)]
    V = (mvar, *xs, *us, *zs, t)
    K = P.K
    Px, Pu = P.diff(x), P.diff(u)
    eqs = []
    for xi, ui in zip(xs, us):
        ren = {x: xi, u: ui}
        for g in (P, Px, Pu):
            eqs.append(g.rename(ren).reorder(V))
    U = [MultiPoly.var(V, ui, K) for ui in us]
    sat = MultiPoly.const(V, 1, K)
    for i, j in combinations(range(k), 2):
        sat = sat * (U[i] - U[j])
    for ui in U:
        sat = sat * ui * (ui - K(a))
    eqs.append(MultiPoly.var(V, mvar, K) * sat - 1)
    n = len(V)
    order = MonomialOrder.block([list(range(n - 1 - k)), list(range(n - 1 - k, n - 1)), [n - 1]])
    roles = {"m": [mvar], "x": xs, "u": us, "z": zs, "param": [t]}
    return ConstraintSystem(eqs, [sat], V, roles, order)


def rabinowitsch(ineq: MultiPoly, mvar: str) -> MultiPoly:
    """m' * ineq - 1 in the universe of `ineq`, which must contain m'."""
    if ineq.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    return MultiPoly.var(ineq.vars, mvar, ineq.K) * ineq - 1


# -- Hermite quadratic form ---------------------------------------------------------------


@dataclass
class HermiteForm:
    """Trace form of K(params)[z]/<g> in the basis 1, z, ..., z^{d-1}.

    Entry (i, j) is sums[i + j] / lc^(i + j): ``sums[m]`` is the m-th power
    sum of the roots of g multiplied by lc^m, a polynomial.
    """

    g: MultiPoly
    var: str
    lc: MultiPoly
    sums: list[MultiPoly]

    @property
    def degree(self) -> int:
        return (len(self.sums) + 1) // 2

    def entry(self, i: int, j: int) -> tuple[MultiPoly, MultiPoly]:
        """(numerator, denominator) of M[i][j]."""
        return self.sums[i + j], self.lc ** (i + j)

    def cleared(self) -> list[list[MultiPoly]]:
        """diag(lc^i) M diag(lc^j): the Hankel matrix of the scaled power
        sums, whose minors differ from those of M by powers of lc."""
        d = self.degree
        return [[self.sums[i + j] for j in range(d)] for i in range(d)]


def hermite_matrix(g: MultiPoly, var: str) -> HermiteForm:
    d = g.degree(var)
    if d < 1:
        raise ValueError("hermite_matrix needs positive degree")
    c = g.coeff_list(var)
    lc = c[d]
    one = MultiPoly.const(g.vars, 1, g.K)
    lcpow = [one]
    for _ in range(2 * d):
        lcpow.append(lcpow[-1] * lc)
    # Newton identities for N_m = lc^m * p_m
    N = [one * d]
    for mm in range(1, 2 * d - 1):
        s = g._new({})
        for i in range(1, min(mm - 1, d) + 1):
            s = s + c[d - i] * lcpow[i - 1] * N[mm - i]
        if mm <= d:
            s = s + c[d - mm] * lcpow[mm - 1] * mm
        N.append(-s)
    return HermiteForm(g, var, lc, N)


def det_bareiss(M: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    A = [list(r) for r in M]
    sign = 1
    prev = MultiPoly.const(A[0][0].vars, 1, A[0][0].K)
    for kk in range(n - 1):
        if A[kk][kk].is_zero():
            for r in range(kk + 1, n):
                if not A[r][kk].is_zero():
                    A[kk], A[r] = A[r], A[kk]
                    sign = -sign
                    break
            else:
                return prev._new({})
        for i in range(kk + 1, n):
            for j in range(kk + 1, n):
                A[i][j] = exact_divide(A[i][j] * A[kk][kk] - A[i][kk] * A[kk][j], prev)
        prev = A[kk][kk]
    return A[n - 1][n - 1] * sign


def count_roots_conditions(h: HermiteForm, l: int) -> tuple[list[MultiPoly], MultiPoly]:
    """Nonzero l x l minors of the (cleared) Hermite matrix, and LC_z(g).

    Off V(LC), g has at least l distinct roots exactly where one of the
    returned minors does not vanish.
    """
    d = h.degree
    if not 1 <= l <= d:
        raise ValueError(f"l must lie in [1, {d}]")
    H = h.cleared()
    minors = []
    for rows in combinations(range(d), l):
        for cols in combinations(range(d), l):
            mnr = det_bareiss([[H[i][j] for j in cols] for i in rows])
            if not mnr.is_zero() and mnr not in minors:
                minors.append(mnr)
    return minors, h.lc


def stickelberger_conditions(chi: MultiPoly, Tvar: str, var: str, l: int) -> list[MultiPoly]:
    """chi, d chi/dT, ..., d^{l-1} chi/dT^{l-1}, each evaluated at T = var."""
    if l < 1:
        raise ValueError("l must be positive")
    out = []
    g = chi
    target = MultiPoly.var(chi.vars, var, chi.K)
    for _ in range(l):
        out.append(g.subs({Tvar: target}))
        g = g.diff(Tvar)
    return out
