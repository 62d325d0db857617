import random

import pytest

from ddesolver.numeric import GF, QQ
from ddesolver.parser import shipped_example
from ddesolver.poly import MultiPoly
from ddesolver.systems import (
    build_duplicated_system,
    build_kernel_system,
    clear_denominators,
    count_roots_conditions,
    det_bareiss,
    hermite_matrix,
    rabinowitsch,
    stickelberger_conditions,
)

CONST = shipped_example("3constellations.dde")


def rank_mod_p(M, p):
    A = [[x % p for x in r] for r in M]
    rank, ncol = 0, len(A[0]) if A else 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c] * inv % p
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def test_hermite_rank_is_distinct_root_count():
    """Planted roots r_i(s) = a_i + b_i s with multiplicities; at a random
    s the rank of the Hermite form equals the number of distinct values."""
    rng = random.Random(7)
    p = 10007
    K = GF(p)
    s, z = MultiPoly.gens(("s", "z"), K)
    for case in range(120):
        n = rng.randint(1, 4)
        roots = [(rng.randrange(5), rng.randrange(3)) for _ in range(n)]
        g = MultiPoly.const(("s", "z"), rng.randrange(1, p), K)
        for a, b in roots:
            g = g * (z - a - b * s) ** rng.randint(1, 2)
        h = hermite_matrix(g, "z")
        s0 = rng.randrange(p)
        distinct = len({(a + b * s0) % p for a, b in roots})
        H = [[e.subs({"s": s0}).constant_value() for e in row] for row in h.cleared()]
        assert rank_mod_p(H, p) == distinct
        # at least l distinct roots iff some l x l minor survives
        if h.degree > 5:
            continue
        for l in range(1, h.degree + 1):
            minors, lc = count_roots_conditions(h, l)
            alive = any(m.subs({"s": s0}).constant_value() for m in minors)
            assert alive == (distinct >= l)


def test_hermite_power_sums_over_q():
    z, c = MultiPoly.gens(("z", "c"))
    h = hermite_matrix(z**2 - c, "z")
    # roots +-sqrt(c): p0 = 2, p1 = 0, p2 = 2c
    assert h.sums[:3] == [MultiPoly.const(("z", "c"), 2), MultiPoly(("z", "c"), {}), 2 * c]
    assert det_bareiss(h.cleared()) == 4 * c


def test_det_bareiss_matches_cofactor_expansion():
    x, y = MultiPoly.gens(("x", "y"))
    M = [[x, y, 1], [y, x + 1, 2], [x * y, 3, y]]

    def cof(A):
        if len(A) == 1:
            return A[0][0]
        return sum(((-1) ** j) * A[0][j] * cof([r[:j] + r[j + 1:] for r in A[1:]]) for j in range(len(A)))

    assert det_bareiss(M) == cof(M)


def test_stickelberger_conditions_are_derivatives():
    T, z = MultiPoly.gens(("T", "z"))
    chi = (T - 1) ** 2 * (T - 3)
    conds = stickelberger_conditions(chi, "T", "z", 2)
    assert conds[0] == chi.subs({"T": z})
    assert conds[1] == chi.diff("T").subs({"T": z})
    with pytest.raises(ValueError):
        stickelberger_conditions(chi, "T", "z", 0)


def test_cleared_equation_matches_file():
    assert clear_denominators(CONST).clear_denominators() == CONST.P.clear_denominators()


def test_kernel_system_shape():
    S = build_kernel_system(CONST.P, 2, 1)
    assert S.vars == ("m", "x", "u", "z0", "z1", "t")
    assert len(S) == 4 and len(S.inequations) == 2
    assert S.order.eliminates([0, 1])
    D = build_duplicated_system(CONST.P, 2, 1)
    assert D.vars == ("m", "x1", "x2", "u1", "u2", "z0", "z1", "t")
    assert len(D) == 7


def test_rabinowitsch():
    m, x = MultiPoly.gens(("m", "x"))
    assert rabinowitsch(x - 2, "m") == m * x - 2 * m - 1
    with pytest.raises(ValueError):
        rabinowitsch(MultiPoly(("m", "x"), {}, QQ), "m")
