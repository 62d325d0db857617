import random
from math import ceil

import pytest

from conftest import random_poly
from ddesolver import univariate as up
from ddesolver.numeric import GF
from ddesolver.parser import parse_dde, parse_poly, shipped_example
from ddesolver.poly import MultiPoly, divides, normalize_annihilator, to_dense
from ddesolver.series import check_annihilation, expand_specialized
from ddesolver.solvers import (
    EliminationKernel,
    GeometryKernel,
    SolveOptions,
    Unsupported,
    annihilating_polynomial,
    discover_bidegree,
    eval_interp_drive,
    hermite_condition,
    solve_elimination,
    solve_geometry,
    solve_hybrid,
)

CONST = shipped_example("3constellations.dde")
TZ = ("t", "z0")
QUAD = parse_poly("16*t*z0^2 - 8*t*z0 + t - 16", TZ)
CUBIC = parse_poly("81*t^2*z0^3-81*t^2*z0^2+27*t^2*z0+18*t*z0^2-3*t^2-66*t*z0+47*t+z0-1", TZ)


def planted_kernel(R, variable, scaled, seed):
    free = "z0" if variable == "t" else "t"
    rng = random.Random(seed)

    def kernel(p, v):
        K = GF(p)
        img = to_dense(R.change_field(K).subs({variable: v}).reorder((free,)), free)
        if scaled:
            c = rng.randrange(1, p)
            img = [K.mul(c, x) for x in img]
        return img

    return kernel


def random_annihilator(rng):
    while True:
        R = random_poly(rng, TZ, max_deg=5, nterms=6, coeff=10**6)
        if R.degree("z0") >= 1 and R.degree("t") >= 1:
            R = normalize_annihilator(R)
            if R.degree("z0") >= 1 and R.degree("t") >= 1:
                return R


@pytest.mark.parametrize("variable", ["t", "z0"])
def test_plant_and_recover_exact_images(variable):
    rng = random.Random(1 if variable == "t" else 2)
    for case in range(12):
        R = random_annihilator(rng)
        opts = SolveOptions(prime_bits=31, seed=case)
        pts = []
        got = eval_interp_drive(planted_kernel(R, variable, False, case), variable, opts, images="exact", points_log=pts)
        assert got == R
        bits = max(abs(int(c)) for c in R.terms.values()).bit_length() + 1
        assert len({q.prime for q in pts}) <= ceil(bits / 30) + 1


@pytest.mark.parametrize("variable", ["t", "z0"])
def test_plant_and_recover_monic_images(variable):
    rng = random.Random(3 if variable == "t" else 4)
    for case in range(12):
        R = random_annihilator(rng)
        opts = SolveOptions(prime_bits=31, seed=case)
        got = eval_interp_drive(planted_kernel(R, variable, True, case), variable, opts, images="monic")
        assert normalize_annihilator(got) == R


def test_drive_rejects_bad_arguments():
    with pytest.raises(ValueError):
        eval_interp_drive(lambda p, v: [1], "u", SolveOptions())
    with pytest.raises(ValueError):
        eval_interp_drive(lambda p, v: [1], "t", SolveOptions(), images="other")


def test_options_validation():
    with pytest.raises(ValueError):
        SolveOptions(algorithm="magic")
    with pytest.raises(ValueError):
        SolveOptions(eval_variable="u")
    with pytest.raises(ValueError):
        SolveOptions(prime_bits=8)
    with pytest.raises(ValueError):
        SolveOptions(threads=0)


def test_worker_pool_gives_identical_result():
    one = solve_elimination(CONST, opts=SolveOptions(threads=1))
    two = solve_elimination(CONST, opts=SolveOptions(threads=2))
    assert one.R == two.R and one.primes == two.primes


def expected_image(p, t0):
    K = GF(p)
    R = (QUAD * CUBIC).change_field(K).subs({"t": t0}).reorder(("z0",))
    return up.monic(K, up.squarefree_part(K, to_dense(R, "z0")))


@pytest.mark.parametrize("cls", [EliminationKernel, GeometryKernel])
def test_kernel_image_at_one_point(cls):
    img = cls(CONST, "t", SolveOptions())(12301, 1328)
    if cls is EliminationKernel:
        assert img == expected_image(12301, 1328)
    else:
        # geometry images contain the cubic factor
        K = GF(12301)
        cub = to_dense(CUBIC.change_field(K).subs({"t": 1328}).reorder(("z0",)), "z0")
        assert up.rem(K, img, up.monic(K, cub)) == []


def test_hermite_condition_detects_double_root():
    K = GF(10007)
    s, u = MultiPoly.gens(("s", "u"), K)
    g = (u - 1) * (u - s)
    cond = hermite_condition(g, "u", 2, K, random.Random(0))
    # two distinct roots unless s = 1
    assert cond.subs({"s": 1}).is_zero()
    assert not cond.subs({"s": 5}).is_zero()


def test_elimination_on_constellations_with_z0_evaluation():
    res = solve_elimination(CONST, opts=SolveOptions(eval_variable="z0"))
    assert divides(QUAD, res.R) and divides(CUBIC, res.R)
    assert res.R == normalize_annihilator(QUAD * CUBIC)
    assert res.certified_order is not None


def test_hybrid_and_bidegree():
    opts = SolveOptions(algorithm="hybrid")
    b = discover_bidegree(CONST, opts=opts)
    assert (b.b_t, b.b_z0) == (3, 5)
    res = solve_hybrid(CONST, opts, bidegree=b)
    assert res.R == CUBIC and res.certified_order == 31


def test_unsupported_inputs():
    tam = shipped_example("3tamari.dde")
    with pytest.raises(Unsupported):
        solve_geometry(tam)
    no_rhs = parse_dde('k = 1\na = 0\nvars = [x, z0, t, u]\nP = "u*x - u - t*x^2*u + t*(x - z0)"\n')
    with pytest.raises(Unsupported):
        solve_hybrid(no_rhs)


def test_catalan_like_first_order_equation():
    dde = parse_dde('k = 1\na = 0\nvars = [x, z0, t, u]\nrhs = "1 + t*u*x^2 + t*D1"\n')
    res = annihilating_polynomial(dde, SolveOptions())
    s = expand_specialized(dde, 60)
    assert check_annihilation(res.R, s) == 61
