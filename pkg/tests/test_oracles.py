import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import CLASSES, MAKERS, random_box, random_psd
from monodual.applications import inv_norm_cdf
from monodual.brute import enumerate_all
from monodual.lattice import IntBox, dominates
from monodual.oracles import (
    INFINITY,
    MIN_FEASIBLE,
    InequalitySystem,
    InvalidInputError,
    LinearIneq,
    PolynomialIneq,
    ProductAffineIneq,
    PsdIneq,
    SeparableIneq,
    SocIneq,
    SupermodularTableIneq,
    UnboundedVariableError,
    check_2monotonic,
    check_supermodular,
    check_supermodular_pairs,
    derive_box,
    evaluate,
    is_feasible,
    is_monotone,
    make_system,
    product_affine_log_transform,
    psd_reduce,
    soc_weight_vector,
    traction,
)

DIAG_PSD = PsdIneq([[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [[2, 0], [0, 2]])
SOC_I2 = SocIneq([[1, 0], [0, 1]], [0, 0], 2)


def test_evaluate_examples():
    assert evaluate(PolynomialIneq([(1, {0: 1, 1: 1})], 1, 2), (1, 1)) == 1
    assert evaluate(LinearIneq((1, 2), 0), (3, 1)) == 5
    prod = ProductAffineIneq([((1, 1, 0), 0), ((0, 1, 1), 0)], 1)
    assert evaluate(prod, (0, 1, 0)) == 1


def test_soc_and_psd_have_no_rational_value():
    with pytest.raises(TypeError):
        SOC_I2.value((1, 1))


def test_is_feasible_examples():
    s = make_system([PolynomialIneq([(1, {0: 1, 1: 1})], 1, 2)], c=(2, 2))
    assert is_feasible(s, (1, 1)) and not is_feasible(s, (2, 1))
    assert SOC_I2.holds((1, 1))
    assert DIAG_PSD.holds((2, 2)) and not DIAG_PSD.holds((3, 2))


def test_derive_box_examples():
    assert derive_box([PolynomialIneq([(1, {0: 1, 1: 1})], 1, 2)]).c == (1, 1)
    assert derive_box([DIAG_PSD]).c == (4, 4)
    assert derive_box([SOC_I2]).c == (2, 2)


def test_derive_box_unbounded():
    with pytest.raises(UnboundedVariableError) as err:
        derive_box([LinearIneq((1, 0), 1)])
    assert err.value.j == 1
    assert derive_box([LinearIneq((1, 0), 1)], caps=[None, 3]).c == (1, 3)


def test_derive_box_ge_reach():
    # minimal feasible points of 2x1 + x2 >= 5 never need x1 > 3 or x2 > 5
    assert derive_box([LinearIneq((2, 1), 5)], sense="ge").c == (3, 5)
    prod = ProductAffineIneq([((1, 0), 0), ((0, 1), 1)], 6)
    c = derive_box([prod], sense="ge").c
    big = InequalitySystem(IntBox((12, 12)), [prod], MIN_FEASIBLE)
    assert all(dominates(c, g) for g in enumerate_all(big)[0])


def test_check_supermodular_examples():
    box = IntBox((2, 2))
    assert check_supermodular(lambda x: x[0] * x[1], box)
    assert not check_supermodular(lambda x: min(x[0] + x[1], 2), box)
    assert check_supermodular(LinearIneq((3, 1), 0), box)


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(1, 2), st.lists(st.integers(-2, 4), min_size=27, max_size=27))
def test_supermodular_characterisations_agree(n, cmax, raw):
    box = IntBox((cmax,) * n)
    pts = list(box.points())
    table = dict(zip(pts, raw))
    assert check_supermodular(table, box) == check_supermodular_pairs(table, box)


def test_check_2monotonic_examples():
    box = IntBox((2, 2, 2))
    assert check_2monotonic(LinearIneq((3, 2, 1), 0), box, (0, 1, 2))
    assert not check_2monotonic(LinearIneq((1, 2), 0), IntBox((1, 1)), (0, 1))
    with pytest.raises(InvalidInputError):
        check_2monotonic(LinearIneq((1, 2), 0), IntBox((1, 1)), (0, 0))


def test_ordered_knapsack_is_2monotonic():
    q = inv_norm_cdf(Fraction(9, 10))
    a, d = (5, 3, 2, 1), (3, 2, 2, 1)
    con = SocIneq([[q * dj if k == j else 0 for j, dj in enumerate(d)] for k in range(4)], a, 10)
    assert check_2monotonic(con, IntBox((1, 1, 1, 1)), (0, 1, 2, 3))


def test_traction_examples():
    assert traction(LinearIneq((1, 2), 0), IntBox((1, 1))) == 1
    assert traction(lambda x: x[0] * x[1], IntBox((1, 1))) == 1
    assert traction(lambda x: 0, IntBox((2,))) == INFINITY


def test_psd_reduce_examples():
    red = psd_reduce(PsdIneq([[[1, 2], [2, 5]]], [[1, 0], [0, 1]]))
    assert red.U == [[1, 0], [0, 1]] and red.C[0] == [[1, 2], [2, 5]]
    red = psd_reduce(PsdIneq([[[1, 0], [0, 1]]], [[1, 0], [0, 0]]))
    assert red.dropped == [0] and red.kept == []
    red = psd_reduce(PsdIneq([[[1, 0], [0, 0]]], [[4, 0], [0, 0]]))
    assert red.U == [[Fraction(1, 2), 0], [0, 1]]
    assert red.kept == [0] and red.C[0] == [[Fraction(1, 4)]]
    assert red.normalized


def test_psd_reduce_rejects_indefinite():
    with pytest.raises(InvalidInputError):
        PsdIneq([[[1, 0], [0, 1]]], [[1, 2], [2, 1]])


@pytest.mark.parametrize("seed", range(40))
def test_psd_reduce_preserves_feasibility(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 3), rng.randint(1, 3)
    mats = [random_psd(rng, m) for _ in range(n)]
    T = random_psd(rng, m, rng.randint(0, m), -2, 3)
    con = PsdIneq(mats, T)
    red = psd_reduce(con)
    small = red.as_ineq() if red.kept else None
    for x in IntBox((3,) * n).points():
        if any(x[j] for j in red.dropped):
            assert not con.holds(x)
        elif small is None:
            assert con.holds(x)
        else:
            assert con.holds(x) == small.holds(red.project(x))


def test_soc_weight_vector_examples():
    assert soc_weight_vector(SOC_I2, (1, 0)) == (1, 0)
    assert soc_weight_vector(SocIneq([[1, 0], [0, 1]], [1, 1], 2), (0, 0)) == (1, 1)
    A = SocIneq([[1, 2], [3, 4]], [0, 0], 1)
    assert soc_weight_vector(A, (Fraction(1, 2), Fraction(1, 2))) == (2, 3)
    with pytest.raises(ValueError):
        soc_weight_vector(SOC_I2, (1, 1))
    with pytest.raises(ValueError):
        soc_weight_vector(SOC_I2, (-1, 0))


def test_constructors_validate():
    with pytest.raises(InvalidInputError):
        LinearIneq((1, -1), 1)
    with pytest.raises(InvalidInputError):
        SeparableIneq([[0, 2, 1]], 1)
    with pytest.raises(InvalidInputError):
        PolynomialIneq([(0, {0: 1})], 1, 1)
    with pytest.raises(InvalidInputError):
        SupermodularTableIneq({(0,): 1, (1,): 0}, 1, (2,))
    with pytest.raises(InvalidInputError):
        SupermodularTableIneq.from_nested([[0, 2], [2, 2]], 1)
    with pytest.raises(InvalidInputError):
        SocIneq([[1, -1]], [0, 0], 1)


def test_supermodular_table_round_trip():
    con = SupermodularTableIneq.from_nested([[0, 1], [1, 3]], 2)
    assert con.R == 3 and con.to_nested() == [[0, 1], [1, 3]]


@pytest.mark.parametrize("kind", CLASSES)
def test_feasibility_is_monotone(kind):
    rng = random.Random(kind)
    for _ in range(25):
        box = random_box(rng)
        con = MAKERS[kind](rng, box)
        sense = "ge" if kind == "product_affine" else "le"
        pts = list(box.points())
        for _ in range(60):
            x, y = rng.choice(pts), rng.choice(pts)
            lo = tuple(min(a, b) for a, b in zip(x, y))
            if sense == "le" and con.holds(y, "le"):
                assert con.holds(lo, "le")
            if sense == "ge" and con.holds(lo, "ge"):
                assert con.holds(y, "ge")


@pytest.mark.parametrize("seed", range(30))
def test_soc_exact_matches_high_precision(seed):
    rng = random.Random(seed)
    n, d = rng.randint(1, 4), rng.randint(1, 3)
    con = SocIneq([[Fraction(rng.randint(0, 7), rng.randint(1, 3)) for _ in range(n)] for _ in range(d)],
                  [Fraction(rng.randint(0, 5), rng.randint(1, 3)) for _ in range(n)],
                  Fraction(rng.randint(0, 40), rng.randint(1, 3)))
    for x in IntBox((2,) * n).points():
        val = con.float_value(x)
        if abs(val - float(con.t)) > 1e-6:
            assert con.holds(x) == (val <= float(con.t))


@pytest.mark.parametrize("seed", range(20))
def test_product_affine_log_transform_diagnostic(seed):
    rng = random.Random(seed)
    box = random_box(rng, 3, 2)
    con = MAKERS["product_affine"](rng, box)
    # integer products: rounding t up keeps the feasible set
    con = ProductAffineIneq(con.factors, math.ceil(con.t))
    if con.t <= 0:
        return
    table, t_prime, eps = product_affine_log_transform(con, box)
    assert eps > 0
    assert is_monotone(table, box, tol=1e-9)
    assert check_supermodular(table, box, tol=1e-9)
    G = enumerate_all(InequalitySystem(box, [con], MIN_FEASIBLE))[0]
    feas = {x for x, v in table.items() if v <= t_prime + 1e-12}
    F = {x for x in feas if all(y not in feas or y == x for y in feas if dominates(y, x))}
    assert {box.reflect(x) for x in F} == G
