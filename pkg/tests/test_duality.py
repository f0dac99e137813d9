import numpy as np
import pytest

from phigamma import (
    DegreeOverflow,
    DifferentialForm,
    LaurentElement,
    RingParams,
    WrongModule,
    check_h2_iso,
    cup,
    cyclotomic_twist,
    h2_iso,
    normalization_unit,
    pairing_perfect,
    trace_form,
    trivial_module,
)
from phigamma.duality import Pairing, _omega_value, evaluate, pairing_is_perfect
from phigamma.laurent import random_series
from phigamma.modules import apply_gamma_vector, apply_phi_vector


def test_normalization_units():
    # log 2 = 3 * 8 mod 27, so the unit is -1/8 mod 3
    assert normalization_unit(3, 2, 1) == 1
    assert normalization_unit(3, 2, 2) * 8 % 9 == 9 - 1
    # log 2 mod 5^3 has valuation 1 and log 6 has valuation 1 as well
    u = normalization_unit(5, 2, 2)
    assert u % 5 != 0


def test_trace_form(f9):
    w = DifferentialForm(LaurentElement.monomial(f9, -1, f9.gen()))
    assert trace_form(w) == 1
    assert trace_form(DifferentialForm(LaurentElement.monomial(f9, -2, 1))) == 0


def test_cup_degree_overflow(p3):
    M = trivial_module(p3)
    x = [LaurentElement.constant(p3, 1)]
    with pytest.raises(DegreeOverflow):
        cup(M, M, 1, (x, x), 2, x, 10)


def test_h2_iso_needs_omega(p3):
    with pytest.raises(WrongModule):
        h2_iso(trivial_module(p3), [LaurentElement.monomial(p3, -1)])


@pytest.mark.parametrize("P", [RingParams(3, 1), RingParams(3, 2), RingParams(5, 1), RingParams(3, 1, 2)], ids=str)
def test_h2_iso_bijective(P):
    rep = check_h2_iso(P)
    assert rep.ok, rep


def test_pairing_trivial_perfect(p3):
    mats, ok = pairing_perfect(trivial_module(p3))
    assert ok
    assert [m.degree for m in mats] == [0, 1, 2]
    assert mats[0].left_orders == [3] and mats[0].right_orders == [3]


def test_pairing_is_perfect_helper():
    assert pairing_is_perfect(3, 1, [1], [1], [[2]])
    assert not pairing_is_perfect(3, 1, [1], [1], [[0]])
    assert not pairing_is_perfect(3, 1, [1, 1], [1], [[1], [1]])
    assert pairing_is_perfect(3, 1, [1, 1], [1, 1], [[0, 1], [1, 0]])
    assert not pairing_is_perfect(3, 1, [1, 1], [1, 1], [[1, 1], [1, 1]])


@pytest.fixture(scope="module")
def triv_pairing():
    return Pairing(trivial_module(RingParams(3, 1)))


def test_bilinear(triv_pairing):
    pr = triv_pairing
    x0, x1 = pr.honest("M", 1, 0), pr.honest("M", 1, 1)
    eta = pr.honest("D", 1, 0)
    s = ([a + b for a, b in zip(x0[0], x1[0])], [a + b for a, b in zip(x0[1], x1[1])])
    assert pr.value(1, s, eta) == (pr.value(1, x0, eta) + pr.value(1, x1, eta)) % 3


def test_representative_independence(triv_pairing):
    pr = triv_pairing
    M = pr.M
    rng = np.random.default_rng(7)
    for k in range(2):
        xi = pr.honest("M", 1, k)
        for l in range(2):
            eta = pr.honest("D", 1, l)
            z = [random_series(rng, M.params, -3, 3)]
            fz = apply_phi_vector(M, z, hi=pr.hi)
            gz = apply_gamma_vector(M, z, hi=pr.hi)
            moved = ([a + f - w for a, f, w in zip(xi[0], fz, z)], [b + g - w for b, g, w in zip(xi[1], gz, z)])
            assert pr.value(1, moved, eta) == pr.value(1, xi, eta)


def test_graded_antisymmetry(triv_pairing):
    pr = triv_pairing
    M = pr.M
    for k in range(2):
        for l in range(2):
            xi, eta = pr.honest("M", 1, k), pr.honest("D", 1, l)
            back = _omega_value(M, evaluate(M, cup(pr.Md, M, 1, eta, 1, xi, pr.hi)))
            assert (pr.value(1, xi, eta) + back) % 3 == 0
