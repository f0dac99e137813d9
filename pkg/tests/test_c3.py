import numpy as np
import pytest

from phigamma import ActionParams, GroupWord, LaurentElement, RingParams, TwoGenModule, c3_h0, c3_symbolic_verify, cyclotomic_twist, delta_op, h0, trivial_module
from phigamma.c3 import F, G, GP, c3_matrices, composite_vanishes, rewrite, validate_two_gen
from phigamma.errors import PhiGammaError


@pytest.mark.parametrize("a", [2, 3, 5, 7])
def test_symbolic_composites_vanish(a):
    v = c3_symbolic_verify(a)
    assert v.ok, v.lines()


def test_shapes():
    assert c3_matrices(2).shapes == ((3, 1), (3, 3), (1, 3))


def test_rewrite_rules():
    assert rewrite((G, GP), 3) == (GP, GP, GP, G)
    assert rewrite((F, G), 3) == (G, F)
    assert rewrite((F, GP), 3) == (GP, F)


def test_delta_telescopes():
    a = 4
    one = GroupWord.one(a)
    gp = GroupWord.word(a, GP)
    assert (delta_op(a) * (gp - one)).normal_form() == (gp ** a - one).normal_form()


def test_word_arithmetic():
    a = 2
    g = GroupWord.word(a, G)
    gp = GroupWord.word(a, GP)
    assert (g * gp).normal_form() == (gp * gp * g).normal_form()
    assert (g - g).is_zero()


@pytest.fixture
def twogen():
    P = RingParams(5, 2)
    # gamma' = -1 needs (-1)^a = -1, so a must be odd
    base = trivial_module(P, act=ActionParams(3))
    return TwoGenModule(base, [[LaurentElement.constant(P, -1)]])


def test_numeric_composites(twogen):
    assert composite_vanishes(twogen, np.random.default_rng(0))


def test_gamma_prime_identity_h0_matches_h0():
    M = cyclotomic_twist(RingParams(3, 1), 0)
    assert c3_h0(TwoGenModule(M)).exponents == h0(M).exponents


def test_sign_gamma_prime_kills_h0(twogen):
    validate_two_gen(twogen)
    # gamma' = -1 on Z/25: fixed points are 0
    assert c3_h0(twogen).exponents == []


def test_even_a_rejects_sign():
    P = RingParams(5, 2)
    T = TwoGenModule(trivial_module(P, act=ActionParams(2)), [[LaurentElement.constant(P, -1)]])
    with pytest.raises(PhiGammaError):
        validate_two_gen(T)


def test_bad_gamma_prime_rejected():
    P = RingParams(3, 1)
    T = TwoGenModule(cyclotomic_twist(P, 1), [[LaurentElement.parse("1 + pi", P)]])
    with pytest.raises(PhiGammaError):
        validate_two_gen(T)
