import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma import ActionParams, DifferentialForm, LaurentElement, RingParams, WindowTooSmall, apply_gamma, apply_phi, residue, series_invert
from phigamma.errors import ParseError
from phigamma.laurent import d, format_series, random_series


def test_inverse_of_one_plus_pi(p3):
    inv = series_invert(LaurentElement.parse("1 + pi", p3), hi=6)
    assert format_series(inv) == "1 + 2*pi^1 + pi^2 + 2*pi^3 + pi^4 + 2*pi^5 + pi^6"


def test_inverse_with_pole(p3):
    x = LaurentElement.parse("pi^-2 + 1", p3)
    inv = series_invert(x, hi=10)
    assert (x * inv).agrees(LaurentElement.constant(p3, 1), 10)


def test_phi_and_gamma_of_pi(p3):
    assert format_series(apply_phi(LaurentElement.monomial(p3, 1))) == "pi^3"
    assert format_series(apply_gamma(LaurentElement.monomial(p3, 1), ActionParams(2))) == "2*pi^1 + pi^2"
    assert format_series(apply_phi(LaurentElement.monomial(p3, -1))) == "pi^-3"


def test_residues(p3):
    assert int(residue(DifferentialForm(LaurentElement.monomial(p3, -1))).coeffs[0]) == 1
    assert residue(d(LaurentElement.monomial(p3, -2))).coeffs[0] == 0
    assert residue(DifferentialForm(LaurentElement.monomial(p3, 0))).coeffs[0] == 0


def test_window_too_small(p3):
    x = LaurentElement.parse("1", p3, hi=2)
    with pytest.raises(WindowTooSmall):
        x.coeff(5)


def test_parse_errors_carry_column(p3):
    with pytest.raises(ParseError) as info:
        LaurentElement.parse("2**pi", p3)
    assert info.value.column is not None


def test_parse_format_round_trip(f9, rng):
    for _ in range(10):
        x = random_series(rng, f9, -4, 6)
        assert LaurentElement.parse(format_series(x), f9) == x


exps = st.integers(-3, 5)
small = st.integers(0, 8)


@given(st.lists(st.tuples(exps, small), min_size=1, max_size=4), st.lists(st.tuples(exps, small), min_size=1, max_size=4))
def test_phi_gamma_are_ring_maps(ta, tb):
    P = RingParams(3, 2)
    x = LaurentElement.from_terms(P, {k: v for k, v in ta})
    y = LaurentElement.from_terms(P, {k: v for k, v in tb})
    hi = 8
    assert apply_phi(x * y, hi=hi).agrees(apply_phi(x, hi=hi) * apply_phi(y, hi=hi), hi)
    act = ActionParams(2)
    assert apply_gamma(x + y, act, hi=hi).agrees(apply_gamma(x, act, hi=hi) + apply_gamma(y, act, hi=hi), hi)
    assert apply_gamma(x * y, act, hi=hi).agrees(apply_gamma(x, act, hi=hi) * apply_gamma(y, act, hi=hi), hi)


@given(st.lists(st.tuples(exps, small), min_size=1, max_size=4))
def test_phi_and_gamma_commute(ta):
    P = RingParams(3, 2)
    x = LaurentElement.from_terms(P, {k: v for k, v in ta})
    act = ActionParams(2)
    hi = 6
    a = apply_phi(apply_gamma(x, act, hi=hi + 8), hi=hi)
    b = apply_gamma(apply_phi(x, hi=hi + 8), act, hi=hi)
    assert a.agrees(b, hi)
