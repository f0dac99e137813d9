import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma import CoeffElement, NotAUnit, RingParams, padic_log, teichmuller, trace_to_base
from phigamma.coefficients import coeff_invert, iter_coeffs


def test_f9_generator_arithmetic(f9):
    g = f9.gen()
    assert f9.minpoly == (2, 2, 1)
    assert coeff_invert(g) == g + 2
    assert g.sigma() == g * 2 + 1
    assert trace_to_base(g) == 1


def test_teichmuller_of_two_mod_nine():
    P = RingParams(3, 2)
    w = teichmuller(2, P)
    assert w == CoeffElement(P, 8)
    assert w ** 2 == teichmuller(1, P)


def test_padic_log_values():
    assert padic_log(CoeffElement(RingParams(5, 4), 6)) == CoeffElement(RingParams(5, 4), 555)
    assert padic_log(CoeffElement(RingParams(3, 3), 2)) == CoeffElement(RingParams(3, 3), 24)


def test_non_unit_inverse_raises():
    with pytest.raises(NotAUnit):
        coeff_invert(CoeffElement(RingParams(3, 2), 3))


def test_p2_rejected():
    with pytest.raises(ValueError):
        RingParams(2, 1)


def test_teichmuller_is_multiplicative():
    P = RingParams(3, 2, 2)
    F = P.residue_field
    elems = list(F.elements())
    for a in elems[:5]:
        for b in elems[:5]:
            assert teichmuller(F.mul(a, b), P) == teichmuller(a, P) * teichmuller(b, P)


def test_trace_is_additive_and_frobenius_invariant():
    P = RingParams(5, 2, 2)
    elems = list(iter_coeffs(P))[:40]
    for x in elems[:10]:
        assert trace_to_base(x.sigma()) == trace_to_base(x)
        for y in elems[10:14]:
            assert trace_to_base(x + y) == (trace_to_base(x) + trace_to_base(y)) % P.modulus


coeffs = st.lists(st.integers(0, 24), min_size=2, max_size=2)


@given(coeffs, coeffs, coeffs)
def test_ring_axioms_w2_f25(a, b, c):
    P = RingParams(5, 2, 2)
    x, y, z = (CoeffElement(P, v) for v in (a, b, c))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert (x * y).sigma() == x.sigma() * y.sigma()
    if x.is_unit():
        assert x * coeff_invert(x) == P.one()


@given(st.integers(1, 8))
def test_log_turns_products_into_sums(k):
    P = RingParams(3, 3)
    a = CoeffElement(P, 1 + 3 * k)
    b = CoeffElement(P, 4)
    assert padic_log(a * b) == padic_log(a) + padic_log(b)
