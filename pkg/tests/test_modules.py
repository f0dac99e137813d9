import pytest

from phigamma import (
    ActionParams,
    LaurentElement,
    NotCommuting,
    NotEtale,
    PhiGammaModule,
    RingParams,
    TorsionMismatch,
    cyclotomic_twist,
    h0,
    h2,
    hom_dual,
    induced_unramified,
    tensor,
    trivial_module,
    unramified_twist,
    validate,
)


def _rank_one(P, phi, gam):
    return PhiGammaModule(P, ActionParams(2), [[LaurentElement.parse(phi, P)]], [[LaurentElement.parse(gam, P)]])


def test_builtins_validate(p3):
    for M in (trivial_module(p3), cyclotomic_twist(p3, 1), cyclotomic_twist(p3, -1),
              unramified_twist(p3, 2), induced_unramified(p3, 2)):
        assert validate(M).ok


def test_not_etale():
    # pi is a unit in the Laurent ring; p is not
    with pytest.raises(NotEtale):
        validate(_rank_one(RingParams(3, 2), "3", "1"))


def test_not_commuting(p3):
    with pytest.raises(NotCommuting):
        validate(_rank_one(p3, "2", "1 + pi"))


def test_report_without_raising():
    report = validate(_rank_one(RingParams(3, 2), "3", "1"), raise_on_error=False)
    assert not report.ok
    assert any("etale" in line for line in report.lines())


def test_torsion_range_checked():
    with pytest.raises(TorsionMismatch):
        trivial_module(RingParams(3, 2), torsion=(3,))


def test_dual_of_trivial_is_omega(p3):
    D = hom_dual(trivial_module(p3))
    assert validate(D).ok
    assert h0(D).exponents == h0(cyclotomic_twist(p3, 1)).exponents == []
    assert h2(D).exponents == [1]


def test_tensor_ranks_and_validity(p3):
    T = tensor(induced_unramified(p3, 2), cyclotomic_twist(p3, 1))
    assert T.rank == 2
    assert validate(T).ok
    assert T.length == 2


def test_mixed_torsion_module():
    P = RingParams(3, 2)
    M = trivial_module(P, d=2, torsion=(2, 1))
    assert M.length == 3
    assert validate(M).ok
