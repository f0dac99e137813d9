import time

import pytest

from phigamma import (
    LaurentElement,
    NoStabilization,
    PhiGammaModule,
    RingParams,
    UnsupportedModule,
    ActionParams,
    compute_cohomology,
    cyclotomic_twist,
    euler_check,
    induced_unramified,
    solve_phi_minus_one,
    tensor,
    trivial_module,
    unramified_twist,
)
from phigamma.errors import BelowThreshold
from phigamma.herr import contraction_threshold
from phigamma.laurent import format_series


def exps(M):
    return [g.exponents for g in compute_cohomology(M).groups]


def test_trivial_f3(p3):
    assert exps(trivial_module(p3)) == [[1], [1, 1], []]


def test_omega_f3(p3):
    assert exps(cyclotomic_twist(p3, 1)) == [[], [1, 1], [1]]


def test_trivial_mod_9():
    assert exps(trivial_module(RingParams(3, 2))) == [[2], [2, 2], []]


def test_unramified_twist_kills_h0(p3):
    assert exps(unramified_twist(p3, 2)) == [[], [1], []]


def test_results_are_cached(p3):
    M = trivial_module(p3)
    assert compute_cohomology(M) is compute_cohomology(M)


@pytest.mark.parametrize("build", [
    lambda P: trivial_module(P),
    lambda P: cyclotomic_twist(P, 1),
    lambda P: cyclotomic_twist(P, -1),
    lambda P: unramified_twist(P, 2),
    lambda P: induced_unramified(P, 2),
    lambda P: tensor(induced_unramified(P, 2), cyclotomic_twist(P, 1)),
])
@pytest.mark.parametrize("P", [RingParams(3, 1), RingParams(3, 2), RingParams(5, 1)], ids=str)
def test_euler_characteristic(build, P):
    M = build(P)
    rep = euler_check(M)
    assert rep.ok, rep.lines()
    assert rep.alternating_sum == -M.length


def test_euler_over_unramified_extension():
    P = RingParams(3, 1, 2)
    rep = euler_check(trivial_module(P))
    assert rep.ok and rep.expected == -2


def test_contraction_solver(p3):
    M = trivial_module(p3)
    assert contraction_threshold(M) == 1
    x = solve_phi_minus_one(M, [LaurentElement.monomial(p3, 3)], 90)
    # x = -(pi^3 + pi^9 + pi^27 + pi^81)
    assert format_series(x[0]) == "2*pi^3 + 2*pi^9 + 2*pi^27 + 2*pi^81"
    lhs = (LaurentElement.parse("pi^9 + pi^27 + pi^81 + pi^243", p3) * 2 - x[0]).truncate(90)
    assert lhs == LaurentElement.monomial(p3, 3).truncate(90)


def test_solver_rejects_low_input(p3):
    with pytest.raises(BelowThreshold):
        solve_phi_minus_one(trivial_module(p3), [LaurentElement.monomial(p3, 0)], 20)


def test_no_stabilization(p3):
    with pytest.raises(NoStabilization):
        compute_cohomology(trivial_module(p3), start=4, max_window=4)


def test_gamma_with_poles_unsupported(p3):
    one = LaurentElement.constant(p3, 1)
    M = PhiGammaModule(p3, ActionParams(2), [[one]], [[LaurentElement.parse("pi^-1", p3)]])
    with pytest.raises(UnsupportedModule):
        compute_cohomology(M)


def test_single_module_runtime_bound():
    t = time.perf_counter()
    euler_check(tensor(induced_unramified(RingParams(5, 2), 2), cyclotomic_twist(RingParams(5, 2), 1)))
    assert time.perf_counter() - t < 60
