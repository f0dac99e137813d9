import time

import numpy as np
import pytest

from phigamma import FiniteRep, InconsistentRep, compare_theorem2, d_of_v, procyclic_cohomology
from phigamma.oracle import random_rep, theorem2_suite


def test_trivial_rep():
    V = FiniteRep(3, 1, [[1]])
    h0, h1, vanish = procyclic_cohomology(V)
    assert h0.exponents == [1] and h1.exponents == [1] and vanish
    assert compare_theorem2(V).ok


def test_artin_schreier_cases():
    for q in (2, 4):
        v = compare_theorem2(FiniteRep(q, 1, [[1]]))
        assert v.ok
        assert v.phi_side[0].exponents == [1] and v.phi_side[1].exponents == [1]


def test_permutation_rep():
    V = FiniteRep(3, 2, [[0, 1], [1, 0]])
    v = compare_theorem2(V)
    assert v.ok
    assert v.galois[0].exponents == [1]


def test_dv_dimension():
    D = d_of_v(FiniteRep(9, 2, [[2]]))
    assert D.module.rank == 1


def test_inconsistent_reps():
    with pytest.raises(InconsistentRep):
        FiniteRep(3, 1, [[2]]).check()
    with pytest.raises(InconsistentRep):
        FiniteRep(6, 1, [[1]]).check()
    with pytest.raises(InconsistentRep):
        FiniteRep(3, 1, [[0]]).check()


def test_random_reps_consistent():
    rng = np.random.default_rng(3)
    for _ in range(20):
        random_rep(rng).check()


def test_suite_deterministic_and_fast():
    t = time.perf_counter()
    a = [v.line() for v in theorem2_suite(seed=1, cases=20)]
    assert time.perf_counter() - t < 10
    assert a == [v.line() for v in theorem2_suite(seed=1, cases=20)]
