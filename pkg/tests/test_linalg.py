import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from phigamma.linalg import cyclic_exponents_of_span, kernel, matmul, smith_normal_form, subquotient


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_snf_factorization(m, k, seed):
    p, N = 3, 2
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 9, (m, k)) * rng.integers(0, 2, (m, k))
    snf = smith_normal_form(A, p, N, want_u=True, want_v=True)
    D = matmul(matmul(snf.U, A, 9), snf.V, 9)
    expect = np.zeros_like(D)
    for i, v in enumerate(snf.vals):
        expect[i, i] = p ** v % 9
    assert np.array_equal(D, expect)


def test_kernel_is_annihilated():
    A = np.array([[3, 0], [0, 1]])
    K = kernel(A, 3, 2)
    assert not (matmul(A, K, 9)).any()
    assert cyclic_exponents_of_span(K, 3, 2) == [1]


def test_subquotient_of_mixed_torsion():
    Z = np.eye(2, dtype=np.int64)
    S = np.array([[3], [0]])
    sq = subquotient(Z, S, 3, 2)
    assert sorted(sq.exponents, reverse=True) == [2, 1]
