"""Exact linear algebra over the chain ring Z/p^N.

Every ideal of Z/p^N is (p^v), so Smith normal form needs only a pivot of
minimal valuation at each step.  Matrices are int64 numpy arrays with entries
in [0, p^N); all updates are reduced immediately, which keeps products far
from overflow for the moduli used here (p^N well below 2^20).

Submodules are described by generator columns; quotients of free modules by
diagonal relations (mixed torsion) are handled by appending relation columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def valuations(arr: np.ndarray, p: int, N: int) -> np.ndarray:
    """Entrywise p-adic valuation, N for entries that vanish mod p^N."""
    arr = np.asarray(arr, dtype=np.int64) % p ** N
    out = np.zeros(arr.shape, dtype=np.int64)
    pk = 1
    for _ in range(N):
        pk *= p
        out += (arr % pk == 0)
    return out


@dataclass
class SNF:
    """U @ A @ V = diag(p^vals) over Z/p^N (vals[i] = N marks a zero pivot)."""

    vals: list
    U: np.ndarray | None
    V: np.ndarray | None
    rank: int


def smith_normal_form(A, p: int, N: int, want_u: bool = False, want_v: bool = False) -> SNF:
    """Smith normal form by minimal-valuation pivoting.

    The pivot is the first entry of least valuation in column-major order of
    the remaining block, which makes the transforms reproducible.
    """
    m_mod = p ** N
    A = np.array(A, dtype=np.int64, copy=True) % m_mod
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    m, k = A.shape
    U = np.eye(m, dtype=np.int64) if want_u else None
    V = np.eye(k, dtype=np.int64) if want_v else None
    vals = []
    r = 0
    while r < min(m, k):
        sub = A[r:, r:]
        nz = sub != 0
        if not nz.any():
            break
        unit = sub % p != 0
        if unit.any():
            v = 0
            mask = unit
        else:
            vv = valuations(sub, p, N)
            v = int(vv.min())
            mask = vv == v
        col = int(np.argmax(mask.any(axis=0)))
        row = int(np.argmax(mask[:, col]))
        i, j = r + row, r + col
        if i != r:
            A[[r, i]] = A[[i, r]]
            if U is not None:
                U[[r, i]] = U[[i, r]]
        if j != r:
            A[:, [r, j]] = A[:, [j, r]]
            if V is not None:
                V[:, [r, j]] = V[:, [j, r]]
        pv = p ** v
        u = int(A[r, r]) // pv
        uinv = pow(u, -1, m_mod)
        if uinv != 1:
            A[r] = A[r] * uinv % m_mod
            if U is not None:
                U[r] = U[r] * uinv % m_mod
        # clear column r below the pivot
        t = A[r + 1 :, r] // pv
        rows = np.flatnonzero(t)
        if rows.size:
            rr = rows + r + 1
            A[rr] = (A[rr] - np.outer(t[rows], A[r])) % m_mod
            if U is not None:
                U[rr] = (U[rr] - np.outer(t[rows], U[r])) % m_mod
        # clear row r right of the pivot (column r is now zero off the pivot)
        t = A[r, r + 1 :] // pv
        cols = np.flatnonzero(t)
        if cols.size:
            cc = cols + r + 1
            A[r, cc] = 0
            if V is not None:
                V[:, cc] = (V[:, cc] - np.outer(V[:, r], t[cols])) % m_mod
        vals.append(v)
        r += 1
    return SNF(vals, U, V, r)


def matmul(A, B, m_mod: int) -> np.ndarray:
    """Product mod m_mod; splits the inner dimension so int64 sums cannot overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    chunk = max(1, (2 ** 62) // (m_mod * m_mod))
    if A.shape[1] <= chunk:
        return (A @ B) % m_mod
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, A.shape[1], chunk):
        out = (out + A[:, s : s + chunk] @ B[s : s + chunk]) % m_mod
    return out


def kernel(A, p: int, N: int, row_exps=None) -> np.ndarray:
    """Generators (as columns) of {x : A x = 0 in the target}.

    ``row_exps`` gives the torsion exponent of each target coordinate
    (default N); a target coordinate with exponent e is read mod p^e.
    """
    A = np.asarray(A, dtype=np.int64)
    m, k = A.shape
    if row_exps is not None:
        row_exps = np.asarray(row_exps, dtype=np.int64)
        extra = np.flatnonzero(row_exps < N)
        if extra.size:
            rel = np.zeros((m, extra.size), dtype=np.int64)
            rel[extra, np.arange(extra.size)] = p ** row_exps[extra]
            A = np.hstack([A, rel])
    snf = smith_normal_form(A, p, N, want_v=True)
    V = snf.V
    gens = []
    for i in range(A.shape[1]):
        v = snf.vals[i] if i < snf.rank else N
        if v == 0:
            continue
        col = V[:k, i] * (p ** (N - v)) % p ** N
        if col.any():
            gens.append(col)
    if not gens:
        return np.zeros((k, 0), dtype=np.int64)
    return np.array(gens, dtype=np.int64).T


def relation_columns(exps, p: int, N: int) -> np.ndarray:
    """Columns p^e * e_i for coordinates whose torsion exponent e is below N."""
    exps = np.asarray(exps, dtype=np.int64)
    idx = np.flatnonzero(exps < N)
    rel = np.zeros((exps.size, idx.size), dtype=np.int64)
    rel[idx, np.arange(idx.size)] = p ** exps[idx]
    return rel


def cyclic_exponents_of_span(G, p: int, N: int) -> list[int]:
    """Exponents e with span(G) = sum of Z/p^e inside (Z/p^N)^m, descending."""
    snf = smith_normal_form(G, p, N)
    return sorted((N - v for v in snf.vals if v < N), reverse=True)


@dataclass
class Subquotient:
    """(span Z + span S) / span S, decomposed into cyclic factors.

    ``exponents[k]`` is the exponent of the k-th cyclic factor and
    ``representatives[:, k]`` a generator of it, as a combination of the
    columns of Z expressed in ambient coordinates.
    """

    exponents: list
    representatives: np.ndarray
    coords: object  # callable: ambient vector(s) -> coordinates in the factor basis


def subquotient(Z, S, p: int, N: int) -> Subquotient:
    """Decompose (<Z> + <S>)/<S> inside (Z/p^N)^m.

    The quotient (Z/p^N)^m / <S> is put in Smith form, ``U S V = D``; the
    image of Z there is rescaled into (Z/p^N)^m so that its span has the same
    isomorphism type, and a second Smith form splits it into cyclic factors.
    """
    m_mod = p ** N
    Z = np.asarray(Z, dtype=np.int64)
    if Z.ndim == 1:
        Z = Z.reshape(-1, 1)
    S = np.asarray(S, dtype=np.int64)
    m = Z.shape[0]
    if S.ndim != 2 or S.shape[1] == 0:
        S = np.zeros((m, 1), dtype=np.int64)
    snf_s = smith_normal_form(S, p, N, want_u=True)
    U = snf_s.U
    ord_exp = np.full(m, N, dtype=np.int64)
    ord_exp[: snf_s.rank] = snf_s.vals
    scale = np.array([p ** (N - e) for e in ord_exp], dtype=np.int64).reshape(-1, 1)
    keep = np.flatnonzero(ord_exp > 0)
    U_keep = U[keep]
    scale_keep = scale[keep]

    def to_quot(X):
        X = np.asarray(X, dtype=np.int64)
        return matmul(U_keep, X, m_mod) * scale_keep % m_mod

    W = to_quot(Z) if Z.shape[1] else np.zeros((keep.size, 0), dtype=np.int64)
    if W.shape[1] == 0 or W.shape[0] == 0:
        return Subquotient([], np.zeros((m, 0), dtype=np.int64), lambda X: np.zeros((0,) + np.shape(X)[1:], dtype=np.int64))
    snf_w = smith_normal_form(W, p, N, want_u=True, want_v=True)
    exps = []
    reps = []
    picked = []
    for i in range(snf_w.rank):
        v = snf_w.vals[i]
        if v < N:
            exps.append(N - v)
            reps.append(matmul(Z, snf_w.V[:, i : i + 1], m_mod)[:, 0])
            picked.append(i)
    reps_arr = np.array(reps, dtype=np.int64).T if reps else np.zeros((m, 0), dtype=np.int64)
    Uw = snf_w.U[picked] if picked else np.zeros((0, W.shape[0]), dtype=np.int64)
    shifts = [p ** snf_w.vals[i] for i in picked]

    def coords(X):
        """Coordinates of ambient vectors lying in <Z> + <S>, one row per factor."""
        Y = matmul(Uw, to_quot(X), m_mod)
        out = np.zeros_like(Y)
        for r, (s, e) in enumerate(zip(shifts, exps)):
            if (Y[r] % s).any():
                raise ValueError("vector is not in the span of the cocycles")
            out[r] = (Y[r] // s) % p ** e
        return out

    return Subquotient(exps, reps_arr, coords)
