"""Ground truth for the characteristic-p side.

A FiniteRep is a representation of G = Gal(F_q-bar / F_q) (procyclic, generated
by Frob_q) on V = (Z/p^n)^d that factors through Gal(F_{q^m} / F_q): Frob_q acts
by rho with rho^m = 1.  Its cohomology is that of the procyclic group:
H^0 = ker(rho - 1), H^1 = coker(rho - 1), nothing above.

The other route builds D(V) = (F_{q^m} (x) V)^{Frob_q (x) rho} with
phi = sigma (x) 1 and takes the cohomology of phi - 1 on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentRep
from .finite_field import FiniteField, is_prime
from .herr import CohomologyGroup, c1_cohomology_finite_field
from .linalg import kernel, smith_normal_form
from .modules import PhiModuleCharP


@dataclass
class FiniteRep:
    q: int
    m: int
    rho: np.ndarray
    n: int = 1

    def __post_init__(self):
        self.rho = np.array(self.rho, dtype=np.int64) % self.modulus
        if self.rho.ndim != 2 or self.rho.shape[0] != self.rho.shape[1]:
            raise InconsistentRep("rho must be a square matrix")

    @property
    def p(self) -> int:
        q = self.q
        for p in range(2, q + 1):
            if q % p == 0:
                return p
        raise ValueError("q must be a prime power")

    @property
    def f(self) -> int:
        f, q = 0, self.q
        while q > 1:
            q //= self.p
            f += 1
        return f

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    @property
    def d(self) -> int:
        return self.rho.shape[0]

    def check(self) -> None:
        p, q = self.p, self.q
        if p ** self.f != q or not is_prime(p):
            raise InconsistentRep(f"q = {q} is not a prime power")
        if self.m < 1:
            raise InconsistentRep("m must be positive")
        if self.d and smith_normal_form(self.rho, p, self.n).vals.count(0) != self.d:
            raise InconsistentRep("rho is not invertible")
        acc = np.eye(self.d, dtype=np.int64)
        for _ in range(self.m):
            acc = acc @ self.rho % self.modulus
        if not np.array_equal(acc, np.eye(self.d, dtype=np.int64) % self.modulus):
            raise InconsistentRep(f"rho^{self.m} is not the identity")

    def describe(self) -> str:
        rows = "; ".join(" ".join(str(int(v)) for v in row) for row in self.rho)
        return f"q={self.q} m={self.m} d={self.d} rho=[{rows}]"


def procyclic_cohomology(V: FiniteRep):
    """(H^0, H^1, vanishing flag) via the Smith form of rho - 1."""
    p, n, d = V.p, V.n, V.d
    if d == 0:
        return CohomologyGroup(p, 0, []), CohomologyGroup(p, 1, []), True
    A = (V.rho - np.eye(d, dtype=np.int64)) % V.modulus
    snf = smith_normal_form(A, p, n)
    vals = snf.vals + [n] * (d - snf.rank)
    # ker and coker of diag(p^v) on (Z/p^n)^d are both sum of Z/p^v
    exps = [v for v in vals if v > 0]
    return CohomologyGroup(p, 0, exps), CohomologyGroup(p, 1, list(exps)), True


# -- D(V) ----------------------------------------------------------------------------------


def _solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """One solution of A x = b over F_p, or None."""
    A = np.asarray(A, dtype=np.int64) % p
    aug = np.hstack([A, np.asarray(b, dtype=np.int64).reshape(-1, 1) % p])
    rows, cols = A.shape
    piv_cols = []
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(aug[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        aug[[r, i]] = aug[[i, r]]
        aug[r] = aug[r] * pow(int(aug[r, c]), -1, p) % p
        for k in range(rows):
            if k != r and aug[k, c]:
                aug[k] = (aug[k] - aug[k, c] * aug[r]) % p
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    if aug[r:, -1].any():
        return None
    x = np.zeros(cols, dtype=np.int64)
    for k, c in enumerate(piv_cols):
        x[c] = aug[k, -1]
    return x


def _rank_mod_p(A, p) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return smith_normal_form(A, p, 1).rank


@dataclass
class DOfV:
    """D(V) together with the data used to build it."""

    module: PhiModuleCharP
    big: FiniteField  # F_{q^m}
    root: tuple  # image of the generator of F_q in F_{q^m}
    basis: list  # F_q-basis of D(V): each a list of d elements of F_{q^m}


def _embed_root(F: FiniteField, K: FiniteField):
    """A root in K of the minimal polynomial of F's generator (first in enumeration order)."""
    if F.f == 1:
        return K.one
    for x in K.elements():
        acc = K.zero
        for c in reversed(F.minpoly):
            acc = K.add(K.mul(acc, x), K(c))
        if K.is_zero(acc):
            return x
    raise InconsistentRep("F_q does not embed in F_{q^m}")


def d_of_v(rep: FiniteRep) -> DOfV:
    """The fixed space of Frob_q (x) rho in F_{q^m} (x) V as an etale phi-module over F_q."""
    rep.check()
    if rep.n != 1:
        raise InconsistentRep("D(V) is built for F_p-representations (n = 1)")
    p, f, m, d = rep.p, rep.f, rep.m, rep.d
    F = FiniteField(p, f)
    K = FiniteField(p, f * m)
    r = _embed_root(F, K)
    fm = f * m
    dim = d * fm

    def flat(vec):
        return np.array([c for x in vec for c in x], dtype=np.int64)

    def unflat(arr):
        return [tuple(int(v) % p for v in arr[k * fm : (k + 1) * fm]) for k in range(d)]

    def frob_rho(vec):
        fr = [K.frob(x, f) for x in vec]
        out = []
        for i in range(d):
            acc = K.zero
            for j in range(d):
                acc = K.add(acc, K.scale(int(rep.rho[i, j]), fr[j]))
            out.append(acc)
        return out

    def unit(idx):
        e = np.zeros(dim, dtype=np.int64)
        e[idx] = 1
        return unflat(e)

    T = np.array([flat(frob_rho(unit(i))) for i in range(dim)], dtype=np.int64).T
    fixed = kernel((T - np.eye(dim, dtype=np.int64)) % p, p, 1)
    powers = [K.pow(r, t) for t in range(f)]

    def fq_span(vec):
        return [flat([K.mul(g, x) for x in vec]) for g in powers]

    basis, cols = [], []
    for k in range(fixed.shape[1]):
        cand = unflat(fixed[:, k])
        new = fq_span(cand)
        if _rank_mod_p(np.array(cols + new).T, p) == len(cols) + f:
            basis.append(cand)
            cols += new
        if len(basis) == d:
            break
    if len(basis) != d:
        raise InconsistentRep(f"D(V) has dimension {len(basis)} over F_{rep.q}, expected {d}")
    S = np.array(cols, dtype=np.int64).T  # columns g^t b_k, ordered k-major
    Phi = [[None] * d for _ in range(d)]
    for j, b in enumerate(basis):
        img = [K.frob(x, 1) for x in b]
        sol = _solve_mod_p(S, flat(img), p)
        if sol is None:
            raise InconsistentRep("phi does not preserve D(V)")
        for k in range(d):
            Phi[k][j] = tuple(int(v) for v in sol[k * f : (k + 1) * f])
    return DOfV(PhiModuleCharP(F, Phi), K, r, basis)


@dataclass
class Theorem2Verdict:
    rep: FiniteRep
    galois: tuple
    phi_side: tuple
    dim_d: int

    @property
    def ok(self) -> bool:
        g0, g1, _ = self.galois
        c0, c1 = self.phi_side
        return (
            g0.exponents == c0.exponents
            and g1.exponents == c1.exponents
            and self.galois[2]
            and self.dim_d == self.rep.d
        )

    def line(self) -> str:
        g0, g1, _ = self.galois
        c0, c1 = self.phi_side
        return (
            f"{self.rep.describe()}: Galois ({g0.format()}, {g1.format()}) "
            f"phi ({c0.format()}, {c1.format()}) H^2 = 0 {'ok' if self.ok else 'MISMATCH'}"
        )


def compare_theorem2(rep: FiniteRep) -> Theorem2Verdict:
    """Galois cohomology of V against the cohomology of phi - 1 on D(V)."""
    galois = procyclic_cohomology(rep)
    D = d_of_v(rep)
    c0, c1 = c1_cohomology_finite_field(D.module)
    return Theorem2Verdict(rep, galois, (c0, c1), D.module.rank)


# -- random representations -----------------------------------------------------------------

QS = (2, 3, 4, 9)


def _random_invertible(rng, p: int, d: int) -> np.ndarray:
    while True:
        P = rng.integers(0, p, (d, d))
        if _rank_mod_p(P, p) == d:
            return P.astype(np.int64)


def _order(rho: np.ndarray, p: int, limit: int) -> int | None:
    d = rho.shape[0]
    acc = rho.copy()
    for k in range(1, limit + 1):
        if np.array_equal(acc, np.eye(d, dtype=np.int64)):
            return k
        acc = acc @ rho % p
    return None


def random_rep(rng, q: int | None = None, max_m: int = 4, max_d: int = 3) -> FiniteRep:
    """Rejection-sample an invertible rho of order o <= max_m; m is a random multiple of o."""
    if q is None:
        q = int(rng.choice(QS))
    d = int(rng.integers(1, max_d + 1))
    p = next(k for k in range(2, q + 1) if q % k == 0)
    while True:
        rho = _random_invertible(rng, p, d)
        o = _order(rho, p, max_m)
        if o is not None:
            break
    m = o * int(rng.integers(1, max_m // o + 1))
    return FiniteRep(q, m, rho)


def theorem2_suite(seed: int = 0, cases: int = 50) -> list[Theorem2Verdict]:
    rng = np.random.default_rng(seed)
    out = []
    for k in range(cases):
        rep = random_rep(rng, q=QS[k % len(QS)])
        out.append(compare_theorem2(rep))
    return out
