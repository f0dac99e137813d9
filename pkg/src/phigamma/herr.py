"""Herr complex C2 and the Artin-Schreier complex C1: cohomology by exact linear algebra.

Strategy.  For a module M with Phi of pole order C and Gam without poles, the
submodule M^{>=c} of elements of pi-valuation >= c, with
c = n - 1 + ceil((C + 1) / (p - 1)), is stable under phi and gamma, and phi
strictly raises valuations on it, so phi - 1 is bijective there
(x = -sum phi^k(y)).  Its Herr complex is therefore acyclic and C2(M) has the
cohomology of the quotient complex Q = C2(M / M^{>=c}).

Q is the union of the finite subcomplexes X(B):

    X0 = M_[-B, c),   X1 = M_[L, c) + M_[-B, c),   X2 = M_[L, c)

where L <= -B is the lowest exponent reached by phi(X0).  Cohomology commutes
with this union, so H^i(M) is the stable value of the image of H^i(X(B)) in
H^i(X(B')) for B' >> B.  Those images are computed with Smith forms over
Z/p^n; torsion of individual generators enters through relation columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import CoeffElement
from .errors import BelowThreshold, NoConvergence, NoStabilization, UnsupportedModule, WindowTooSmall
from .laurent import (
    INF,
    LaurentElement,
    _gamma_unit_inverse,
    coeff_matrix,
    conv,
    gamma_of_pi,
    phi_pi_power,
)
from .linalg import kernel, matmul, relation_columns, smith_normal_form, subquotient
from .modules import PhiGammaModule, PhiModuleCharP, apply_phi_vector

# (B, B') pairs tried in order; B' is where the classes coming from X(B) are tested for death
DEFAULT_SCHEDULE = (4, 8, 16, 32, 64, 128, 256)


@dataclass
class CohomologyGroup:
    """A finite abelian p-group: cyclic orders p^e (descending) and one representative each."""

    p: int
    degree: int
    exponents: list
    representatives: list = field(default_factory=list)
    window_used: tuple | None = None

    def __post_init__(self):
        order = sorted(range(len(self.exponents)), key=lambda k: -self.exponents[k])
        self.exponents = [self.exponents[k] for k in order]
        if self.representatives:
            self.representatives = [self.representatives[k] for k in order]

    @property
    def cyclic_orders(self) -> list[int]:
        return [self.p ** e for e in self.exponents]

    @property
    def length(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.p ** self.length

    def format(self) -> str:
        if not self.exponents:
            return "0"
        return " (+) ".join(f"Z/{self.p ** e}" for e in self.exponents)

    def __str__(self):
        return f"H^{self.degree} = {self.format()}"


def contraction_threshold(M: PhiGammaModule) -> int:
    """Smallest c with val(phi(x)) > val(x) for every x of valuation >= c."""
    p, n = M.params.p, M.params.n
    C = M.phi_pole_order()
    return n - 1 + -(-(C + 1) // (p - 1))


def _phi_power_lowexp(params, j: int) -> int:
    P = phi_pi_power(params, j)
    return P.lo


class HerrEngine:
    """Builds the truncated operators of phi and gamma on M / M^{>=c} and computes cohomology."""

    def __init__(self, M: PhiGammaModule, max_window: int = DEFAULT_SCHEDULE[-1]):
        if M.gamma_pole_order() > 0:
            raise UnsupportedModule("the engine needs Gam entries without poles (gamma must preserve pi-valuation)")
        self.M = M
        self.params = M.params
        self.p = M.params.p
        self.n = M.params.n
        self.d = M.rank
        self.f = M.params.f
        self.c = contraction_threshold(M)
        self.max_window = max_window
        self._built_B = None

    # -- coordinates -------------------------------------------------------------

    def block(self) -> int:
        return self.d * self.f

    def exps(self, lo: int) -> np.ndarray:
        """Torsion exponent of every coordinate of the window [lo, c)."""
        per = np.repeat(np.array(self.M.torsion, dtype=np.int64), self.f)
        return np.tile(per, self.c - lo)

    def dim(self, lo: int) -> int:
        return (self.c - lo) * self.block()

    def vector_to_series(self, vec, lo: int) -> list[LaurentElement]:
        """Coordinates on [lo, c) -> list of d Laurent polynomials."""
        arr = np.asarray(vec, dtype=np.int64).reshape(self.c - lo, self.d, self.f)
        return [LaurentElement(self.params, lo, arr[:, i, :]) for i in range(self.d)]

    def series_to_vector(self, xs, lo: int) -> np.ndarray:
        arr = np.zeros((self.c - lo, self.d, self.f), dtype=np.int64)
        for i, x in enumerate(xs):
            if x.is_zero():
                continue
            if x.lo < lo:
                raise WindowTooSmall(f"element has terms below pi^{lo}")
            top = min(x.top, self.c - 1)
            if top >= x.lo:
                arr[x.lo - lo : top - lo + 1, i, :] = x.data[: top - x.lo + 1]
        return arr.reshape(-1) % self.params.modulus

    # -- operator matrices -----------------------------------------------------------

    def _phi_lowest(self, B: int) -> int:
        lo = min(_phi_power_lowexp(self.params, j) for j in range(-B, min(0, self.c)))  if B > 0 else 0
        return min(lo - self.M.phi_pole_order(), -B)

    def build(self, B: int):
        """Operator matrices for the largest window X(B)."""
        if self._built_B is not None and self._built_B >= B:
            return
        params, d, f, c = self.params, self.d, self.f, self.c
        m = params.modulus
        L = self._phi_lowest(B)
        need = c - 1 - L
        M = self.M.at_precision(need + 1)
        nrow = self.dim(L)
        blk = self.block()
        # sigma(g^t) and g^t multiplication matrices
        sig_t = [coeff_matrix(CoeffElement(params, _unit(f, t)).sigma()) for t in range(f)]
        mul_t = [coeff_matrix(CoeffElement(params, _unit(f, t))) for t in range(f)]
        # phi: columns [-B, c) -> rows [L, c)
        PH = np.zeros((nrow, self.dim(-B)), dtype=np.int64)
        for j in range(-B, c):
            P = phi_pi_power(params, j)
            if P.lo >= c:
                continue
            for i in range(d):
                for k in range(d):
                    e = M.Phi[k][i]
                    if e.is_zero():
                        continue
                    lo = P.lo + e.lo
                    if lo >= c:
                        continue
                    if e.hi != INF and e.hi < c - 1 - P.lo:
                        raise WindowTooSmall(f"Phi entries must be known to O(pi^{c - P.lo}) for this window")
                    prod = conv(params, P.data, e.data, c - lo)
                    for t in range(f):
                        col = ((j + B) * d + i) * f + t
                        vals = prod @ sig_t[t] % m if f > 1 else prod
                        r0 = (lo - L) * blk + k * f
                        idx = r0 + np.arange(c - lo) * blk
                        for s in range(f):
                            PH[idx + s, col] = (PH[idx + s, col] + vals[:, s]) % m
        # gamma: columns [L, c) -> rows [L, c)
        GA = np.zeros((nrow, nrow), dtype=np.int64)
        gam = gamma_of_pi(params, self.M.act)
        winv = _gamma_unit_inverse(params, self.M.act.a, max(c - L + 1, 1))
        powers = {}
        cur = LaurentElement.constant(params, 1)
        for j in range(0, c):
            powers[j] = cur
            cur = (cur * gam).truncate(c - 1)
        cur = LaurentElement.constant(params, 1)
        for j in range(-1, L - 1, -1):
            # gamma(pi)^j = pi^j w^{-j}; w^{-j} is needed mod pi^(c - j)
            cur = (cur * winv).truncate(c - 1 - L)
            powers[j] = cur.truncate(c - 1 - j).shift(j)
        for j in range(L, c):
            G = powers[j]
            for i in range(d):
                for k in range(d):
                    e = M.Gam[k][i]
                    if e.is_zero():
                        continue
                    lo = G.lo + e.lo
                    if lo >= c:
                        continue
                    prod = conv(params, G.data, e.data, c - lo)
                    for t in range(f):
                        col = ((j - L) * d + i) * f + t
                        vals = prod @ mul_t[t] % m if f > 1 else prod
                        r0 = (lo - L) * blk + k * f
                        idx = r0 + np.arange(c - lo) * blk
                        for s in range(f):
                            GA[idx + s, col] = (GA[idx + s, col] + vals[:, s]) % m
        # reduce rows by generator torsion
        ex = self.exps(L)
        for e in set(ex.tolist()):
            if e < self.n:
                rows = ex == e
                PH[rows] %= self.p ** e
                GA[rows] %= self.p ** e
        self.PH, self.GA, self.L, self._built_B = PH, GA, L, B

    def lowest(self, B: int) -> int:
        """L(B): lowest exponent of the degree-1 and degree-2 windows."""
        self.build(B)
        blk = self.block()
        cols = self.PH[:, self.dim(-self._built_B) - self.dim(-B) :]
        rows = np.flatnonzero(cols.any(axis=1))
        low = self.L + int(rows[0]) // blk if rows.size else 0
        return min(low, -B)

    def phi_block(self, B: int, L: int) -> np.ndarray:
        """phi: M_[-B,c) -> M_[L,c)."""
        self.build(B)
        r0 = (L - self.L) * self.block()
        c0 = self.dim(-self._built_B) - self.dim(-B)
        return self.PH[r0:, c0:]

    def gamma_block(self, lo: int) -> np.ndarray:
        """gamma on M_[lo,c)."""
        r0 = (lo - self.L) * self.block()
        return self.GA[r0:, r0:]

    def embed(self, lo_small: int, lo_big: int) -> np.ndarray:
        """Inclusion M_[lo_small,c) -> M_[lo_big,c) (lo_big <= lo_small)."""
        big, small = self.dim(lo_big), self.dim(lo_small)
        E = np.zeros((big, small), dtype=np.int64)
        E[big - small :, :] = np.eye(small, dtype=np.int64)
        return E

    def differentials(self, B: int):
        """(alpha, beta, L) for X(B)."""
        L = self.lowest(B)
        m = self.params.modulus
        PHI = (self.phi_block(B, L) - self.embed(-B, L)) % m
        G1 = (self.gamma_block(L) - np.eye(self.dim(L), dtype=np.int64)) % m
        G0 = (self.gamma_block(-B) - np.eye(self.dim(-B), dtype=np.int64)) % m
        alpha = np.vstack([PHI, G0])
        beta = np.hstack([G1, (-PHI) % m])
        return alpha, beta, L

    def degree_exps(self, B: int, L: int):
        return self.exps(-B), np.concatenate([self.exps(L), self.exps(-B)]), self.exps(L)

    def embed_degree1(self, B: int, L: int, B2: int, L2: int) -> np.ndarray:
        E1 = self.embed(L, L2)
        E0 = self.embed(-B, -B2)
        out = np.zeros((E1.shape[0] + E0.shape[0], E1.shape[1] + E0.shape[1]), dtype=np.int64)
        out[: E1.shape[0], : E1.shape[1]] = E1
        out[E1.shape[0] :, E1.shape[1] :] = E0
        return out

    # -- cohomology -------------------------------------------------------------------

    def image_groups(self, B: int, B2: int) -> list:
        """Subquotients I^i(B, B2) = image of H^i(X(B)) in H^i(X(B2)), i = 0, 1, 2."""
        p, N = self.p, self.n
        self.build(B2)
        a1, b1, L = self.differentials(B)
        a2, b2, L2 = self.differentials(B2)
        e0, e1, e2 = self.degree_exps(B, L)
        f0, f1, f2 = self.degree_exps(B2, L2)
        out = []
        # degree 0
        Z0 = kernel(a1, p, N, row_exps=e1)
        Z0b = self.embed(-B, -B2) @ Z0
        out.append((subquotient(Z0b, relation_columns(f0, p, N), p, N), Z0b, ("X0", -B2)))
        # degree 1
        Z1 = kernel(b1, p, N, row_exps=e2)
        Z1b = self.embed_degree1(B, L, B2, L2) @ Z1
        S1 = np.hstack([a2, relation_columns(f1, p, N)])
        out.append((subquotient(Z1b, S1, p, N), Z1b, ("X1", L2, -B2)))
        # degree 2
        Z2b = self.embed(L, L2)
        S2 = np.hstack([b2, relation_columns(f2, p, N)])
        out.append((subquotient(Z2b, S2, p, N), Z2b, ("X2", L2)))
        return out


def _unit(f, t):
    v = [0] * f
    v[t] = 1
    return tuple(v)


# -- stabilized cohomology ------------------------------------------------------------


class CohomologyResult:
    """H^0, H^1, H^2 of C2(M) together with the data needed to name classes."""

    def __init__(self, engine: HerrEngine, B: int, B2: int, pieces, history):
        self.engine = engine
        self.M = engine.M
        self.B, self.B2 = B, B2
        self.history = history
        self._pieces = pieces
        L2 = engine.lowest(B2)
        self.L2 = L2
        self.groups = []
        for deg, (sq, _, _) in enumerate(pieces):
            reps = [self.vector_to_cocycle(deg, sq.representatives[:, k]) for k in range(len(sq.exponents))]
            self.groups.append(CohomologyGroup(engine.p, deg, list(sq.exponents), reps, window_used=(-B2, engine.c)))
        # CohomologyGroup sorts its factors; keep the permutation for coordinates
        self._order = [sorted(range(len(sq.exponents)), key=lambda k: -sq.exponents[k]) for sq, _, _ in pieces]

    @property
    def window(self) -> tuple:
        return (-self.B2, self.engine.c)

    def __getitem__(self, i: int) -> CohomologyGroup:
        return self.groups[i]

    def lengths(self) -> list[int]:
        return [g.length for g in self.groups]

    # coordinates on X(B2): degree 0 on [-B2, c), degree 1 on [L2, c) + [-B2, c), degree 2 on [L2, c)
    def vector_to_cocycle(self, degree: int, vec):
        E, B2, L2 = self.engine, self.B2, self.L2
        if degree == 0:
            return E.vector_to_series(vec, -B2)
        if degree == 1:
            n1 = E.dim(L2)
            return (E.vector_to_series(vec[:n1], L2), E.vector_to_series(vec[n1:], -B2))
        return E.vector_to_series(vec, L2)

    def cocycle_to_vector(self, degree: int, cocycle) -> np.ndarray:
        E, B2, L2 = self.engine, self.B2, self.L2
        if degree == 0:
            return E.series_to_vector(cocycle, -B2)
        if degree == 1:
            xs, ys = cocycle
            return np.concatenate([E.series_to_vector(xs, L2), E.series_to_vector(ys, -B2)])
        return E.series_to_vector(cocycle, L2)

    def coordinates(self, degree: int, cocycle) -> list[int]:
        """Coordinates of the class of a cocycle in the generator basis of H^degree."""
        vec = self.cocycle_to_vector(degree, cocycle).reshape(-1, 1)
        raw = self._pieces[degree][0].coords(vec)[:, 0]
        return [int(raw[k]) for k in self._order[degree]]

    def report_lines(self) -> list[str]:
        return [str(g) for g in self.groups]


def compute_cohomology(M: PhiGammaModule, start: int = 4, max_window: int = 256) -> CohomologyResult:
    """Stabilized H^0, H^1, H^2.

    For B = start, 2 start, ... the image of H^i(X(B)) in H^i(X(2B)) is
    computed; the first time two consecutive results agree in all degrees the
    later one is returned.  NoStabilization when 2B would exceed max_window.
    """
    cache = M.__dict__.setdefault("_cohomology_cache", {})
    key = (start, max_window)
    if key in cache:
        return cache[key]
    engine = HerrEngine(M, max_window)
    history = []
    prev = None
    B = max(1, start)
    while 2 * B <= max_window:
        pieces = engine.image_groups(B, 2 * B)
        exps = [sorted(sq.exponents, reverse=True) for sq, _, _ in pieces]
        history.append(((-B, -2 * B), exps))
        if prev is not None and exps == prev:
            result = CohomologyResult(engine, B, 2 * B, pieces, history)
            cache[key] = result
            return result
        prev = exps
        B *= 2
    raise NoStabilization(f"cohomology did not stabilize up to window {max_window}: {history}")


def h0(M: PhiGammaModule, **kw) -> CohomologyGroup:
    return compute_cohomology(M, **kw)[0]


def h1(M: PhiGammaModule, **kw) -> CohomologyGroup:
    return compute_cohomology(M, **kw)[1]


def h2(M: PhiGammaModule, **kw) -> CohomologyGroup:
    return compute_cohomology(M, **kw)[2]


@dataclass
class EulerReport:
    lengths: list
    alternating_sum: int
    plain_sum: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.alternating_sum == self.expected

    def lines(self) -> list[str]:
        l0, l1, l2 = self.lengths
        return [
            f"lengths = ({l0}, {l1}, {l2})",
            f"chi = {self.alternating_sum} (expected {self.expected})",
            f"plain sum = {self.plain_sum} (the unsigned reading; cannot equal {self.expected})",
        ]


def euler_check(M: PhiGammaModule, **kw) -> EulerReport:
    """l(H^0) - l(H^1) + l(H^2) against -[K:Q_p] l(V) = -f * sum n_i."""
    ls = compute_cohomology(M, **kw).lengths()
    return EulerReport(ls, ls[0] - ls[1] + ls[2], sum(ls), -M.length)


def h2_via_duality(M: PhiGammaModule, **kw) -> CohomologyGroup:
    """H^2(M) read off as H^0 of Hom(M, Omega) (a finite p-group is isomorphic to its dual)."""
    from .modules import hom_dual

    g = h0(hom_dual(M), **kw)
    return CohomologyGroup(g.p, 2, list(g.exponents), [], window_used=g.window_used)


# -- the contraction solver ----------------------------------------------------------


def solve_phi_minus_one(M: PhiGammaModule, y, hi: int):
    """x with (phi - 1) x = y, for y of valuation >= c; x = -sum_k phi^k(y) mod pi^(hi+1).

    ``y`` is a list of rank(M) Laurent series.  The series converges because
    phi strictly raises valuations from c on.
    """
    c = contraction_threshold(M)
    for comp in y:
        if not comp.is_zero() and comp.lo < c:
            raise BelowThreshold(f"input has a term pi^{comp.lo} below the threshold c = {c}")
    M = M.at_precision(hi + 1)
    term = [comp.truncate(hi) for comp in y]
    acc = [LaurentElement.zero(M.params, hi) for _ in y]
    for _ in range(hi - c + 3):
        if all(t.is_zero() or t.lo > hi for t in term):
            return [(-a).truncate(hi) for a in acc]
        acc = [a + t for a, t in zip(acc, term)]
        low = min(t.lo for t in term if not t.is_zero())
        term = apply_phi_vector(M, term, hi=hi)
        new_low = min((t.lo for t in term if not t.is_zero()), default=INF)
        if new_low <= low:
            raise NoConvergence("phi did not raise the valuation; threshold mis-estimated")
    raise NoConvergence("series -sum phi^k(y) did not leave the window")


# -- characteristic p: the complex C1 --------------------------------------------------------


def c1_cohomology_finite_field(M: PhiModuleCharP):
    """(dim H^0, dim H^1) over F_p of 0 -> M -(phi-1)-> M -> 0, with bases.

    Returns two CohomologyGroup objects; representatives are F_p coordinate
    vectors on the basis (e_j g^t).
    """
    p = M.field.p
    A = M.phi_minus_one_matrix() % p
    n_dim = A.shape[0]
    if n_dim == 0:
        return CohomologyGroup(p, 0, []), CohomologyGroup(p, 1, [])
    K = kernel(A, p, 1)
    k_exps = [1] * K.shape[1]
    snf = smith_normal_form(A, p, 1, want_u=True)
    rank = snf.rank
    U_inv_rows = []
    # cokernel basis: vectors e with U e = standard basis vector beyond the rank
    Uinv = _inverse_mod_p(snf.U, p)
    coker = [Uinv[:, i] for i in range(rank, n_dim)]
    H0 = CohomologyGroup(p, 0, k_exps, [K[:, i] for i in range(K.shape[1])])
    H1 = CohomologyGroup(p, 1, [1] * len(coker), coker)
    return H0, H1


def _inverse_mod_p(U, p):
    n = U.shape[0]
    aug = np.hstack([U % p, np.eye(n, dtype=np.int64)])
    for col in range(n):
        piv = col + int(np.argmax(aug[col:, col] % p != 0))
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


def c1_class_is_zero(M: PhiModuleCharP, vec) -> bool:
    """Is the F_p-vector a boundary (phi - 1)(x), i.e. zero in H^1?"""
    p = M.field.p
    A = M.phi_minus_one_matrix() % p
    vec = np.asarray(vec, dtype=np.int64).reshape(-1, 1) % p
    r1 = smith_normal_form(A, p, 1).rank
    r2 = smith_normal_form(np.hstack([A, vec]), p, 1).rank
    return r1 == r2
