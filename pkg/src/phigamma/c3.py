"""The complex C3 for a group generated by gamma, gamma' with gamma gamma' = gamma'^a gamma.

    C3(M): M --A0--> M^3 --A1--> M^3 --A2--> M

    A0 = (phi - 1, gamma - 1, gamma' - 1)^T
    A1 = [[gamma - 1,  1 - phi,        0        ],
          [gamma' - 1, 0,              1 - phi  ],
          [0,          gamma'^a - 1,   delta - gamma]]
    A2 = (gamma'^a - 1, delta - gamma, phi - 1)

with delta = 1 + gamma' + ... + gamma'^(a-1), the value of
(gamma'^a - 1)/(gamma' - 1) for integer a.  Operators compose right to left:
(A1 A0)_i = sum_j A1[i][j] A0[j].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotCommuting, NotEtale, ValidationError
from .herr import CohomologyGroup, compute_cohomology
from .laurent import LaurentElement, apply_gamma, apply_phi
from .linalg import relation_columns, subquotient
from .modules import (
    INF,
    Matrix,
    PhiGammaModule,
    ValidationReport,
    _reduce_entry,
    _sum,
    apply_gamma_vector,
    apply_phi_vector,
    identity_matrix,
    mat_det,
    mat_map,
    mat_mul,
    validate,
)

# letters, in normal-form order
GP, G, F = "g'", "g", "phi"
_ORDER = {GP: 0, G: 1, F: 2}


# -- the operator algebra ------------------------------------------------------------------


class GroupWord:
    """A Z-linear combination of words in gamma', gamma, phi.

    Words are tuples of letters.  ``normal_form`` rewrites every word to
    gamma'^i gamma^j phi^k with the rules

        gamma gamma' -> gamma'^a gamma,  phi gamma -> gamma phi,  phi gamma' -> gamma' phi.
    """

    def __init__(self, a: int, terms: dict | None = None):
        self.a = a
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, a: int, *letters, coeff: int = 1) -> "GroupWord":
        return cls(a, {tuple(letters): coeff})

    @classmethod
    def one(cls, a: int) -> "GroupWord":
        return cls(a, {(): 1})

    @classmethod
    def zero(cls, a: int) -> "GroupWord":
        return cls(a, {})

    def _check(self, other):
        if isinstance(other, int):
            return GroupWord(self.a, {(): other})
        if other.a != self.a:
            raise ValueError("words over different relations")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupWord(self.a, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupWord(self.a, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupWord(self.a, out)

    def __rmul__(self, other):
        return self._check(other) * self

    def __pow__(self, e: int):
        out = GroupWord.one(self.a)
        for _ in range(e):
            out = out * self
        return out

    def normal_form(self) -> "GroupWord":
        out = {}
        for w, c in self.terms.items():
            nw = rewrite(w, self.a)
            out[nw] = out.get(nw, 0) + c
        return GroupWord(self.a, out)

    def exponents(self) -> dict:
        """Normal form as {(i, j, k): coeff} for gamma'^i gamma^j phi^k."""
        out = {}
        for w, c in self.normal_form().terms.items():
            key = (w.count(GP), w.count(G), w.count(F))
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def is_zero(self) -> bool:
        return not self.normal_form().terms

    def __eq__(self, other):
        return isinstance(other, GroupWord) and (self - other).is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.normal_form().terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = _word_str(w)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    __repr__ = __str__


def _word_str(w) -> str:
    if not w:
        return "1"
    out, i = [], 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = j - i
        out.append(w[i] if k == 1 else f"{w[i]}^{k}")
        i = j
    return " ".join(out)


def rewrite(word: tuple, a: int) -> tuple:
    """Apply the rewriting rules until the word is gamma'^i gamma^j phi^k."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if _ORDER[x] <= _ORDER[y]:
                continue
            if x == G and y == GP:
                w[i : i + 2] = [GP] * a + [G]
            else:
                # phi commutes with both gammas
                w[i], w[i + 1] = y, x
            changed = True
            break
    return tuple(w)


def delta_op(a: int) -> GroupWord:
    """delta = 1 + gamma' + ... + gamma'^(a-1)."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    out = GroupWord.zero(a)
    for k in range(a):
        out = out + GroupWord.word(a, *([GP] * k))
    return out


@dataclass
class C3Matrices:
    a: int
    A0: list
    A1: list
    A2: list

    @property
    def shapes(self) -> tuple:
        return ((len(self.A0), len(self.A0[0])), (len(self.A1), len(self.A1[0])), (len(self.A2), len(self.A2[0])))


def c3_matrices(a: int) -> C3Matrices:
    one = GroupWord.one(a)
    phi = GroupWord.word(a, F)
    gam = GroupWord.word(a, G)
    gp = GroupWord.word(a, GP)
    gpa = GroupWord.word(a, *([GP] * a))
    zero = GroupWord.zero(a)
    delta = delta_op(a)
    A0 = [[phi - one], [gam - one], [gp - one]]
    A1 = [
        [gam - one, one - phi, zero],
        [gp - one, zero, one - phi],
        [zero, gpa - one, delta - gam],
    ]
    A2 = [[gpa - one, delta - gam, phi - one]]
    return C3Matrices(a, A0, A1, A2)


def _matprod(A, B, a):
    out = []
    for i in range(len(A)):
        row = []
        for j in range(len(B[0])):
            acc = GroupWord.zero(a)
            for k in range(len(B)):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


@dataclass
class C3Verification:
    a: int
    A1A0: list
    A2A1: list
    residues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.residues

    def lines(self) -> list[str]:
        out = [f"a = {self.a}"]
        for name, M in (("A1 A0", self.A1A0), ("A2 A1", self.A2A1)):
            for i, row in enumerate(M):
                for j, e in enumerate(row):
                    out.append(f"{name} ({i + 1},{j + 1}) = {e.normal_form()}")
        out.append(f"complex: {'yes' if self.ok else 'no'}")
        return out


def c3_symbolic_verify(a: int) -> C3Verification:
    """Expand A1 A0 and A2 A1 and reduce every entry to normal form."""
    m = c3_matrices(a)
    p10 = _matprod(m.A1, m.A0, a)
    p21 = _matprod(m.A2, m.A1, a)
    bad = []
    for name, M in (("A1A0", p10), ("A2A1", p21)):
        for i, row in enumerate(M):
            for j, e in enumerate(row):
                if not e.is_zero():
                    bad.append((name, i + 1, j + 1, str(e.normal_form())))
    return C3Verification(a, p10, p21, bad)


# -- modules with two generators -------------------------------------------------------------


class TwoGenModule:
    """A phi-Gamma-module plus the action of gamma'.

    gamma' fixes the coefficient ring and acts on generators by the matrix
    GamPrime: gamma'(sum x_j e_j) = sum_j x_j GamPrime[:, j].
    """

    def __init__(self, base: PhiGammaModule, GamPrime: Matrix | None = None, name: str = ""):
        self.base = base
        self.params = base.params
        self.rank = base.rank
        self.a = base.act.a
        self.GamPrime = GamPrime if GamPrime is not None else identity_matrix(base.params, base.rank)
        self.GamPrime = [[_reduce_entry(x, base.torsion[i]) for x in row] for i, row in enumerate(self.GamPrime)]
        self.name = name or base.name

    @property
    def Phi(self):
        return self.base.Phi

    @property
    def Gam(self):
        return self.base.Gam

    def gamma_prime_is_identity(self) -> bool:
        ident = identity_matrix(self.params, self.rank)
        return all(x.agrees(y) for r1, r2 in zip(self.GamPrime, ident) for x, y in zip(r1, r2))

    def apply_phi(self, vec, hi=None):
        return apply_phi_vector(self.base, vec, hi=hi)

    def apply_gamma(self, vec, hi=None):
        return apply_gamma_vector(self.base, vec, hi=hi)

    def apply_gamma_prime(self, vec, hi=None):
        if hi is not None:
            vec = [x.truncate(hi) for x in vec]
        return [
            _reduce_entry(_sum(self.GamPrime[i][j] * vec[j] for j in range(self.rank)), self.base.torsion[i])
            for i in range(self.rank)
        ]

    def __repr__(self):
        return f"TwoGenModule({self.base!r})"


def _eq_matrices(A, B, hi) -> bool:
    return all(x.agrees(y, hi) for r1, r2 in zip(A, B) for x, y in zip(r1, r2))


def validate_two_gen(M: TwoGenModule, raise_on_error: bool = True, hi: int = 32) -> ValidationReport:
    """Base checks, invertibility of gamma', and the two relations on generators.

    phi gamma' = gamma' phi:         Phi * phi(G') = G' * Phi
    gamma gamma' = gamma'^a gamma:   Gam * gamma(G') = G'^a * Gam
    """
    report = validate(M.base, raise_on_error=raise_on_error)
    errors = []
    det = mat_det(M.GamPrime) if M.rank else LaurentElement.constant(M.params, 1)
    inv = det.is_unit()
    report.add("gamma' invertible", inv)
    if not inv:
        errors.append(NotEtale("det(GamPrime) vanishes mod p"))
    Gp = M.GamPrime
    lhs = mat_mul(M.Phi, mat_map(Gp, lambda x: apply_phi(x, hi=hi)))
    rhs = mat_mul(Gp, M.Phi)
    ok1 = _eq_matrices(lhs, rhs, hi)
    report.add("phi gamma' commute", ok1)
    if not ok1:
        errors.append(NotCommuting("Phi * phi(G') != G' * Phi"))
    lhs = mat_mul(M.Gam, mat_map(Gp, lambda x: apply_gamma(x, M.base.act, hi=hi)))
    power = identity_matrix(M.params, M.rank)
    for _ in range(M.a):
        power = mat_mul(Gp, power)
    rhs = mat_mul(power, M.Gam)
    ok2 = _eq_matrices(lhs, rhs, hi)
    report.add("gamma gamma' = gamma'^a gamma", ok2)
    if not ok2:
        errors.append(NotCommuting("Gam * gamma(G') != G'^a * Gam"))
    if raise_on_error and errors:
        raise errors[0]
    return report


# -- numeric side -------------------------------------------------------------------------------


def apply_word(M: TwoGenModule, word: GroupWord, vec, hi: int):
    """Evaluate an operator on a vector of series; letters act right to left."""
    acc = [LaurentElement.zero(M.params) for _ in vec]
    for w, c in word.terms.items():
        cur = [x.truncate(hi) for x in vec]
        for letter in reversed(w):
            if letter == F:
                cur = M.apply_phi(cur, hi=hi)
            elif letter == G:
                cur = M.apply_gamma(cur, hi=hi)
            else:
                cur = M.apply_gamma_prime(cur, hi=hi)
        acc = [s + t * c for s, t in zip(acc, cur)]
    return [_reduce_entry(x.truncate(hi), e) for x, e in zip(acc, M.base.torsion)]


def apply_block(M: TwoGenModule, A, vecs, hi: int):
    """Apply an operator matrix to a tuple of vectors (one per column)."""
    out = []
    for row in A:
        acc = [LaurentElement.zero(M.params) for _ in range(M.rank)]
        for entry, v in zip(row, vecs):
            if entry.terms:
                acc = [s + t for s, t in zip(acc, apply_word(M, entry, v, hi))]
        out.append([x.truncate(hi) for x in acc])
    return out


def c3_build(M: TwoGenModule):
    """The differentials of C3(M) as operator matrices plus an evaluator."""
    m = c3_matrices(M.a)
    return m, (lambda i, vecs, hi: apply_block(M, (m.A0, m.A1, m.A2)[i], vecs, hi))


def composite_vanishes(M: TwoGenModule, rng, samples: int = 3, hi: int = 12, lo: int = -4) -> bool:
    """A1(A0 x) and A2(A1 y) vanish on random x, y up to the known precision."""
    from .laurent import random_series

    m = c3_matrices(M.a)
    for _ in range(samples):
        x = [[random_series(rng, M.params, lo, hi) for _ in range(M.rank)]]
        y = apply_block(M, m.A1, apply_block(M, m.A0, x, hi), hi)
        ys = [[random_series(rng, M.params, lo, hi) for _ in range(M.rank)] for _ in range(3)]
        z = apply_block(M, m.A2, apply_block(M, m.A1, ys, hi), hi)
        for vec in y + z:
            for s in vec:
                if not s.is_zero():
                    return False
    return True


def c3_h0(M: TwoGenModule, start: int = 4, max_window: int = 256) -> CohomologyGroup:
    """Elements fixed by phi, gamma and gamma'.

    H^0 of C2(base) gives the (phi, gamma)-invariants; gamma' - 1 maps them to
    phi-invariants, which are detected modulo M^{>=c}, so the kernel is exact.
    """
    from .duality import honest_cocycle

    R = compute_cohomology(M.base, start=start, max_window=max_window)
    g0 = R[0]
    if not g0.exponents:
        return CohomologyGroup(M.params.p, 0, [], [], window_used=g0.window_used)
    E = R.engine
    c = E.c
    hi = c + 2
    gens = [honest_cocycle(M.base, 0, rep, hi) for rep in g0.representatives]
    images = [[(s - t).truncate(c - 1) for s, t in zip(M.apply_gamma_prime(g, hi=hi), g)] for g in gens]
    lo = min([x.lo for im in images for x in im if not x.is_zero()] + [-R.B2])
    cols = np.array([E.series_to_vector(im, lo) for im in images], dtype=np.int64).T
    N = M.params.n
    p = M.params.p
    exps = list(g0.exponents)
    # kernel of sum c_k image_k over (c_k) in sum Z/p^(e_k)
    from .linalg import kernel

    K = kernel(cols, p, N, row_exps=E.exps(lo))
    sq = subquotient(K, relation_columns(exps, p, N), p, N)
    reps = []
    for k in range(len(sq.exponents)):
        coeffs = sq.representatives[:, k]
        vec = [LaurentElement.zero(M.params) for _ in range(M.rank)]
        for cf, g in zip(coeffs, gens):
            vec = [s + t * int(cf) for s, t in zip(vec, g)]
        reps.append([_reduce_entry(x.truncate(c - 1), e) for x, e in zip(vec, M.base.torsion)])
    return CohomologyGroup(p, 0, list(sq.exponents), reps, window_used=g0.window_used)
