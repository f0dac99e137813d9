"""Etale phi-Gamma-modules over W_n(F_q)((pi)) and etale phi-modules in characteristic p.

A module is given on generators e_1..e_d, generator i of order p^{n_i}.
Matrix conventions: phi(e_j) = sum_i Phi[i][j] e_i and gamma(e_j) = sum_i Gam[i][j] e_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .coefficients import CoeffElement, RingParams, coeff_invert
from .errors import NotAUnit, NotCommuting, NotEtale, TorsionMismatch, ValidationError, WindowTooSmall
from .finite_field import FiniteField
from .laurent import (
    INF,
    ActionParams,
    LaurentElement,
    apply_gamma,
    apply_phi,
    default_action,
    one_plus_pi_pow,
    series_invert,
)

DEFAULT_PRECISION = 64

Matrix = list  # list of rows of LaurentElement


def _zero_matrix(params, d, hi=INF):
    return [[LaurentElement.zero(params, hi) for _ in range(d)] for _ in range(d)]


def identity_matrix(params: RingParams, d: int) -> Matrix:
    return [[LaurentElement.constant(params, 1 if i == j else 0) for j in range(d)] for i in range(d)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    d, e, g = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(d):
        row = []
        for j in range(g):
            acc = None
            for k in range(e):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_map(A: Matrix, fn) -> Matrix:
    return [[fn(x) for x in row] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def kron(A: Matrix, B: Matrix) -> Matrix:
    da, db = len(A), len(B)
    out = []
    for i in range(da):
        for k in range(db):
            out.append([A[i][j] * B[k][l] for j in range(da) for l in range(db)])
    return out


def mat_inverse(A: Matrix, hi=None) -> Matrix:
    """Inverse over W_n(F_q)((pi)) by Gauss-Jordan with unit pivots.

    Raises NotEtale when no unit pivot exists (the reduction mod p is singular).
    """
    d = len(A)
    params = A[0][0].params
    work = [list(row) + [LaurentElement.constant(params, 1 if i == j else 0) for j in range(d)] for i, row in enumerate(A)]
    for col in range(d):
        pivot = None
        for r in range(col, d):
            if work[r][col].is_unit():
                pivot = r
                break
        if pivot is None:
            raise NotEtale("matrix is not invertible mod p")
        work[col], work[pivot] = work[pivot], work[col]
        inv = series_invert(work[col][col], hi=hi)
        work[col] = [x * inv for x in work[col]]
        for r in range(d):
            if r != col and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[d:] for row in work]


def mat_det(A: Matrix) -> LaurentElement:
    d = len(A)
    if d == 1:
        return A[0][0]
    total = None
    for j in range(d):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * mat_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _reduce_entry(x: LaurentElement, e: int) -> LaurentElement:
    """Reduce coefficients mod p^e, kept as an element of the mod-p^n ring."""
    return LaurentElement(x.params, x.lo, x.data % x.params.p ** e, x.hi)


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"{name}: {'ok' if ok else 'FAILED'}" + (f" ({detail})" if detail else "") for name, ok, detail in self.checks]


class PhiGammaModule:
    """An etale phi-Gamma-module of rank d over W_n(F_q)((pi)) given by matrices.

    ``rebuild`` (optional) maps a precision hi to fresh (Phi, Gam) matrices whose
    inexact entries are known at least to O(pi^(hi+1)); it is how derived
    modules (negative twists, duals, tensors) supply more precision on demand.
    """

    def __init__(self, params: RingParams, act: ActionParams, Phi: Matrix, Gam: Matrix,
                 torsion=None, name: str = "", rebuild: Callable | None = None, tag=None):
        self.params = params
        self.act = act
        self.rank = len(Phi)
        if any(len(row) != self.rank for row in Phi) or len(Gam) != self.rank or any(len(r) != self.rank for r in Gam):
            raise ValidationError("Phi and Gam must be square matrices of the same size")
        self.torsion = tuple(torsion) if torsion is not None else (params.n,) * self.rank
        if len(self.torsion) != self.rank:
            raise ValidationError("one torsion exponent per generator is required")
        if any(e < 1 or e > params.n for e in self.torsion):
            raise TorsionMismatch(f"torsion exponents must lie in [1, {params.n}]")
        self.Phi = [[_reduce_entry(x, self.torsion[i]) for x in row] for i, row in enumerate(Phi)]
        self.Gam = [[_reduce_entry(x, self.torsion[i]) for x in row] for i, row in enumerate(Gam)]
        self.name = name
        self._rebuild = rebuild
        # identifies builtin Omega twists, used by h2_iso
        self.tag = tag

    @property
    def d(self) -> int:
        return self.rank

    @property
    def length(self) -> int:
        """Length over Z_p of the underlying representation: f * sum n_i."""
        return self.params.f * sum(self.torsion)

    def precision(self):
        hi = INF
        for row in self.Phi + self.Gam:
            for x in row:
                hi = min(hi, x.hi)
        return hi

    def at_precision(self, hi: int) -> "PhiGammaModule":
        """The same module with every inexact entry known at least to O(pi^(hi+1))."""
        if self.precision() >= hi:
            return self
        if self._rebuild is None:
            raise WindowTooSmall(f"module entries are only known to O(pi^{self.precision() + 1})")
        Phi, Gam = self._rebuild(hi)
        return PhiGammaModule(self.params, self.act, Phi, Gam, self.torsion, self.name, self._rebuild, self.tag)

    def phi_pole_order(self) -> int:
        lo = min((x.lo for row in self.Phi for x in row if not x.is_zero()), default=0)
        return max(0, -lo)

    def gamma_pole_order(self) -> int:
        lo = min((x.lo for row in self.Gam for x in row if not x.is_zero()), default=0)
        return max(0, -lo)

    def same_matrices(self, other: "PhiGammaModule") -> bool:
        if self.rank != other.rank or self.torsion != other.torsion or self.params != other.params:
            return False
        return all(
            x.agrees(y) for A, B in ((self.Phi, other.Phi), (self.Gam, other.Gam)) for ra, rb in zip(A, B) for x, y in zip(ra, rb)
        )

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"PhiGammaModule{label}(rank={self.rank}, torsion={self.torsion}, {self.params!r}, a={self.act.a})"


def validate(M: PhiGammaModule, raise_on_error: bool = True) -> ValidationReport:
    """Check the etale condition, commutation of phi and gamma, and torsion compatibility."""
    report = ValidationReport()
    p = M.params.p
    errors = []

    ok = True
    bad = []
    for i in range(M.rank):
        for j in range(M.rank):
            gap = M.torsion[i] - M.torsion[j]
            if gap > 0:
                for name, A in (("Phi", M.Phi), ("Gam", M.Gam)):
                    if (A[i][j].data % p ** gap).any():
                        ok = False
                        bad.append(f"{name}({i + 1},{j + 1})")
    report.add("torsion", ok, ", ".join(bad))
    if not ok:
        errors.append(TorsionMismatch("entries not well defined for the generator orders: " + ", ".join(bad)))

    try:
        det = mat_det(M.Phi) if M.rank else LaurentElement.constant(M.params, 1)
        etale = det.is_unit()
        detail = "" if etale else "det(Phi) vanishes mod p"
    except WindowTooSmall:
        etale, detail = False, "precision too small to certify det(Phi)"
    report.add("etale", etale, detail)
    if not etale:
        errors.append(NotEtale(detail))

    try:
        det_g = mat_det(M.Gam) if M.rank else LaurentElement.constant(M.params, 1)
        g_ok = det_g.is_unit()
    except WindowTooSmall:
        g_ok = False
    report.add("gamma invertible", g_ok)
    if not g_ok:
        errors.append(NotEtale("det(Gam) vanishes mod p"))

    commutes, detail = _check_commutation(M)
    report.add("phi gamma commute", commutes, detail)
    if not commutes:
        errors.append(NotCommuting(detail or "Gam * gamma(Phi) != Phi * phi(Gam)"))

    if raise_on_error and errors:
        raise errors[0]
    return report


def _check_commutation(M: PhiGammaModule) -> tuple[bool, str]:
    hi = DEFAULT_PRECISION
    if M.precision() != INF:
        hi = min(hi, int(M.precision()) - max(M.phi_pole_order(), M.gamma_pole_order()))
    try:
        lhs = mat_mul(M.Gam, mat_map(M.Phi, lambda x: apply_gamma(x, M.act, hi=hi)))
        rhs = mat_mul(M.Phi, mat_map(M.Gam, lambda x: apply_phi(x, hi=hi)))
    except WindowTooSmall as exc:
        return False, str(exc)
    for i in range(M.rank):
        e = M.torsion[i]
        for j in range(M.rank):
            diff = _reduce_entry(lhs[i][j] - rhs[i][j], e)
            top = min(diff.hi, hi)
            if not diff.truncate(top).is_zero():
                return False, f"entry ({i + 1},{j + 1}) differs"
    return True, ""


# -- builtin modules -----------------------------------------------------------


def _resolve(params, act):
    act = act if act is not None else default_action(params.p)
    act.check(params.p)
    return act


def trivial_module(params: RingParams, d: int = 1, torsion=None, act: ActionParams | None = None) -> PhiGammaModule:
    act = _resolve(params, act)
    torsion = torsion if torsion is not None else (params.n,) * d
    eye = identity_matrix(params, d)
    return PhiGammaModule(params, act, eye, identity_matrix(params, d), torsion, name="trivial", tag=("twist", 0) if d == 1 and tuple(torsion) == (params.n,) else None)


def omega_multipliers(params: RingParams, act: ActionParams) -> tuple[LaurentElement, LaurentElement]:
    """u = (1+pi)^(p-1) and v = a (1+pi)^(a-1): phi and gamma on dpi (after dividing phi by p)."""
    u = one_plus_pi_pow(params.p - 1, params)
    v = one_plus_pi_pow(act.a - 1, params) * act.a
    return u, v


def _twist_matrices(params, act, m: int, hi: int):
    u, v = omega_multipliers(params, act)
    if m >= 0:
        return [[u ** m]], [[v ** m]]
    ui = series_invert(u, hi=hi)
    vi = series_invert(v, hi=hi)
    return [[ui ** (-m)]], [[vi ** (-m)]]


def cyclotomic_twist(params: RingParams, m: int = 1, act: ActionParams | None = None,
                     precision: int = DEFAULT_PRECISION) -> PhiGammaModule:
    """Rank one, Phi = ((1+pi)^(p-1))^m, Gam = (a(1+pi)^(a-1))^m; m = 1 is Omega = D(mu_{p^n})."""
    act = _resolve(params, act)
    Phi, Gam = _twist_matrices(params, act, m, precision)
    rebuild = (lambda hi: _twist_matrices(params, act, m, hi)) if m < 0 else None
    name = "trivial" if m == 0 else f"twist({m})"
    return PhiGammaModule(params, act, Phi, Gam, name=name, rebuild=rebuild, tag=("twist", m))


def omega_module(params: RingParams, act: ActionParams | None = None) -> PhiGammaModule:
    return cyclotomic_twist(params, 1, act)


def unramified_twist(params: RingParams, c, act: ActionParams | None = None) -> PhiGammaModule:
    act = _resolve(params, act)
    c = c if isinstance(c, CoeffElement) else CoeffElement(params, c)
    if not c.is_unit():
        raise NotAUnit(f"unramified twist needs a unit, got {c}")
    return PhiGammaModule(params, act, [[LaurentElement.constant(params, c)]], identity_matrix(params, 1),
                          name=f"unramified({c})")


def _tensor_raw(M, N, Mm, Nm):
    Phi = kron(Mm.Phi, Nm.Phi)
    Gam = kron(Mm.Gam, Nm.Gam)
    return Phi, Gam


def tensor(M: PhiGammaModule, N: PhiGammaModule) -> PhiGammaModule:
    """Natural tensor product on generators e_i (x) f_k, ordered i-major."""
    if M.params != N.params or M.act != N.act:
        raise ValidationError("tensor product needs the same coefficient ring and gamma")
    torsion = tuple(min(a, b) for a in M.torsion for b in N.torsion)
    Phi, Gam = _tensor_raw(M, N, M, N)
    rebuild = None
    if M._rebuild is not None or N._rebuild is not None:
        def rebuild(hi, M=M, N=N):
            return _tensor_raw(M, N, M.at_precision(hi), N.at_precision(hi))
    tag = None
    if M.tag and N.tag and M.tag[0] == N.tag[0] == "twist":
        tag = ("twist", M.tag[1] + N.tag[1])
    return PhiGammaModule(M.params, M.act, Phi, Gam, torsion, name=f"({M.name} x {N.name})", rebuild=rebuild, tag=tag)


def _dual_raw(M: PhiGammaModule, hi: int):
    u, v = omega_multipliers(M.params, M.act)
    Phi_inv = mat_inverse(M.Phi, hi=hi)
    Gam_inv = mat_inverse(M.Gam, hi=hi)
    Phi = [[u * x for x in row] for row in transpose(Phi_inv)]
    Gam = [[v * x for x in row] for row in transpose(Gam_inv)]
    return Phi, Gam


def hom_dual(M: PhiGammaModule, precision: int = DEFAULT_PRECISION) -> PhiGammaModule:
    """Hom(M, Omega) on the dual generators e_i^*: Phi~ = u (Phi^-1)^T, Gam~ = v (Gam^-1)^T."""
    hi = precision
    if M.precision() != INF:
        hi = min(hi, int(M.precision()))
    Phi, Gam = _dual_raw(M, hi)

    def rebuild(h, M=M):
        return _dual_raw(M.at_precision(h), h)

    tag = ("twist", 1 - M.tag[1]) if M.tag and M.tag[0] == "twist" else None
    return PhiGammaModule(M.params, M.act, Phi, Gam, M.torsion, name=f"dual({M.name})", rebuild=rebuild, tag=tag)


def evaluation_pairing(f_vec, x_vec) -> LaurentElement:
    """<f, x> = sum_i f_i x_i, the coefficient of dpi in f(x) for f in Hom(M, Omega)."""
    acc = None
    for a, b in zip(f_vec, x_vec):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


def apply_phi_vector(M: PhiGammaModule, vec, hi=None):
    """phi(sum x_j e_j) = sum_j phi(x_j) Phi[:, j]."""
    imgs = [apply_phi(x, hi=hi) for x in vec]
    return [_reduce_entry(_sum(M.Phi[i][j] * imgs[j] for j in range(M.rank)), M.torsion[i]) for i in range(M.rank)]


def apply_gamma_vector(M: PhiGammaModule, vec, hi=None):
    imgs = [apply_gamma(x, M.act, hi=hi) for x in vec]
    return [_reduce_entry(_sum(M.Gam[i][j] * imgs[j] for j in range(M.rank)), M.torsion[i]) for i in range(M.rank)]


def _sum(it):
    acc = None
    for t in it:
        acc = t if acc is None else acc + t
    return acc


# -- characteristic p -----------------------------------------------------------


class PhiModuleCharP:
    """Etale phi-module over a finite field F_q: phi(e_j) = sum_i Phi[i][j] e_i, sigma-semilinear."""

    def __init__(self, field_: FiniteField, Phi):
        self.field = field_
        self.Phi = [[field_(x) for x in row] for row in Phi]
        self.rank = len(self.Phi)
        if self.rank and not _fq_invertible(field_, self.Phi):
            raise NotEtale("Phi is not invertible over the base field")

    def apply_phi(self, vec):
        """vec: list of F_q elements (coordinates in e_1..e_d)."""
        F = self.field
        out = [F.zero] * self.rank
        for j, x in enumerate(vec):
            sx = F.frob(x)
            for i in range(self.rank):
                out[i] = F.add(out[i], F.mul(self.Phi[i][j], sx))
        return out

    def phi_minus_one_matrix(self) -> np.ndarray:
        """F_p-matrix of phi - 1 on M = F_q^d, basis (e_j, g^t) ordered j-major."""
        F = self.field
        f, d = F.f, self.rank
        cols = []
        for j in range(d):
            for t in range(f):
                e = [0] * f
                e[t] = 1
                vec = [F.zero] * d
                vec[j] = tuple(e)
                img = self.apply_phi(vec)
                img[j] = F.sub(img[j], tuple(e))
                cols.append([c for coord in img for c in coord])
        return np.array(cols, dtype=np.int64).T.reshape(d * f, d * f) if cols else np.zeros((0, 0), dtype=np.int64)

    def __repr__(self):
        return f"PhiModuleCharP(rank={self.rank}, {self.field!r})"


def _fq_invertible(F: FiniteField, A) -> bool:
    d = len(A)
    work = [list(r) for r in A]
    for col in range(d):
        piv = next((r for r in range(col, d) if not F.is_zero(work[r][col])), None)
        if piv is None:
            return False
        work[col], work[piv] = work[piv], work[col]
        inv = F.inv(work[col][col])
        for r in range(col + 1, d):
            if not F.is_zero(work[r][col]):
                fac = F.mul(work[r][col], inv)
                work[r] = [F.sub(x, F.mul(fac, y)) for x, y in zip(work[r], work[col])]
    return True


def efface_h1_char_p(M: PhiModuleCharP, m):
    """N = M + E t with phi_N(t) = t + m; returns N and the inclusion matrix (F_q-linear, (d+1) x d).

    In N the class of m becomes (phi - 1)(t), hence zero in H^1(N).
    """
    F = M.field
    d = M.rank
    m = [F(x) for x in m]
    Phi = [list(row) + [m[i]] for i, row in enumerate(M.Phi)]
    Phi.append([F.zero] * d + [F.one])
    N = PhiModuleCharP(F, Phi)
    incl = [[F.one if i == j else F.zero for j in range(d)] for i in range(d + 1)]
    return N, incl


def induced_unramified(params: RingParams, c=1, act: ActionParams | None = None) -> PhiGammaModule:
    """Rank two, phi swaps the generators up to c: Phi = [[0, c], [1, 0]], Gam = 1.

    This is D of the representation induced from the unramified quadratic
    character with Frobenius eigenvalue c; it is irreducible when c is not a square.
    """
    act = _resolve(params, act)
    c = c if isinstance(c, CoeffElement) else CoeffElement(params, c)
    if not c.is_unit():
        raise NotAUnit(f"induced module needs a unit, got {c}")
    zero = LaurentElement.zero(params)
    Phi = [[zero, LaurentElement.constant(params, c)], [LaurentElement.constant(params, 1), zero]]
    return PhiGammaModule(params, act, Phi, identity_matrix(params, 2), name=f"induced({c})")
