"""Tate local duality made explicit on the Herr complex.

H^2(Omega) is identified with Z/p^n by the normalized trace of the residue;
the pairing H^i(M) x H^{2-i}(Hom(M, Omega)) -> Z/p^n is the cup product
followed by evaluation M (x) Hom(M, Omega) -> Omega and that identification.

Cup products need honest cocycles of C2(M), while the engine produces
cocycles of the quotient by M^{>=c}.  They are corrected with the contraction
solver, which is exact on M^{>=c}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoeffElement, RingParams, padic_log, trace_to_base
from .errors import DegreeOverflow, WrongModule
from .herr import CohomologyResult, compute_cohomology, contraction_threshold, solve_phi_minus_one
from .laurent import ActionParams, DifferentialForm, LaurentElement, residue
from .linalg import cyclic_exponents_of_span
from .modules import PhiGammaModule, apply_gamma_vector, apply_phi_vector, hom_dual, tensor


def trace_form(omega: DifferentialForm) -> int:
    """Tr_n(omega) = Tr(res(omega)) in Z/p^n."""
    return trace_to_base(residue(omega))


def normalization_unit(p: int, a: int, n: int) -> int:
    """-p^v / log(a) mod p^n with v = v_p(log a), via the p-adic log series."""
    work = n + 2
    while True:
        params = RingParams(p, work)
        lg = padic_log(CoeffElement(params, a)).coeffs[0]
        if lg == 0:
            work += 2
            continue
        v = 0
        while lg % p == 0:
            lg //= p
            v += 1
        if work - v >= n:
            break
        work += 2
    unit = lg % p ** n
    return (-pow(unit, -1, p ** n)) % p ** n


# -- honest cocycles -----------------------------------------------------------------


def _sub(xs, ys):
    return [x - y for x, y in zip(xs, ys)]


def _add(xs, ys):
    return [x + y for x, y in zip(xs, ys)]


def _trunc(xs, hi):
    return [x.truncate(hi) for x in xs]


def _reduce(M: PhiGammaModule, xs):
    return [LaurentElement(x.params, x.lo, x.data % x.params.p ** e, x.hi) for x, e in zip(xs, M.torsion)]


def _above(xs, c):
    """Drop the terms below pi^c (they must vanish in the quotient cocycle condition)."""
    out = []
    for x in xs:
        if x.is_zero() or x.lo >= c:
            out.append(x)
            continue
        lower = x.dense(x.lo, c) if c <= x.hi else None
        if lower is not None and lower.any():
            raise ArithmeticError("quotient cocycle condition fails below the threshold")
        out.append(LaurentElement(x.params, c, x.dense(c, int(min(x.hi, x.top)) + 1) if x.top >= c else np.zeros((0, x.params.f), dtype=np.int64), x.hi))
    return out


def honest_cocycle(M: PhiGammaModule, degree: int, cocycle, hi: int):
    """Correct a cocycle of C2(M / M^{>=c}) by elements of M^{>=c} into a cocycle of C2(M).

    Degree 0: subtract the unique z in M^{>=c} with (phi-1) z = (phi-1) x.
    Degree 1: replace y by y - v with (phi-1) v = -beta(x, y).
    The result is known modulo pi^(hi+1).
    """
    c = contraction_threshold(M)
    Mh = M.at_precision(hi + 1)
    if degree == 0:
        xs = _trunc(cocycle, hi)
        t = _reduce(Mh, _sub(apply_phi_vector(Mh, xs, hi=hi), xs))
        z = solve_phi_minus_one(Mh, _above(t, c), hi)
        return _reduce(Mh, _trunc(_sub(xs, z), hi))
    if degree == 1:
        xs, ys = _trunc(cocycle[0], hi), _trunc(cocycle[1], hi)
        s = _sub(apply_gamma_vector(Mh, xs, hi=hi), xs)
        s = _sub(s, _sub(apply_phi_vector(Mh, ys, hi=hi), ys))
        s = _reduce(Mh, s)
        v = solve_phi_minus_one(Mh, _above(s, c), hi)
        v = [-x for x in v]
        return (xs, _reduce(Mh, _trunc(_sub(ys, v), hi)))
    if degree == 2:
        return _trunc(cocycle, hi)
    raise DegreeOverflow(f"C2 has no degree {degree}")


# -- cup products ----------------------------------------------------------------------


def _outer(xs, ys):
    """Components of x (x) y on the generators e_i (x) f_k, i-major."""
    return [x * y for x in xs for y in ys]


def cup(M: PhiGammaModule, N: PhiGammaModule, i: int, xi, j: int, eta, hi: int):
    """Cup product of honest cocycles, landing in C2(M (x) N) of degree i + j.

    (0, j): x (x) (-);  (i, 0): (-) (x) y;
    (1, 1): (x1, y1) u (x2, y2) = y1 (x) gamma(x2) - x1 (x) phi(y2);
    (0, 2), (2, 0): plain products.
    """
    if i + j > 2:
        raise DegreeOverflow(f"cup product of degrees {i} and {j} exceeds 2")
    if i == 0:
        if j == 1:
            return (_outer(xi, eta[0]), _outer(xi, eta[1]))
        return _outer(xi, eta)
    if j == 0:
        if i == 1:
            return (_outer(xi[0], eta), _outer(xi[1], eta))
        return _outer(xi, eta)
    Nh = N.at_precision(hi + 1)
    x1, y1 = xi
    x2, y2 = eta
    g = apply_gamma_vector(Nh, x2, hi=hi)
    f = apply_phi_vector(Nh, y2, hi=hi)
    return _sub(_outer(y1, g), _outer(x1, f))


def evaluate(M: PhiGammaModule, vec):
    """M (x) Hom(M, Omega) -> Omega: e_i (x) e_k^* -> delta_ik dpi."""
    d = M.rank
    acc = None
    for i in range(d):
        t = vec[i * d + i]
        acc = t if acc is None else acc + t
    return acc


def is_omega(M: PhiGammaModule) -> bool:
    return M.rank == 1 and M.tag == ("twist", 1) and M.torsion == (M.params.n,)


def h2_iso(M: PhiGammaModule, w) -> int:
    """H^2(Omega) -> Z/p^n: the normalized trace of the residue of any representative."""
    if not is_omega(M):
        raise WrongModule("h2_iso is defined on H^2 of the Omega twist only")
    body = w[0] if isinstance(w, (list, tuple)) else w
    unit = normalization_unit(M.params.p, M.act.a, M.params.n)
    return unit * trace_to_base(residue(DifferentialForm(body))) % M.params.modulus


def _omega_value(M: PhiGammaModule, w) -> int:
    unit = normalization_unit(M.params.p, M.act.a, M.params.n)
    return unit * trace_to_base(residue(DifferentialForm(w))) % M.params.modulus


# -- the pairing ----------------------------------------------------------------------------


@dataclass
class PairingMatrix:
    degree: int
    left_orders: list
    right_orders: list
    entries: list
    perfect: bool

    def lines(self) -> list[str]:
        out = [f"i = {self.degree}: H^{self.degree}(M) = {_fmt(self.left_orders)}, H^{2 - self.degree}(M~) = {_fmt(self.right_orders)}"]
        for row in self.entries:
            out.append("  [" + " ".join(str(v) for v in row) + "]")
        out.append(f"  perfect: {'yes' if self.perfect else 'no'}")
        return out


def _fmt(orders):
    return " (+) ".join(f"Z/{o}" for o in orders) if orders else "0"


def _working_precision(R: CohomologyResult, S: CohomologyResult) -> int:
    return -min(R.L2, S.L2) + max(R.engine.c, S.engine.c) + 2


class Pairing:
    """Cup-product pairing between C2(M) and C2(Hom(M, Omega))."""

    def __init__(self, M: PhiGammaModule, start: int = 4, max_window: int = 256):
        self.M = M
        self.Md = hom_dual(M)
        self.R = compute_cohomology(M, start=start, max_window=max_window)
        self.S = compute_cohomology(self.Md, start=start, max_window=max_window)
        self.hi = _working_precision(self.R, self.S)
        self._honest = {}

    def honest(self, side: str, degree: int, k: int):
        key = (side, degree, k)
        if key not in self._honest:
            R, M = (self.R, self.M) if side == "M" else (self.S, self.Md)
            rep = R[degree].representatives[k]
            self._honest[key] = honest_cocycle(M, degree, rep, self.hi)
        return self._honest[key]

    def value(self, i: int, xi, eta) -> int:
        """<xi, eta> for honest cocycles xi of degree i on M and eta of degree 2 - i on M~."""
        prod = cup(self.M, self.Md, i, xi, 2 - i, eta, self.hi)
        return _omega_value(self.M, evaluate(self.M, prod))

    def matrix(self, i: int) -> PairingMatrix:
        left = self.R[i]
        right = self.S[2 - i]
        entries = []
        for k in range(len(left.exponents)):
            xi = self.honest("M", i, k)
            row = []
            for l in range(len(right.exponents)):
                eta = self.honest("D", 2 - i, l)
                row.append(self.value(i, xi, eta))
            entries.append(row)
        perfect = pairing_is_perfect(self.M.params.p, self.M.params.n, left.exponents, right.exponents, entries)
        return PairingMatrix(i, left.cyclic_orders, right.cyclic_orders, entries, perfect)


def pairing_is_perfect(p: int, n: int, left_exps, right_exps, entries) -> bool:
    """Does the pairing identify the left group with the dual of the right one?

    A generator of Z/p^e' (right side) pairs into p^(n-e') Z/p^n, so column l
    read in Z/p^e' is the image of the left generators in Hom(right, Z/p^n).
    The induced map is bijective iff both groups have the same order and the
    columns span the whole target.
    """
    if sum(left_exps) != sum(right_exps):
        return False
    if not left_exps:
        return True
    P = np.array(entries, dtype=np.int64).reshape(len(left_exps), len(right_exps)) % p ** n
    # entries must be compatible with both orders
    for k, e in enumerate(left_exps):
        for l, e2 in enumerate(right_exps):
            if P[k, l] % p ** (n - min(e, e2)):
                return False
    span = cyclic_exponents_of_span(P.T, p, n)
    return span == sorted(right_exps, reverse=True)


def pairing_perfect(M: PhiGammaModule, start: int = 4, max_window: int = 256):
    """Pairing matrices in degrees 0, 1, 2 and the overall verdict."""
    pr = Pairing(M, start=start, max_window=max_window)
    mats = [pr.matrix(i) for i in range(3)]
    return mats, all(m.perfect for m in mats)


# -- H^2 of the Omega twist ---------------------------------------------------------------


def coboundary2(M: PhiGammaModule, xs, ys, hi: int):
    """beta(x, y) = (gamma - 1) x - (phi - 1) y, the degree-2 coboundary of C2(M)."""
    Mh = M.at_precision(hi + 1)
    xs, ys = _trunc(xs, hi), _trunc(ys, hi)
    g = _sub(apply_gamma_vector(Mh, xs, hi=hi), xs)
    f = _sub(apply_phi_vector(Mh, ys, hi=hi), ys)
    return _reduce(Mh, _sub(g, f))


@dataclass
class H2IsoReport:
    """What the bijectivity check of H^2(Omega) -> Z/p^n found."""

    p: int
    n: int
    unit: int
    group_exponents: list
    value_on_dlog: int
    dlog_coordinate: list
    dpi_coordinate: list
    dpi_value: int
    coboundary_values: list

    @property
    def surjective(self) -> bool:
        return self.value_on_dlog % self.p != 0

    @property
    def injective(self) -> bool:
        # H^2 is cyclic of order p^n and its generator goes to a unit
        return self.group_exponents == [self.n] and self.surjective

    @property
    def dpi_is_coboundary(self) -> bool:
        return all(c == 0 for c in self.dpi_coordinate) and self.dpi_value == 0

    @property
    def well_defined(self) -> bool:
        return all(v == 0 for v in self.coboundary_values)

    @property
    def ok(self) -> bool:
        return self.surjective and self.injective and self.dpi_is_coboundary and self.well_defined


def check_h2_iso(params: RingParams, act: ActionParams | None = None, samples: int = 5, seed: int = 0) -> H2IsoReport:
    """Bijectivity of h2_iso on H^2 of the Omega twist.

    Surjectivity: the class of pi^-1 dpi maps to the normalization unit.
    Injectivity: H^2 is Z/p^n and that class generates it.
    dpi: its class vanishes in the engine and its value is 0.
    Well-definedness: random coboundaries beta(x, y) have value 0.
    """
    from .laurent import random_series
    from .modules import cyclotomic_twist

    M = cyclotomic_twist(params, 1, act=act)
    R = compute_cohomology(M)
    lo, c = R.L2, R.engine.c
    dlog = [LaurentElement.monomial(params, -1).truncate(c - 1)]
    dpi = [LaurentElement.monomial(params, 0).truncate(c - 1)]
    rng = np.random.default_rng(seed)
    cob = []
    for _ in range(samples):
        x = [random_series(rng, params, -6, 4)]
        y = [random_series(rng, params, -6, 4)]
        cob.append(h2_iso(M, coboundary2(M, x, y, c - 1)))
    coord = R.coordinates(2, dlog)
    return H2IsoReport(
        params.p,
        params.n,
        normalization_unit(params.p, M.act.a, params.n),
        list(R[2].exponents),
        h2_iso(M, dlog),
        coord,
        R.coordinates(2, dpi),
        h2_iso(M, dpi),
        cob,
    )


def _exponent_between(p: int, a: int, a2: int, n: int) -> int:
    """b with a^b = a2 in (Z/p^(n+2))^x; exists because a generates that group."""
    m = p ** (n + 2)
    x = 1
    for b in range(p ** (n + 1) * (p - 1)):
        if x == a2 % m:
            return b
        x = x * a % m
    raise ValueError(f"{a2} is not a power of {a} mod {m}")


def transport_h2(M: PhiGammaModule, ws, a2: int, hi: int):
    """Carry a degree-2 cocycle for gamma to the complex built on gamma2 = gamma^b.

    The identity in degrees 0 and 1 extends to a map of complexes by
    (gamma^b - 1)/(gamma - 1) = sum_{k<b} gamma^k in degree 2.
    """
    b = _exponent_between(M.params.p, M.act.a, a2, M.params.n)
    Mh = M.at_precision(hi + 1)
    cur = _trunc(ws, hi)
    acc = [LaurentElement.zero(M.params) for _ in ws]
    for _ in range(b):
        acc = _add(acc, cur)
        cur = apply_gamma_vector(Mh, cur, hi=hi)
    return _reduce(Mh, _trunc(acc, hi)), b


def generator_independence(params: RingParams, a1: int, a2: int, classes: int = 10, seed: int = 0):
    """Compare h2_iso for chi(gamma) = a1 and a2 on random transported classes.

    Returns a list of (value with a1, value with a2 after transport).
    """
    from .laurent import random_series
    from .modules import cyclotomic_twist

    M1 = cyclotomic_twist(params, 1, act=ActionParams(a1))
    M2 = cyclotomic_twist(params, 1, act=ActionParams(a2))
    hi = 1
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(classes):
        k = int(rng.integers(0, params.modulus))
        w = [LaurentElement.monomial(params, -1) * k + random_series(rng, params, -4, hi)]
        x = [random_series(rng, params, -4, hi)]
        y = [random_series(rng, params, -4, hi)]
        w = _add(_trunc(w, hi), coboundary2(M1, x, y, hi))
        t, _ = transport_h2(M1, w, a2, hi)
        out.append((h2_iso(M1, w), h2_iso(M2, t)))
    return out
