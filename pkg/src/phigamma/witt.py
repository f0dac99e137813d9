"""Witt vectors of finite length through the universal Witt polynomials.

The addition and multiplication polynomials S_k, P_k are computed once per
(p, n) over Z with sympy from the ghost recursion

    w_k(S(X, Y)) = w_k(X) + w_k(Y),   w_k(P(X, Y)) = w_k(X) w_k(Y),
    w_k(X) = sum_{i<=k} p^i X_i^(p^(k-i)),

and then evaluated in the base ring.  Supported bases: F_q, Z/p^M and Z.
"""

from __future__ import annotations

import functools
import threading

import sympy

from .coefficients import CoeffElement, RingParams, teichmuller
from .errors import TorsionBase
from .finite_field import FiniteField

MAX_LENGTH = 4


# -- base rings ----------------------------------------------------------------------------


class IntegerBase:
    """Z (modulus None) or Z/m."""

    def __init__(self, p: int, modulus: int | None = None):
        self.p = p
        self.modulus = modulus

    def __call__(self, v) -> int:
        v = int(v)
        return v % self.modulus if self.modulus else v

    def add(self, x, y):
        return self(x + y)

    def mul(self, x, y):
        return self(x * y)

    def pow(self, x, e):
        return pow(x, e, self.modulus) if self.modulus else x ** e

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return self(1)

    @property
    def torsion_free(self) -> bool:
        return self.modulus is None

    def __eq__(self, other):
        return isinstance(other, IntegerBase) and (self.p, self.modulus) == (other.p, other.modulus)

    def __repr__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


class FieldBase:
    """F_q via FiniteField; elements are coordinate tuples."""

    def __init__(self, field_: FiniteField):
        self.field = field_
        self.p = field_.p

    def __call__(self, v):
        return self.field(v)

    def add(self, x, y):
        return self.field.add(x, y)

    def mul(self, x, y):
        return self.field.mul(x, y)

    def pow(self, x, e):
        return self.field.pow(x, e) if e else self.field.one

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    torsion_free = False

    def __eq__(self, other):
        return isinstance(other, FieldBase) and self.field == other.field

    def __repr__(self):
        return f"F_{self.field.q}"


# -- universal polynomials -------------------------------------------------------------------

_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def _symbols(n: int):
    X = sympy.symbols(f"x0:{n}")
    Y = sympy.symbols(f"y0:{n}")
    return X, Y


def _ghost_expr(vars_, p: int, k: int):
    return sum(p ** i * vars_[i] ** (p ** (k - i)) for i in range(k + 1))


def _solve_ghost(targets, p: int, n: int, gens):
    """Components c_k with w_k(c) = targets[k]; exact division by p^k over Z."""
    comps = []
    for k in range(n):
        rest = targets[k] - sum(p ** i * comps[i] ** (p ** (k - i)) for i in range(k))
        poly = sympy.Poly(sympy.expand(rest), *gens, domain="ZZ")
        q = poly.quo_ground(p ** k)
        if q * p ** k != poly:
            raise ArithmeticError("Witt polynomial is not integral")
        comps.append(q.as_expr())
    return comps


def _compile(expr, gens):
    poly = sympy.Poly(expr, *gens, domain="ZZ")
    return tuple((tuple(int(e) for e in mon), int(c)) for mon, c in poly.terms())


_cache: dict = {}


def witt_polynomials(p: int, n: int):
    """(S, P): lists of compiled polynomials in x_0..x_{n-1}, y_0..y_{n-1}."""
    if n > MAX_LENGTH:
        raise ValueError(f"Witt vectors of length > {MAX_LENGTH} are not supported")
    key = (p, n)
    with _lock:
        if key not in _cache:
            X, Y = _symbols(n)
            gens = X + Y
            wx = [_ghost_expr(X, p, k) for k in range(n)]
            wy = [_ghost_expr(Y, p, k) for k in range(n)]
            S = _solve_ghost([wx[k] + wy[k] for k in range(n)], p, n, gens)
            P = _solve_ghost([wx[k] * wy[k] for k in range(n)], p, n, gens)
            _cache[key] = ([_compile(s, gens) for s in S], [_compile(q, gens) for q in P])
        return _cache[key]


def _evaluate(poly, values, base):
    acc = base.zero
    for mon, c in poly:
        term = base(c)
        for v, e in zip(values, mon):
            if e:
                term = base.mul(term, base.pow(v, e))
        acc = base.add(acc, term)
    return acc


# -- Witt vectors -------------------------------------------------------------------------------


class WittVector:
    """(x_0, ..., x_{n-1}) over a base ring."""

    __slots__ = ("base", "components")

    def __init__(self, base, components):
        self.base = base
        self.components = tuple(base(c) for c in components)

    @property
    def length(self) -> int:
        return len(self.components)

    @property
    def p(self) -> int:
        return self.base.p

    @classmethod
    def zero(cls, base, n: int) -> "WittVector":
        return cls(base, [base.zero] * n)

    @classmethod
    def one(cls, base, n: int) -> "WittVector":
        return cls(base, [base.one] + [base.zero] * (n - 1))

    @classmethod
    def teichmuller(cls, base, a, n: int) -> "WittVector":
        return cls(base, [a] + [base.zero] * (n - 1))

    def _check(self, other):
        if self.base != other.base or self.length != other.length:
            raise ValueError("Witt vectors over different rings or of different lengths")

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        # -x = (p^n - 1) x, valid in any W_n (p^n kills W_n over any ring of char p; over Z use the ghost)
        return witt_scalar(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, WittVector) and self.base == other.base and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"W{self.length}({', '.join(map(str, self.components))})"


def witt_add(x: WittVector, y: WittVector) -> WittVector:
    x._check(y)
    S, _ = witt_polynomials(x.p, x.length)
    vals = x.components + y.components
    return WittVector(x.base, [_evaluate(s, vals, x.base) for s in S])


def witt_mul(x: WittVector, y: WittVector) -> WittVector:
    x._check(y)
    _, P = witt_polynomials(x.p, x.length)
    vals = x.components + y.components
    return WittVector(x.base, [_evaluate(q, vals, x.base) for q in P])


def witt_scalar(x: WittVector, k: int) -> WittVector:
    """k * x for an integer k (negative k through (p^n - 1) copies when needed)."""
    n = x.length
    if k < 0:
        if isinstance(x.base, IntegerBase) and x.base.modulus is None:
            # over Z, negate through ghost components
            return from_ghost(x.base, [-g for g in ghost(x)], x.p)
        k = k % (x.p ** (n + _torsion_headroom(x.base)))
    acc = WittVector.zero(x.base, n)
    cur = x
    while k:
        if k & 1:
            acc = acc + cur
        cur = cur + cur
        k >>= 1
    return acc


def _torsion_headroom(base) -> int:
    # W_n over Z/p^M has characteristic dividing p^(n+M-1)
    if isinstance(base, IntegerBase) and base.modulus:
        m, e = base.modulus, 0
        while m % base.p == 0:
            m //= base.p
            e += 1
        return e
    return 0


def ghost(x: WittVector) -> list:
    """Ghost components w_k = sum_i p^i x_i^(p^(k-i)); the base must be torsion free."""
    if not x.base.torsion_free:
        raise TorsionBase(f"ghost components over {x.base!r} do not determine the vector")
    p = x.p
    return [sum(p ** i * x.components[i] ** (p ** (k - i)) for i in range(k + 1)) for k in range(x.length)]


def from_ghost(base, ghosts, p: int) -> WittVector:
    """Inverse of ghost over Z; raises ArithmeticError if the sequence is not a ghost vector."""
    comps = []
    for k, g in enumerate(ghosts):
        rest = g - sum(p ** i * comps[i] ** (p ** (k - i)) for i in range(k))
        if rest % p ** k:
            raise ArithmeticError("not a ghost vector")
        comps.append(rest // p ** k)
    return WittVector(base, comps)


def verschiebung(x: WittVector) -> WittVector:
    """V(x_0, ..., x_{n-2}) = (0, x_0, ..., x_{n-2}) (truncated to length n)."""
    return WittVector(x.base, (x.base.zero,) + x.components[:-1])


def frobenius_W(x: WittVector) -> WittVector:
    """Frobenius.  Over F_q it is the componentwise p-th power; over Z it is
    defined through ghost(F x)_k = ghost(x)_{k+1} and loses the last component."""
    if isinstance(x.base, FieldBase):
        return WittVector(x.base, [x.base.pow(c, x.p) for c in x.components])
    g = ghost(x)
    return from_ghost(x.base, g[1:], x.p)


# -- comparison with the coefficient ring ---------------------------------------------------------


def witt_iso_znp(x: WittVector) -> int:
    """W_n(F_p) -> Z/p^n, (x_i) -> sum p^i omega(x_i) with omega the Teichmuller lift."""
    if not isinstance(x.base, FieldBase) or x.base.field.f != 1:
        raise ValueError("witt_iso_znp expects Witt vectors over F_p")
    p, n = x.p, x.length
    m = p ** n
    return sum(p ** i * pow(c[0], p ** (n - 1), m) for i, c in enumerate(x.components)) % m


def witt_to_coefficients(x: WittVector, params: RingParams) -> CoeffElement:
    """W_n(F_q) -> coefficient ring model: sum p^i omega(x_i^(p^-i))."""
    F = x.base.field
    n = x.length
    if params.n != n or params.p != F.p or params.f != F.f:
        raise ValueError("coefficient ring does not match the Witt vector")
    if tuple(c % F.p for c in params.minpoly) != F.minpoly:
        raise ValueError("coefficient ring minpoly does not reduce to the field minpoly")
    acc = CoeffElement(params, 0)
    for i, c in enumerate(x.components):
        root = F.frob(c, -i)  # x^(p^-i)
        acc = acc + teichmuller(root, params) * (F.p ** i)
    return acc


def field_base(p: int, f: int = 1, minpoly=None) -> FieldBase:
    return FieldBase(FiniteField(p, f, minpoly))


def random_witt(rng, base: FieldBase, n: int) -> WittVector:
    F = base.field
    return WittVector(base, [tuple(int(v) for v in rng.integers(0, F.p, F.f)) for _ in range(n)])


def selftest(seed: int = 0) -> list[tuple[str, bool]]:
    """The checks behind `witt selftest`: returns (name, passed) pairs."""
    import itertools

    import numpy as np

    rng = np.random.default_rng(seed)
    out = []

    B3 = field_base(3)
    pairs = list(itertools.product(itertools.product(range(3), repeat=2), repeat=2))
    add_ok = all(
        witt_iso_znp(WittVector(B3, x) + WittVector(B3, y)) == (witt_iso_znp(WittVector(B3, x)) + witt_iso_znp(WittVector(B3, y))) % 9
        for x, y in pairs
    )
    mul_ok = all(
        witt_iso_znp(WittVector(B3, x) * WittVector(B3, y)) == witt_iso_znp(WittVector(B3, x)) * witt_iso_znp(WittVector(B3, y)) % 9
        for x, y in pairs
    )
    bij = len({witt_iso_znp(WittVector(B3, x)) for x in itertools.product(range(3), repeat=2)}) == 9
    out.append(("W2(F3) = Z/9 addition (81 pairs)", add_ok))
    out.append(("W2(F3) = Z/9 multiplication (81 pairs)", mul_ok))
    out.append(("W2(F3) = Z/9 bijective", bij))

    fv = True
    for p, f, n in ((3, 1, 3), (5, 1, 2), (3, 2, 2), (2, 2, 3)):
        B = field_base(p, f)
        for _ in range(10):
            x = random_witt(rng, B, n)
            fv &= frobenius_W(verschiebung(x)) == witt_scalar(x, p)
    out.append(("F V = p on random vectors", fv))

    BZ = IntegerBase(3)
    gh = True
    for _ in range(20):
        x = WittVector(BZ, [int(v) for v in rng.integers(-20, 20, 3)])
        y = WittVector(BZ, [int(v) for v in rng.integers(-20, 20, 3)])
        gh &= ghost(x + y) == [a + b for a, b in zip(ghost(x), ghost(y))]
        gh &= ghost(x * y) == [a * b for a, b in zip(ghost(x), ghost(y))]
    out.append(("ghost is a ring homomorphism over Z", gh))

    B9 = field_base(3, 2)
    params = RingParams(3, 2, 2, _lift_minpoly(B9.field))
    model = True
    for _ in range(100):
        x, y = random_witt(rng, B9, 2), random_witt(rng, B9, 2)
        cx, cy = witt_to_coefficients(x, params), witt_to_coefficients(y, params)
        model &= witt_to_coefficients(x + y, params) == cx + cy
        model &= witt_to_coefficients(x * y, params) == cx * cy
        model &= witt_to_coefficients(frobenius_W(x), params) == cx.sigma()
    out.append(("W2(F9) matches the coefficient ring on 100 samples", model))
    return out


def _lift_minpoly(F: FiniteField):
    return tuple(int(c) for c in F.minpoly)
