"""W_n(F_q) realised as (Z/p^n)[g]/(P): Frobenius, Teichmueller lift, trace, p-adic log.

The ring is a polynomial quotient; the Witt-coordinate model lives in
:mod:`phigamma.witt` and is cross-checked against this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import NotAUnit
from .finite_field import FiniteField, default_minpoly, format_poly, is_irreducible_mod_p, is_prime, poly_mulmod


@dataclass(frozen=True)
class RingParams:
    """p (odd prime), torsion exponent n, residue degree f and the modulus polynomial.

    ``minpoly`` holds the monic modulus lowest degree first, e.g. ``(-1, -1, 1)``
    for g^2 = g + 1.  Coefficients are stored reduced mod p^n.
    """

    p: int
    n: int = 1
    f: int = 1
    minpoly: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.p == 2:
            raise ValueError("p = 2 is not supported: Gamma is procyclic only for odd p")
        if self.n < 1 or self.f < 1:
            raise ValueError("need n >= 1 and f >= 1")
        mp = self.minpoly if self.minpoly is not None else default_minpoly(self.p, self.f)
        if len(mp) != self.f + 1 or mp[-1] % self.modulus != 1:
            raise ValueError(f"minpoly must be monic of degree {self.f}")
        if not is_irreducible_mod_p(mp, self.p):
            raise ValueError(f"minpoly {format_poly(mp)} is not irreducible mod {self.p}")
        object.__setattr__(self, "minpoly", tuple(c % self.modulus for c in mp))

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    @property
    def q(self) -> int:
        return self.p ** self.f

    def with_n(self, n: int) -> "RingParams":
        return _with_n(self, n)

    @cached_property
    def residue_field(self) -> FiniteField:
        return FiniteField(self.p, self.f, tuple(c % self.p for c in self.minpoly))

    def element(self, value) -> "CoeffElement":
        return CoeffElement(self, value)

    def zero(self) -> "CoeffElement":
        return CoeffElement(self, 0)

    def one(self) -> "CoeffElement":
        return CoeffElement(self, 1)

    def gen(self) -> "CoeffElement":
        if self.f == 1:
            return CoeffElement(self, -self.minpoly[0])
        return CoeffElement(self, (0, 1))

    # -- numpy tables used by the series engine -------------------------------

    @cached_property
    def reduction_table(self) -> np.ndarray:
        """Row k (k < 2f-1) holds the coordinates of g^k in the basis 1, g, ..., g^{f-1}."""
        f, m = self.f, self.modulus
        table = np.zeros((2 * f - 1, f), dtype=np.int64)
        for k in range(2 * f - 1):
            mono = [0] * (k + 1)
            mono[k] = 1
            table[k] = poly_mulmod(mono, [1], self.minpoly, m) if k >= f else np.eye(f, dtype=np.int64)[k]
        return table

    @cached_property
    def sigma_table(self) -> np.ndarray:
        """f x f matrix S with coords(sigma(c)) = coords(c) @ S."""
        rows = [frobenius_sigma(CoeffElement(self, _unit_vec(self.f, t))).coeffs for t in range(self.f)]
        return np.array(rows, dtype=np.int64).reshape(self.f, self.f)

    @cached_property
    def frobenius_root(self) -> tuple[int, ...]:
        """sigma(g): the root of minpoly congruent to g^p mod p, lifted by Newton iteration."""
        m = self.modulus
        mp = self.minpoly
        if self.f == 1:
            return (-mp[0] % m,)
        r = CoeffElement(self, (0, 1)) ** self.p
        deriv = [k * mp[k] % m for k in range(1, len(mp))]
        for _ in range(self.n.bit_length() + 1):
            val = _eval_poly(mp, r)
            dval = _eval_poly(deriv, r)
            r = r - val * coeff_invert(dval)
        return r.coeffs

    def __repr__(self):
        base = f"p={self.p}, n={self.n}, f={self.f}"
        if self.f > 1:
            base += f", minpoly={format_poly([c if c <= self.modulus // 2 else c - self.modulus for c in self.minpoly])}"
        return f"RingParams({base})"


@lru_cache(maxsize=None)
def _with_n(params: RingParams, n: int) -> RingParams:
    if n == params.n:
        return params
    return RingParams(params.p, n, params.f, params.minpoly)


def _unit_vec(f: int, t: int) -> tuple[int, ...]:
    v = [0] * f
    v[t] = 1
    return tuple(v)


def _eval_poly(coeffs: Sequence[int], x: "CoeffElement") -> "CoeffElement":
    acc = x.params.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class CoeffElement:
    """An element of W_n(F_q); immutable, hashable."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: RingParams, value=0):
        m = params.modulus
        if isinstance(value, CoeffElement):
            coeffs = value.coeffs
        elif isinstance(value, (int, np.integer)):
            coeffs = (int(value) % m,) + (0,) * (params.f - 1)
        else:
            value = [int(v) % m for v in value]
            if len(value) > params.f:
                value = poly_mulmod(value, [1], params.minpoly, m)
            coeffs = tuple(value) + (0,) * (params.f - len(value))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", tuple(int(c) % m for c in coeffs))

    def __setattr__(self, key, value):
        raise AttributeError("CoeffElement is immutable")

    def _coerce(self, other) -> "CoeffElement":
        if isinstance(other, CoeffElement):
            if other.params != self.params:
                raise ValueError("mixing elements of different coefficient rings")
            return other
        if isinstance(other, (int, np.integer)):
            return CoeffElement(self.params, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CoeffElement(self.params, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CoeffElement(self.params, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CoeffElement(self.params, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.params
        if p.f == 1:
            return CoeffElement(p, self.coeffs[0] * other.coeffs[0])
        return CoeffElement(p, poly_mulmod(self.coeffs, other.coeffs, p.minpoly, p.modulus))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return coeff_invert(self) ** (-e)
        result = self.params.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * coeff_invert(other)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = CoeffElement(self.params, int(other))
        if not isinstance(other, CoeffElement):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.params, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def reduce(self) -> tuple[int, ...]:
        """Image in the residue field F_q."""
        return tuple(c % self.params.p for c in self.coeffs)

    def is_unit(self) -> bool:
        return any(self.reduce())

    def valuation(self) -> int:
        """p-adic valuation (n for zero)."""
        p = self.params.p
        v = self.params.n
        for c in self.coeffs:
            if c:
                k = 0
                while c % p == 0:
                    c //= p
                    k += 1
                v = min(v, k)
        return v

    def lift(self, n: int) -> "CoeffElement":
        """Canonical lift to W_n for a larger n (same integer representatives)."""
        return CoeffElement(self.params.with_n(n), self.coeffs)

    def sigma(self, k: int = 1) -> "CoeffElement":
        return frobenius_sigma(self, k)

    def __repr__(self):
        return f"CoeffElement({format_poly(self.coeffs)} mod {self.params.p}^{self.params.n})"

    def __str__(self):
        return format_poly(self.coeffs)


def coeff_invert(c: CoeffElement) -> CoeffElement:
    """Inverse in W_n(F_q): residue-field inverse, then Newton lifting y <- y(2 - cy)."""
    params = c.params
    red = c.reduce()
    if not any(red):
        raise NotAUnit(f"{c} is not a unit")
    y = CoeffElement(params, params.residue_field.inv(red))
    prec = 1
    while prec < params.n:
        y = y * (2 - c * y)
        prec *= 2
    return y


def frobenius_sigma(c: CoeffElement, k: int = 1) -> CoeffElement:
    """The Frobenius automorphism of W_n(F_q) (identity when f = 1)."""
    params = c.params
    k %= params.f
    if params.f == 1 or k == 0 or not c:
        return c
    root = CoeffElement(params, params.frobenius_root)
    out = c
    for _ in range(k):
        out = _eval_poly(out.coeffs, root)
    return out


def teichmuller(a, params: RingParams) -> CoeffElement:
    """Multiplicative lift of a residue a in F_q: x^{q^(n-1)} for any lift x."""
    if isinstance(a, CoeffElement):
        a = a.reduce()
    x = CoeffElement(params, a if not isinstance(a, int) else a)
    for _ in range(params.n - 1):
        x = x ** params.q
    return x


def trace_to_base(c: CoeffElement) -> int:
    """Tr_{W_n(F_q)/(Z/p^n)}(c) as an integer in [0, p^n)."""
    acc = c
    conj = c
    for _ in range(c.params.f - 1):
        conj = frobenius_sigma(conj)
        acc = acc + conj
    if any(acc.coeffs[1:]):
        raise ArithmeticError("trace did not land in Z/p^n; minpoly/Frobenius mismatch")
    return acc.coeffs[0]


def padic_log(u: CoeffElement, extra_precision: int = 0) -> CoeffElement:
    """log<u> with <u> = u / teich(u mod p), returned mod p^(n + extra_precision).

    u is taken as its canonical lift.  Terms y^k/k of valuation >= m are dropped;
    the series is summed at an internal modulus large enough to divide by k.
    """
    if not u.is_unit():
        raise NotAUnit(f"log of non-unit {u}")
    p = u.params.p
    m = u.params.n + extra_precision
    kmax = 1
    while (kmax + 1) - _vp_int(kmax + 1, p) < m:
        kmax += 1
    extra = 0
    while p ** extra < kmax:
        extra += 1
    work = u.params.with_n(m + extra)
    uu = CoeffElement(work, u.coeffs)
    y = uu * coeff_invert(teichmuller(uu.reduce(), work)) - 1
    total = [0] * work.f
    power = work.one()
    target = p ** m
    for k in range(1, kmax + 1):
        power = power * y
        v = _vp_int(k, p)
        unit = k // p ** v
        inv = pow(unit, -1, target)
        sign = 1 if k % 2 else -1
        for t, coeff in enumerate(power.coeffs):
            if coeff % p ** v:
                raise ArithmeticError("log series term not divisible by its denominator")
            total[t] += sign * (coeff // p ** v) * inv
    return CoeffElement(u.params.with_n(m), total)


def _vp_int(k: int, p: int) -> int:
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def parse_coeff(text: str, params: RingParams) -> CoeffElement:
    """Parse an integer polynomial in the formal generator ``g``, e.g. ``2*g+1``."""
    from .literals import parse_gpoly

    return CoeffElement(params, parse_gpoly(text))


def random_coeff(rng, params: RingParams, unit: bool = False) -> CoeffElement:
    while True:
        c = CoeffElement(params, [int(rng.integers(params.modulus)) for _ in range(params.f)])
        if not unit or c.is_unit():
            return c


def iter_coeffs(params: RingParams) -> Iterable[CoeffElement]:
    import itertools

    for tup in itertools.product(range(params.modulus), repeat=params.f):
        yield CoeffElement(params, tup)
