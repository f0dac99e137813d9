"""Truncated Laurent series over W_n(F_q): the working Cohen ring mod p^n.

An element is ``sum a_i pi^i`` with ``a_i`` in W_n(F_q).  It stores a window
``(lo, hi)``: no coefficient below ``lo`` is nonzero, and the element is known
modulo ``O(pi^(hi+1))``.  ``hi = math.inf`` marks an exact Laurent polynomial.
Arithmetic never reports coefficients past the guaranteed precision.

The ring actions follow the cyclotomic model pi = [eps] - 1:
phi(pi) = (1+pi)^p - 1 and gamma(pi) = (1+pi)^a - 1 with a = chi(gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .coefficients import CoeffElement, RingParams, coeff_invert
from .errors import NotAUnit, WindowTooSmall
from .literals import parse_literal

DEFAULT_WINDOW = (-32, 32)
DEFAULT_HI = DEFAULT_WINDOW[1]
MAX_WINDOW = 256

INF = math.inf


def _binom_mod(a: int, k: int, m: int) -> int:
    return math.comb(a, k) % m


@dataclass(frozen=True)
class ActionParams:
    """chi(gamma) = a for the chosen topological generator gamma of Gamma."""

    a: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("chi(gamma) must be a positive integer")

    def check(self, p: int) -> None:
        if not is_primitive_root_mod_p2(self.a, p):
            raise ValueError(f"a = {self.a} is not a primitive root mod {p}^2")


def is_primitive_root_mod_p2(a: int, p: int) -> bool:
    m = p * p
    if math.gcd(a, p) != 1:
        return False
    order = p * (p - 1)
    for r in _prime_factors(order):
        if pow(a, order // r, m) == 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def default_action(p: int) -> ActionParams:
    """Smallest a >= 2 that is a primitive root mod p^2 (a = 2 for p = 3, 5)."""
    a = 2
    while not is_primitive_root_mod_p2(a, p):
        a += 1
    return ActionParams(a)


class LaurentElement:
    """A truncated Laurent series; immutable value semantics."""

    __slots__ = ("params", "lo", "hi", "data")

    def __init__(self, params: RingParams, lo: int, data, hi=INF):
        arr = np.asarray(data, dtype=np.int64).reshape(-1, params.f) % params.modulus
        if hi != INF:
            hi = int(hi)
            top = hi - lo + 1
            if top < arr.shape[0]:
                arr = arr[: max(top, 0)]
        nz = np.flatnonzero(arr.any(axis=1))
        if nz.size == 0:
            arr = arr[:0]
            lo = (hi + 1) if hi != INF else 0
        else:
            arr = arr[nz[0] : nz[-1] + 1]
            lo = lo + int(nz[0])
        arr.setflags(write=False)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "lo", int(lo))
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, key, value):
        raise AttributeError("LaurentElement is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, params: RingParams, hi=INF) -> "LaurentElement":
        return cls(params, 0, np.zeros((0, params.f), dtype=np.int64), hi)

    @classmethod
    def constant(cls, params: RingParams, c, hi=INF) -> "LaurentElement":
        c = c if isinstance(c, CoeffElement) else CoeffElement(params, c)
        return cls(params, 0, [c.coeffs], hi)

    @classmethod
    def monomial(cls, params: RingParams, k: int, c=1, hi=INF) -> "LaurentElement":
        c = c if isinstance(c, CoeffElement) else CoeffElement(params, c)
        return cls(params, k, [c.coeffs], hi)

    @classmethod
    def from_terms(cls, params: RingParams, terms: dict, hi=INF) -> "LaurentElement":
        """Build from ``{exponent: CoeffElement | int | coefficient tuple}``."""
        terms = {k: v for k, v in terms.items()}
        if not terms:
            return cls.zero(params, hi)
        lo, top = min(terms), max(terms)
        arr = np.zeros((top - lo + 1, params.f), dtype=np.int64)
        for k, v in terms.items():
            arr[k - lo] = CoeffElement(params, v).coeffs if not isinstance(v, CoeffElement) else v.coeffs
        return cls(params, lo, arr, hi)

    @classmethod
    def parse(cls, text: str, params: RingParams, hi=INF) -> "LaurentElement":
        terms: dict[int, list[int]] = {}
        for (pe, ge), v in parse_literal(text).items():
            terms.setdefault(pe, [0] * (ge + 1))
            row = terms[pe]
            if len(row) <= ge:
                row.extend([0] * (ge + 1 - len(row)))
            row[ge] += v
        return cls.from_terms(params, {k: CoeffElement(params, v) for k, v in terms.items()}, hi)

    # -- basic queries -------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.hi == INF

    @property
    def top(self) -> int:
        """Highest stored exponent (lo - 1 when nothing is stored)."""
        return self.lo + self.data.shape[0] - 1

    @property
    def window(self) -> tuple:
        return (self.lo, self.hi)

    def is_zero(self) -> bool:
        return self.data.shape[0] == 0

    def valuation(self):
        """Lowest exponent with a nonzero coefficient; inf for the zero element."""
        return INF if self.is_zero() else self.lo

    def coeff(self, i: int) -> CoeffElement:
        if i > self.hi:
            raise WindowTooSmall(f"coefficient of pi^{i} unknown (precision O(pi^{self.hi + 1}))")
        if i < self.lo or i > self.top:
            return CoeffElement(self.params, 0)
        return CoeffElement(self.params, self.data[i - self.lo])

    def terms(self) -> dict[int, CoeffElement]:
        return {
            self.lo + k: CoeffElement(self.params, row) for k, row in enumerate(self.data) if row.any()
        }

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for exponents lo..hi-1 as an array of shape (hi - lo, f)."""
        if hi - 1 > self.hi:
            raise WindowTooSmall(f"need coefficients up to pi^{hi - 1}, known to pi^{self.hi}")
        out = np.zeros((max(hi - lo, 0), self.params.f), dtype=np.int64)
        if self.is_zero():
            return out
        if self.lo < lo:
            raise WindowTooSmall(f"element has terms below pi^{lo}")
        s, e = self.lo, min(self.top, hi - 1)
        if e >= s:
            out[s - lo : e - lo + 1] = self.data[: e - s + 1]
        return out

    def truncate(self, hi) -> "LaurentElement":
        if hi >= self.hi:
            return self
        return LaurentElement(self.params, self.lo, self.data, hi)

    def reduce_mod_p(self) -> "LaurentElement":
        """Residue mod p, as an element of the same ring (coefficients in [0, p))."""
        return LaurentElement(self.params, self.lo, self.data % self.params.p, self.hi)

    def is_unit(self) -> bool:
        return bool((self.data % self.params.p).any())

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "LaurentElement":
        if isinstance(other, LaurentElement):
            if other.params != self.params:
                raise ValueError("mixing series over different coefficient rings")
            return other
        if isinstance(other, (int, np.integer, CoeffElement)):
            return LaurentElement.constant(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return LaurentElement(self.params, self.lo, -self.data, self.hi)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return LaurentElement(self.params, self.lo, self.data * (int(other) % self.params.modulus), self.hi)
        if isinstance(other, CoeffElement):
            return scale(self, other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_invert(self) ** (-e)
        result = LaurentElement.constant(self.params, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "LaurentElement":
        """Multiply by pi^k."""
        return LaurentElement(self.params, self.lo + k, self.data, self.hi + k)

    def agrees(self, other, hi=None) -> bool:
        """Equality on the common known range (optionally capped at ``hi``)."""
        other = self._coerce(other)
        top = min(self.hi, other.hi)
        if hi is not None:
            top = min(top, hi)
        if top == INF:
            return self.lo == other.lo and np.array_equal(self.data, other.data)
        lo = min(self.lo, other.lo)
        if top < lo:
            return True
        return np.array_equal(self.dense(lo, int(top) + 1), other.dense(lo, int(top) + 1))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, CoeffElement, LaurentElement)):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
            return self.agrees(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        prec = "exact" if self.exact else f"O(pi^{self.hi + 1})"
        return f"LaurentElement({format_series(self)}; {prec})"

    def __str__(self):
        return format_series(self)


def _add(x: LaurentElement, y: LaurentElement, sign: int) -> LaurentElement:
    hi = min(x.hi, y.hi)
    if x.is_zero() and y.is_zero():
        return LaurentElement.zero(x.params, hi)
    lo = min(x.lo if not x.is_zero() else y.lo, y.lo if not y.is_zero() else x.lo)
    top = max(x.top, y.top)
    if hi != INF:
        top = min(top, hi)
    if top < lo:
        return LaurentElement.zero(x.params, hi)
    out = np.zeros((top - lo + 1, x.params.f), dtype=np.int64)
    for el, s in ((x, 1), (y, sign)):
        if el.is_zero():
            continue
        e = min(el.top, top)
        if e >= el.lo:
            out[el.lo - lo : e - lo + 1] += s * el.data[: e - el.lo + 1]
    return LaurentElement(x.params, lo, out, hi)


def conv(params: RingParams, a: np.ndarray, b: np.ndarray, length: int | None = None) -> np.ndarray:
    """Coefficient arrays (L, f) convolved over W_n(F_q); optionally cut to `length` rows."""
    m = params.modulus
    f = params.f
    if a.shape[0] == 0 or b.shape[0] == 0:
        n_out = 0 if length is None else length
        return np.zeros((n_out, f), dtype=np.int64)
    if length is not None:
        a = a[:length]
        b = b[:length]
    n_out = a.shape[0] + b.shape[0] - 1
    if f == 1:
        out = np.convolve(a[:, 0], b[:, 0]).reshape(-1, 1) % m
    else:
        raw = np.zeros((n_out, 2 * f - 1), dtype=np.int64)
        for t1 in range(f):
            col = a[:, t1]
            if not col.any():
                continue
            for t2 in range(f):
                raw[:, t1 + t2] += np.convolve(col, b[:, t2])
        raw %= m
        out = (raw @ params.reduction_table) % m
    if length is not None:
        if out.shape[0] >= length:
            out = out[:length]
        else:
            out = np.vstack([out, np.zeros((length - out.shape[0], f), dtype=np.int64)])
    return out


def coeff_matrix(c: CoeffElement) -> np.ndarray:
    """f x f matrix T with coords(c * x) = coords(x) @ T."""
    params = c.params
    rows = []
    for t in range(params.f):
        e = [0] * params.f
        e[t] = 1
        rows.append((c * CoeffElement(params, e)).coeffs)
    return np.array(rows, dtype=np.int64).reshape(params.f, params.f)


def scale(x: LaurentElement, c: CoeffElement) -> LaurentElement:
    if x.params.f == 1:
        return LaurentElement(x.params, x.lo, x.data * c.coeffs[0], x.hi)
    return LaurentElement(x.params, x.lo, (x.data @ coeff_matrix(c)) % x.params.modulus, x.hi)


def series_mul(x: LaurentElement, y: LaurentElement) -> LaurentElement:
    """Product with window (x.lo + y.lo, min(x.hi + y.lo, y.hi + x.lo))."""
    if x.params != y.params:
        raise ValueError("mixing series over different coefficient rings")
    xlo = x.lo if not x.is_zero() else (x.hi + 1 if x.hi != INF else 0)
    ylo = y.lo if not y.is_zero() else (y.hi + 1 if y.hi != INF else 0)
    hi = min(x.hi + ylo, y.hi + xlo)
    if x.is_zero() or y.is_zero():
        return LaurentElement.zero(x.params, hi)
    lo = x.lo + y.lo
    length = None if hi == INF else int(hi) - lo + 1
    if length is not None and length <= 0:
        return LaurentElement.zero(x.params, hi)
    return LaurentElement(x.params, lo, conv(x.params, x.data, y.data, length), hi)


def _unit_power_series_inverse(params: RingParams, a: np.ndarray, prec: int) -> np.ndarray:
    """Inverse of a power series with unit constant term, to `prec` coefficients (Newton)."""
    m = params.modulus
    a0 = CoeffElement(params, a[0])
    z = np.array([coeff_invert(a0).coeffs], dtype=np.int64)
    k = 1
    two = np.zeros((1, params.f), dtype=np.int64)
    two[0, 0] = 2
    while k < prec:
        k = min(2 * k, prec)
        az = conv(params, a[:k] if a.shape[0] >= k else a, z, k)
        corr = -az
        corr[0] = (corr[0] + two[0]) % m
        z = conv(params, z, corr % m, k)
    return z[:prec]


def series_invert(x: LaurentElement, hi=None) -> LaurentElement:
    """Inverse of a unit of W_n(F_q)((pi)).

    Write x = pi^v (y_+ + y_-) with y_+ a power series with unit constant term
    and y_- the polar part (divisible by p).  Then
    x^{-1} = pi^{-v} y_+^{-1} sum_{k<n} (-y_- y_+^{-1})^k, the sum being finite
    because y_- is nilpotent.  For exact x the result is computed to ``hi``
    (default DEFAULT_HI); otherwise the precision is whatever x supports.
    """
    params = x.params
    red = x.data % params.p
    nz = np.flatnonzero(red.any(axis=1))
    if nz.size == 0:
        if x.exact or x.is_zero() and x.hi == INF:
            raise NotAUnit("series is 0 mod p")
        raise WindowTooSmall("known coefficients all vanish mod p; cannot certify a unit")
    v = x.lo + int(nz[0])
    y = x.shift(-v)
    if y.lo < 0 and y.hi < -1:
        raise WindowTooSmall("polar part not fully known")
    polar_len = max(0, -y.lo)
    y_minus = LaurentElement(params, y.lo, y.data[:polar_len]) if polar_len else LaurentElement.zero(params)
    plus_data = y.data[polar_len:] if y.lo < 0 else y.data
    if y.exact:
        target = DEFAULT_HI if hi is None else hi
        need = int(target) + v + (params.n - 1) * polar_len + 1
        prec = max(need, 1)
        y_plus = LaurentElement(params, 0, plus_data, prec - 1)
    else:
        y_plus = LaurentElement(params, 0, plus_data, y.hi)
        prec = int(y.hi) + 1
        target = None
    if prec <= 0:
        raise WindowTooSmall("no precision left for the inverse")
    dense = y_plus.dense(0, prec) if not y_plus.is_zero() else np.zeros((prec, params.f), dtype=np.int64)
    z = LaurentElement(params, 0, _unit_power_series_inverse(params, dense, prec), prec - 1)
    result = z
    if not y_minus.is_zero():
        w = -(y_minus * z)
        term = LaurentElement.constant(params, 1)
        acc = LaurentElement.constant(params, 1)
        for _ in range(params.n - 1):
            term = term * w
            acc = acc + term
        result = z * acc
    result = result.shift(-v)
    if target is not None:
        if result.hi < target:
            raise WindowTooSmall("internal precision loss in series_invert")
        result = result.truncate(target)
    elif hi is not None:
        result = result.truncate(hi)
    return result


@lru_cache(maxsize=256)
def one_plus_pi_pow(a: int, params: RingParams) -> LaurentElement:
    """(1+pi)^a = sum_k C(a, k) pi^k with exact integer binomials reduced mod p^n."""
    if a < 0:
        raise ValueError("use series_invert for negative exponents")
    m = params.modulus
    rows = np.zeros((a + 1, params.f), dtype=np.int64)
    rows[:, 0] = [_binom_mod(a, k, m) for k in range(a + 1)]
    return LaurentElement(params, 0, rows)


@lru_cache(maxsize=64)
def phi_of_pi(params: RingParams) -> LaurentElement:
    return one_plus_pi_pow(params.p, params) - 1


@lru_cache(maxsize=64)
def phi_of_pi_inverse(params: RingParams) -> LaurentElement:
    """1/phi(pi): an exact Laurent polynomial (phi(pi) = pi^p (1 + polar part))."""
    inv = series_invert(phi_of_pi(params), hi=0)
    # the exact inverse has no terms above pi^{-p}; certify and drop the precision tag
    if inv.top > -params.p:
        raise ArithmeticError("unexpected shape of 1/phi(pi)")
    return LaurentElement(params, inv.lo, inv.data)


@lru_cache(maxsize=4096)
def phi_pi_power(params: RingParams, j: int) -> LaurentElement:
    """phi(pi)^j as an exact Laurent polynomial (any integer j)."""
    if j == 0:
        return LaurentElement.constant(params, 1)
    if j > 0:
        prev = phi_pi_power(params, j - 1)
        return prev * phi_of_pi(params)
    prev = phi_pi_power(params, j + 1)
    return prev * phi_of_pi_inverse(params)


def gamma_of_pi(params: RingParams, act: ActionParams) -> LaurentElement:
    return one_plus_pi_pow(act.a, params) - 1


@lru_cache(maxsize=256)
def _gamma_unit_inverse(params: RingParams, a: int, prec: int) -> LaurentElement:
    """1/(gamma(pi)/pi) to `prec` coefficients."""
    v = (one_plus_pi_pow(a, params) - 1).shift(-1)
    dense = v.dense(0, max(prec, v.top + 1))[:prec]
    return LaurentElement(params, 0, _unit_power_series_inverse(params, dense, prec), prec - 1)


def gamma_pi_power(params: RingParams, act: ActionParams, j: int, hi) -> LaurentElement:
    """gamma(pi)^j known to O(pi^(hi+1)); exact when j >= 0."""
    if j >= 0:
        g = gamma_of_pi(params, act)
        out = LaurentElement.constant(params, 1)
        for _ in range(j):
            out = out * g
            if hi != INF:
                out = out.truncate(hi)
        return out
    prec = int(hi) - j + 1
    w = _gamma_unit_inverse(params, act.a, max(prec, 1))
    out = LaurentElement.constant(params, 1)
    for _ in range(-j):
        out = out * w
    return out.shift(j).truncate(hi)


def apply_phi(x: LaurentElement, hi=None) -> LaurentElement:
    """sigma on coefficients, then pi -> (1+pi)^p - 1.

    Exact inputs give exact outputs.  For inexact x the unknown tail O(pi^(h+1))
    maps into terms of exponent >= lowest exponent of phi(pi)^(h+1).
    """
    params = x.params
    if x.exact:
        new_hi = INF
    else:
        new_hi = phi_pi_power(params, int(x.hi) + 1).valuation() - 1
    if hi is not None:
        new_hi = min(new_hi, hi)
    if x.is_zero():
        return LaurentElement.zero(params, new_hi)
    data = (x.data @ params.sigma_table) % params.modulus if params.f > 1 else x.data
    acc = LaurentElement.zero(params, new_hi)
    for k, row in enumerate(data):
        if not row.any():
            continue
        j = x.lo + k
        if j > x.hi:
            break
        term = phi_pi_power(params, j)
        if new_hi != INF:
            if term.valuation() > new_hi:
                continue
            term = term.truncate(new_hi)
        acc = acc + scale(term, CoeffElement(params, row))
    return acc


def apply_gamma(x: LaurentElement, act: ActionParams, hi=None) -> LaurentElement:
    """Coefficients fixed, pi -> (1+pi)^a - 1.  Valuation-preserving, so precision is kept."""
    params = x.params
    new_hi = x.hi
    if new_hi == INF and x.lo < 0 and not x.is_zero():
        new_hi = DEFAULT_HI if hi is None else hi
    if hi is not None:
        new_hi = min(new_hi, hi)
    if x.is_zero():
        return LaurentElement.zero(params, new_hi)
    return compose(x, gamma_of_pi(params, act), new_hi)


def compose(x: LaurentElement, u: LaurentElement, hi=None) -> LaurentElement:
    """x(u) for u = pi * (unit power series); coefficients of x are not touched."""
    params = x.params
    if u.valuation() != 1 or u.coeff(1).is_unit() is False:
        raise ValueError("substitution needs u = pi * unit")
    new_hi = x.hi if hi is None else min(x.hi, hi)
    if u.hi != INF:
        new_hi = min(new_hi, u.hi + (x.lo - 1 if x.lo < 0 else 0))
    if new_hi == INF and x.lo < 0:
        new_hi = DEFAULT_HI
    if x.is_zero():
        return LaurentElement.zero(params, new_hi)
    unit = u.shift(-1)
    span = (int(new_hi) if new_hi != INF else x.top) - x.lo + 1
    acc = LaurentElement.zero(params, new_hi)
    pos = LaurentElement.constant(params, 1)
    neg = None
    for k, row in enumerate(x.data):
        j = x.lo + k
        if new_hi != INF and j > new_hi:
            break
        if not row.any():
            continue
        if j >= 0:
            term = u ** j if j < 8 else _pow_trunc(u, j, new_hi)
        else:
            if neg is None:
                prec = span + 1
                dense = unit.dense(0, max(prec, unit.top + 1))[:prec]
                neg = LaurentElement(params, 0, _unit_power_series_inverse(params, dense, prec), prec - 1)
            term = _pow_trunc(neg, -j, int(new_hi) - j).shift(j)
        if new_hi != INF:
            term = term.truncate(new_hi)
        acc = acc + scale(term, CoeffElement(params, row))
    del pos
    return acc


def _pow_trunc(x: LaurentElement, e: int, hi) -> LaurentElement:
    out = LaurentElement.constant(x.params, 1)
    base = x
    while e:
        if e & 1:
            out = (out * base).truncate(hi) if hi != INF else out * base
        e >>= 1
        if e:
            base = (base * base).truncate(hi) if hi != INF else base * base
    return out


def derivative(x: LaurentElement) -> LaurentElement:
    """d/dpi, so that dx = derivative(x) dpi."""
    if x.is_zero():
        return LaurentElement.zero(x.params, x.hi - 1)
    ks = np.arange(x.lo, x.lo + x.data.shape[0], dtype=np.int64).reshape(-1, 1)
    return LaurentElement(x.params, x.lo - 1, x.data * (ks % x.params.modulus), x.hi - 1)


@dataclass(frozen=True)
class DifferentialForm:
    """body * dpi."""

    body: LaurentElement

    @property
    def params(self) -> RingParams:
        return self.body.params

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.body + other.body)

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.body - other.body)

    def __rmul__(self, c) -> "DifferentialForm":
        return DifferentialForm(self.body * c)

    def __eq__(self, other):
        return isinstance(other, DifferentialForm) and self.body.agrees(other.body)

    __hash__ = None

    def __repr__(self):
        return f"({format_series(self.body)}) dpi"


def d(x: LaurentElement) -> DifferentialForm:
    return DifferentialForm(derivative(x))


def residue(omega: DifferentialForm) -> CoeffElement:
    """res(sum a_i pi^i dpi) = a_{-1}."""
    body = omega.body if isinstance(omega, DifferentialForm) else omega
    if body.hi < -1:
        raise WindowTooSmall("residue needs the coefficient of pi^-1")
    return body.coeff(-1)


def format_series(x: LaurentElement, centered: bool = False) -> str:
    """Render in the literal grammar, e.g. ``1 + 2*pi^1 + (g+1)*pi^-2``."""
    from .finite_field import format_poly

    if x.is_zero():
        return "0"
    parts = []
    m = x.params.modulus
    for k, row in enumerate(x.data):
        if not row.any():
            continue
        j = x.lo + k
        coeffs = [int(c) for c in row]
        if centered:
            coeffs = [c - m if c > m // 2 else c for c in coeffs]
        nonzero = [t for t, c in enumerate(coeffs) if c]
        cstr = format_poly(coeffs, "g")
        if len(nonzero) > 1 or (nonzero and nonzero[0] > 0 and coeffs[nonzero[0]] != 1):
            cstr = f"({cstr})"
        if j == 0:
            parts.append(cstr)
        elif cstr == "1":
            parts.append(f"pi^{j}")
        else:
            parts.append(f"{cstr}*pi^{j}")
    return " + ".join(parts)


def random_series(rng, params: RingParams, lo: int, hi: int, exact: bool = True) -> LaurentElement:
    data = rng.integers(0, params.modulus, size=(hi - lo + 1, params.f))
    return LaurentElement(params, lo, data, INF if exact else hi)


def laurent_terms(x: LaurentElement) -> Iterable[tuple[int, CoeffElement]]:
    return x.terms().items()
