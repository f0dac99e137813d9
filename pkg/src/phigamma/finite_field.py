"""Finite fields F_q = F_p[g]/(P) and the polynomial helpers shared with W_n(F_q).

Polynomials are plain tuples of ints, lowest degree first.  This module is
deliberately small: it backs the characteristic-p side (Artin-Schreier
complexes, the brute-force oracle, Witt vectors over F_q) where p = 2 is
allowed, and it supplies irreducibility tests for the Cohen ring model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], m: int) -> list[int]:
    """Product of a and b modulo the monic polynomial `mod`, coefficients mod m."""
    f = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k] % m
        if c:
            for t in range(f + 1):
                prod[k - f + t] -= c * mod[t]
    out = [x % m for x in prod[:f]]
    return out + [0] * (f - len(out))


def poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], m: int) -> list[int]:
    f = len(mod) - 1
    result = [1 % m] + [0] * (f - 1)
    base = list(a) + [0] * (f - len(a))
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, m)
        base = poly_mulmod(base, base, mod, m)
        e >>= 1
    return result


def _poly_divmod_p(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        _trim(a)
    return q, a


def poly_gcd_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        _, r = _poly_divmod_p(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Rabin-style test: gcd(x^{p^k} - x, P) = 1 for k <= f/2, P monic of degree f."""
    poly = [x % p for x in poly]
    f = len(poly) - 1
    if f < 1 or poly[-1] != 1:
        return False
    if f == 1:
        return True
    x = [0, 1] + [0] * (f - 2)
    xk = list(x)
    for _ in range(f // 2):
        xk = poly_powmod(xk, p, poly, p)
        diff = [(u - v) % p for u, v in zip(xk, x)]
        if len(poly_gcd_p(poly, diff, p)) > 1:
            return False
    return True


def default_minpoly(p: int, f: int) -> tuple[int, ...]:
    """First irreducible monic polynomial of degree f in a fixed search order.

    The shape g^f = g + c is tried first (this gives g^2 = g + 1 over F_3),
    then every monic polynomial in lexicographic order of its coefficients.
    """
    if f == 1:
        return (0, 1)
    for c in range(1, p):
        cand = [(-c) % p, (-1) % p] + [0] * (f - 2) + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    for tail in itertools.product(range(p), repeat=f):
        cand = list(tail) + [1]
        if cand[0] and is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {f} over F_{p}")


@dataclass(frozen=True)
class FiniteField:
    """F_q with q = p^f, elements are coefficient tuples in the basis 1, g, ..., g^{f-1}."""

    p: int
    f: int = 1
    minpoly: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.f < 1:
            raise ValueError("residue degree must be >= 1")
        mp = self.minpoly if self.minpoly is not None else default_minpoly(self.p, self.f)
        mp = tuple(x % self.p for x in mp)
        if len(mp) != self.f + 1 or not is_irreducible_mod_p(mp, self.p):
            raise ValueError(f"minpoly {mp} is not irreducible of degree {self.f} mod {self.p}")
        object.__setattr__(self, "minpoly", mp)

    @property
    def q(self) -> int:
        return self.p ** self.f

    def __call__(self, value) -> tuple[int, ...]:
        if isinstance(value, int):
            return (value % self.p,) + (0,) * (self.f - 1)
        value = tuple(x % self.p for x in value)
        if len(value) != self.f:
            raise ValueError(f"expected {self.f} coordinates, got {len(value)}")
        return value

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.f

    @property
    def one(self) -> tuple[int, ...]:
        return self(1)

    @property
    def gen(self) -> tuple[int, ...]:
        if self.f == 1:
            return (-self.minpoly[0] % self.p,)
        return self((0, 1) + (0,) * (self.f - 2))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for tup in itertools.product(range(self.p), repeat=self.f):
            yield tuple(reversed(tup))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        if self.f == 1:
            return (a[0] * b[0] % self.p,)
        return tuple(poly_mulmod(a, b, self.minpoly, self.p))

    def scale(self, c: int, a):
        return tuple(c * x % self.p for x in a)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.f == 1:
            return (pow(a[0], e, self.p),)
        return tuple(poly_powmod(a, e, self.minpoly, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def frob(self, a, k: int = 1):
        """The absolute Frobenius x -> x^p applied k times."""
        return self.pow(a, self.p ** (k % self.f))

    def is_zero(self, a) -> bool:
        return not any(a)

    @cached_property
    def frobenius_matrix(self) -> list[list[int]]:
        """F_p-matrix of x -> x^p in the basis g^t (column t holds the image of g^t)."""
        cols = []
        for t in range(self.f):
            e = [0] * self.f
            e[t] = 1
            cols.append(self.frob(tuple(e)))
        return [[cols[t][s] for t in range(self.f)] for s in range(self.f)]

    def mul_matrix(self, a) -> list[list[int]]:
        """F_p-matrix of multiplication by a."""
        cols = []
        for t in range(self.f):
            e = [0] * self.f
            e[t] = 1
            cols.append(self.mul(a, tuple(e)))
        return [[cols[t][s] for t in range(self.f)] for s in range(self.f)]

    def format(self, a) -> str:
        return format_poly(a, "g")

    def __repr__(self):
        if self.f == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.f}, minpoly={format_poly(self.minpoly, 'g')})"


def format_poly(coeffs: Sequence[int], var: str = "g") -> str:
    """Render coefficients (lowest first) as e.g. ``2*g+1``; zero renders as ``0``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"
