"""Module description files.

    phigamma v1
    p = 3
    n = 1
    f = 1
    chi = 2
    rank = 1
    torsion = 1
    phi:
      (1,1): 1
    gamma:
      (1,1): 1

``minpoly`` (a polynomial in g) is required when f > 1.  Matrix indices are
1-based, omitted entries are 0.  An entry may end in ``+ O(pi^k)`` to say it is
only known below pi^k.  An optional ``gammaprime:`` block makes the file
describe a module with two generators.  ``#`` starts a comment.
"""

from __future__ import annotations

import re

from .c3 import TwoGenModule, validate_two_gen
from .coefficients import RingParams
from .errors import ParseError, ValidationError
from .finite_field import format_poly
from .laurent import INF, ActionParams, LaurentElement, format_series
from .literals import parse_gpoly
from .modules import PhiGammaModule, validate

HEADER = "phigamma v1"
KEYS = ("p", "n", "f", "minpoly", "chi", "rank", "torsion")
BLOCKS = ("phi", "gamma", "gammaprime")

_KEY = re.compile(r"^([a-z]+)\s*=\s*(.*)$")
_BLOCK = re.compile(r"^([a-z]+)\s*:\s*$")
_ENTRY = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:\s*(.*)$")
_BIGO = re.compile(r"\+\s*O\(\s*pi\s*\^\s*([-+]?\d+)\s*\)\s*$")


def _int(text: str, line: int, col: int, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {text!r}", line, col) from None


def parse_text(text: str, do_validate: bool = True):
    """Parse a module file; returns a PhiGammaModule or a TwoGenModule."""
    lines = text.splitlines()
    keys: dict = {}
    blocks: dict = {}
    current = None
    seen_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if not seen_header:
            if stripped != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno, indent + 1)
            seen_header = True
            continue
        m = _ENTRY.match(stripped)
        if m:
            if current is None:
                raise ParseError("matrix entry outside a block", lineno, indent + 1)
            body = m.group(3)
            col = indent + 1 + stripped.index(body) if body else indent + 1
            blocks[current].append((int(m.group(1)), int(m.group(2)), body, lineno, col))
            continue
        m = _BLOCK.match(stripped)
        if m:
            name = m.group(1)
            if name not in BLOCKS:
                raise ParseError(f"unknown block {name!r}", lineno, indent + 1)
            if name in blocks:
                raise ParseError(f"block {name!r} given twice", lineno, indent + 1)
            blocks[name] = []
            current = name
            continue
        m = _KEY.match(stripped)
        if m:
            key, value = m.group(1), m.group(2).strip()
            if key not in KEYS:
                raise ParseError(f"unknown key {key!r}", lineno, indent + 1)
            if key in keys:
                raise ParseError(f"key {key!r} given twice", lineno, indent + 1)
            keys[key] = (value, lineno, indent + 1 + stripped.index(m.group(2)) if m.group(2) else indent + 1)
            current = None
            continue
        raise ParseError(f"cannot read {stripped!r}", lineno, indent + 1)
    if not seen_header:
        raise ParseError(f"expected header {HEADER!r}", 1, 1)

    for key in ("p", "n", "chi", "rank"):
        if key not in keys:
            raise ParseError(f"missing key {key!r}", len(lines) or 1, 1)
    for name in ("phi", "gamma"):
        if name not in blocks:
            raise ParseError(f"missing block {name!r}:", len(lines) or 1, 1)

    p = _int(keys["p"][0], keys["p"][1], keys["p"][2], "p")
    n = _int(keys["n"][0], keys["n"][1], keys["n"][2], "n")
    f = _int(keys["f"][0], keys["f"][1], keys["f"][2], "f") if "f" in keys else 1
    a = _int(keys["chi"][0], keys["chi"][1], keys["chi"][2], "chi")
    d = _int(keys["rank"][0], keys["rank"][1], keys["rank"][2], "rank")
    minpoly = None
    if "minpoly" in keys:
        value, ln, col = keys["minpoly"]
        try:
            minpoly = tuple(parse_gpoly(value))
        except ParseError as exc:
            raise ParseError(exc.message, ln, col + (exc.column or 1) - 1) from None
    elif f > 1:
        raise ParseError("minpoly is required when f > 1", keys["f"][1], 1)
    try:
        params = RingParams(p, n, f, minpoly)
    except ValueError as exc:
        raise ParseError(str(exc), keys["p"][1], 1) from None
    act = ActionParams(a) if a >= 1 else None
    if act is None:
        raise ParseError("chi must be a positive integer", keys["chi"][1], keys["chi"][2])
    torsion = None
    if "torsion" in keys:
        value, ln, col = keys["torsion"]
        parts = value.replace(",", " ").split()
        torsion = [_int(t, ln, col, "torsion") for t in parts]
        if len(torsion) != d:
            raise ParseError(f"torsion needs {d} exponents", ln, col)

    mats = {}
    for name, entries in blocks.items():
        mats[name] = _matrix(params, d, entries)
    M = PhiGammaModule(params, act, mats["phi"], mats["gamma"], torsion)
    if do_validate:
        try:
            act.check(p)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    if "gammaprime" in mats:
        T = TwoGenModule(M, mats["gammaprime"])
        if do_validate:
            validate_two_gen(T)
        return T
    if do_validate:
        validate(M)
    return M


def _matrix(params, d, entries):
    rows = [[LaurentElement.zero(params) for _ in range(d)] for _ in range(d)]
    seen = set()
    for i, j, body, ln, col in entries:
        if not (1 <= i <= d and 1 <= j <= d):
            raise ParseError(f"index ({i},{j}) outside a {d}x{d} matrix", ln, 1)
        if (i, j) in seen:
            raise ParseError(f"entry ({i},{j}) given twice", ln, 1)
        seen.add((i, j))
        hi = INF
        m = _BIGO.search(body)
        if m:
            hi = int(m.group(1)) - 1
            body = body[: m.start()].strip()
        try:
            x = LaurentElement.parse(body, params, hi=hi) if body else None
        except ParseError as exc:
            raise ParseError(exc.message, ln, col + (exc.column or 1) - 1) from None
        if x is None:
            raise ParseError("empty entry", ln, col)
        rows[i - 1][j - 1] = x
    return rows


def parse_file(path: str, do_validate: bool = True):
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), do_validate=do_validate)


def serialize(M) -> str:
    """Text form of a module; parse_text(serialize(M)) gives back the same matrices."""
    gp = None
    if isinstance(M, TwoGenModule):
        gp = M.GamPrime
        M = M.base
    P = M.params
    out = [HEADER, f"p = {P.p}", f"n = {P.n}", f"f = {P.f}"]
    if P.f > 1:
        out.append(f"minpoly = {format_poly(list(P.minpoly))}")
    out += [f"chi = {M.act.a}", f"rank = {M.rank}", "torsion = " + " ".join(str(e) for e in M.torsion)]
    for name, A in (("phi", M.Phi), ("gamma", M.Gam), ("gammaprime", gp)):
        if A is None:
            continue
        out.append(f"{name}:")
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x.is_zero() and x.exact:
                    continue
                body = format_series(x)
                if not x.exact:
                    body = f"{body} + O(pi^{int(x.hi) + 1})"
                out.append(f"  ({i + 1},{j + 1}): {body}")
    return "\n".join(out) + "\n"


def modules_equal(A, B) -> bool:
    if isinstance(A, TwoGenModule) != isinstance(B, TwoGenModule):
        return False
    if isinstance(A, TwoGenModule):
        same_gp = all(x.agrees(y) and x.hi == y.hi for r1, r2 in zip(A.GamPrime, B.GamPrime) for x, y in zip(r1, r2))
        return same_gp and modules_equal(A.base, B.base)
    return (
        A.params == B.params
        and A.act == B.act
        and A.same_matrices(B)
        and all(x.hi == y.hi for X, Y in ((A.Phi, B.Phi), (A.Gam, B.Gam)) for r1, r2 in zip(X, Y) for x, y in zip(r1, r2))
    )
