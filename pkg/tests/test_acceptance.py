"""Acceptance criteria 1-10, one test each.

Every test records a one-line PASS/FAIL verdict, printed in the terminal
summary under "acceptance criteria".  Running this file directly prints the
same lines without pytest.
"""

import io
import time
from pathlib import Path

import numpy as np
import pytest

from phigamma import (
    FiniteRep,
    RingParams,
    TwoGenModule,
    c3_h0,
    c3_symbolic_verify,
    check_h2_iso,
    compare_theorem2,
    compute_cohomology,
    cyclotomic_twist,
    euler_check,
    h0,
    induced_unramified,
    normalization_unit,
    pairing_perfect,
    tensor,
    trivial_module,
    unramified_twist,
)
from phigamma.c3 import composite_vanishes
from phigamma.cli import run
from phigamma.duality import generator_independence
from phigamma.oracle import theorem2_suite
from phigamma.witt import selftest

SAMPLES = Path(__file__).parent.parent / "sample_modules"

GRID = [RingParams(p, n, f) for p in (3, 5) for f in (1, 2) for n in (1, 2)]


def module_list(P, extra_twists=()):
    mods = [
        trivial_module(P),
        cyclotomic_twist(P, 1),
        cyclotomic_twist(P, -1),
        unramified_twist(P, 2),
        tensor(trivial_module(P), cyclotomic_twist(P, 1)),
        tensor(induced_unramified(P, 2), cyclotomic_twist(P, 1)),
    ]
    return mods + [cyclotomic_twist(P, m) for m in extra_twists]


def _label(P, M):
    return f"p={P.p} f={P.f} n={P.n} {M.name or repr(M)}"


def check_1():
    t = time.perf_counter()
    verdicts = theorem2_suite(seed=0, cases=50)
    elapsed = time.perf_counter() - t
    good = sum(v.ok for v in verdicts)
    ok = good == 50 and elapsed < 10
    return ok, f"Galois side vs phi side: {good}/50 reps agree, H^2 = 0, {elapsed:.2f} s (< 10 s)"


def check_2():
    dims = []
    for q in (2, 4):
        v = compare_theorem2(FiniteRep(q, 1, [[1]]))
        dims.append((q, v.galois[0].length, v.galois[1].length, v.phi_side[0].length, v.phi_side[1].length, v.ok))
    ok = all(d[1:5] == (1, 1, 1, 1) and d[5] for d in dims)
    return ok, "Artin-Schreier: " + ", ".join(f"F_{q}: Galois ({a},{b}) phi ({c},{d})" for q, a, b, c, d, _ in dims)


def check_3():
    bad, slowest, count = [], 0.0, 0
    t0 = time.perf_counter()
    for P in GRID:
        for M in module_list(P):
            t = time.perf_counter()
            R = compute_cohomology(M, max_window=256)
            rep = euler_check(M, max_window=256)
            slowest = max(slowest, time.perf_counter() - t)
            # doubling the window past stabilization changes nothing
            again = compute_cohomology(M, start=R.B2, max_window=4 * R.B2)
            stable = [g.exponents for g in again.groups] == [g.exponents for g in R.groups]
            count += 1
            if not (rep.ok and stable and R.B2 <= 256):
                bad.append(_label(P, M))
    total = time.perf_counter() - t0
    ok = not bad and slowest < 60 and total < 300
    detail = f"Euler characteristic on {count} modules, stable under window doubling, slowest {slowest:.2f} s, total {total:.1f} s"
    return ok, detail + (f"; failures: {bad}" if bad else "")


def check_4():
    got = {}
    for p in (3, 5):
        P = RingParams(p, 1)
        got[(p, "trivial")] = tuple(compute_cohomology(trivial_module(P)).lengths())
        got[(p, "twist(1)")] = tuple(compute_cohomology(cyclotomic_twist(P, 1)).lengths())
    want = {k: ((1, 2, 0) if k[1] == "trivial" else (0, 2, 1)) for k in got}
    ok = got == want
    return ok, "known lengths: " + ", ".join(f"Q_{p} {name} {got[(p, name)]}" for p, name in got)


def check_5():
    bad = []
    for p in (3, 5):
        for n in (1, 2):
            rep = check_h2_iso(RingParams(p, n))
            if not rep.ok:
                bad.append((p, n))
    return not bad, "h2_iso bijective for p in {3,5}, n in {1,2}" + (f"; failures: {bad}" if bad else "")


def check_6():
    u1, u2 = normalization_unit(3, 2, 2), normalization_unit(5, 2, 1)
    bad, count = [], 0
    for P in GRID:
        for M in module_list(P, extra_twists=(2,)):
            _, ok = pairing_perfect(M)
            count += 1
            if not ok:
                bad.append(_label(P, M))
    ok = not bad and u1 == 1 and u2 == 2
    detail = f"pairing perfect in degrees 0,1,2 on {count} modules; units p=3 n=2: {u1} mod 9, p=5 n=1: {u2} mod 5"
    return ok, detail + (f"; failures: {bad}" if bad else "")


def check_7():
    pairs = []
    for n in (1, 2):
        pairs += generator_independence(RingParams(5, n), 2, 3, classes=10, seed=n)
    ok = len(pairs) == 20 and all(a == b for a, b in pairs)
    return ok, f"p=5, a=2 vs a=3: {sum(a == b for a, b in pairs)}/{len(pairs)} classes agree (n=1 and n=2)"


def check_8():
    sym = all(c3_symbolic_verify(a).ok for a in range(1, 6))
    rng = np.random.default_rng(0)
    numeric, agree = True, True
    for P in (RingParams(3, 1), RingParams(3, 2), RingParams(5, 1)):
        for M in (trivial_module(P), cyclotomic_twist(P, 1), unramified_twist(P, 2)):
            T = TwoGenModule(M)
            numeric &= composite_vanishes(T, rng)
            agree &= c3_h0(T).exponents == h0(M).exponents
    ok = sym and numeric and agree
    return ok, f"C3: symbolic a=1..5 {sym}, numeric composites {numeric}, c3_h0 = h0 {agree}"


def check_9():
    results = selftest(0)
    ok = all(r for _, r in results)
    return ok, "Witt lab: " + "; ".join(f"{name} {'ok' if r else 'FAILED'}" for name, r in results)


CLI_RUNS = [
    ["validate", "trivial.pgm"],
    ["h", "rank2.pgm"],
    ["h", "--machine", "omega_n2.pgm"],
    ["euler", "unramified.pgm"],
    ["dual", "trivial_f2_p5.pgm"],
    ["pair", "omega.pgm"],
    ["pair", "--machine", "twist_minus_one.pgm"],
    ["c3", "verify", "--a", "3"],
    ["c3", "h0", "twogen.pgm"],
    ["oracle", "theorem2", "--seed", "5", "--cases", "12"],
    ["witt", "selftest"],
]


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue().encode(), err.getvalue().encode()


def check_10():
    diffs = []
    for argv in CLI_RUNS:
        args = [str(SAMPLES / a) if a.endswith(".pgm") else a for a in argv]
        first, second = _cli(args), _cli(args)
        if first != second or first[0] != 0:
            diffs.append(" ".join(argv))
    ok = not diffs
    return ok, f"{len(CLI_RUNS)} CLI reports byte-identical across two runs" + (f"; differing: {diffs}" if diffs else "")


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, acceptance_line):
    ok, detail = CHECKS[number - 1]()
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert acceptance_line(number, ok, detail), detail


if __name__ == "__main__":
    for k, check in enumerate(CHECKS, start=1):
        ok, detail = check()
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
