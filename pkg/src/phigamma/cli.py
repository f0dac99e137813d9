"""Command line front end.

    phigamma validate FILE
    phigamma h FILE
    phigamma euler FILE
    phigamma dual FILE
    phigamma pair FILE
    phigamma c3 verify --a A
    phigamma c3 h0 FILE
    phigamma oracle theorem2 [--seed S] [--cases N]
    phigamma witt selftest [--seed S]

Exit codes: 0 success, 1 validation failure, 2 no stabilization, 3 parse error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import NoStabilization, ParseError, PhiGammaError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_NOSTAB, EXIT_PARSE = 0, 1, 2, 3


class Report:
    """Human lines plus machine sections; rendered once at the end."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []
        self.sections: list[tuple[str, list]] = []

    def say(self, *lines: str):
        self.lines.extend(lines)

    def section(self, name: str, **items):
        self.sections.append((name, list(items.items())))

    def render(self) -> str:
        if not self.machine:
            return "\n".join(self.lines) + "\n" if self.lines else ""
        out = []
        for name, items in self.sections:
            out.append(f"begin {name}")
            for k, v in items:
                out.append(f"{k} = {v}")
            out.append(f"end {name}")
        return "\n".join(out) + "\n" if out else ""


def _orders(group) -> str:
    return " ".join(str(o) for o in group.cyclic_orders)


def _window_arg(text: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like lo:hi, got {text!r}") from None
    if lo >= 0 or hi <= 0:
        raise argparse.ArgumentTypeError("window needs lo < 0 < hi")
    return lo, hi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=_window_arg, default=None,
                        help="initial window lo:hi; stabilization starts at B = -lo (default 4)")
    common.add_argument("--max-window", type=int, default=256, help="stabilization cap (default 256)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized verbs")
    common.add_argument("--machine", action="store_true", help="emit begin/end key-value blocks")

    parser = _Parser(prog="phigamma", description="Cohomology of (phi, Gamma)-modules over truncated Laurent series.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, help_ in (
        ("validate", "check a module file"),
        ("h", "H^0, H^1, H^2 of the Herr complex"),
        ("euler", "Euler characteristic check"),
        ("dual", "compare H^i(M) with H^{2-i}(Hom(M, Omega))"),
        ("pair", "the cup-product pairing and its perfectness"),
    ):
        sp = sub.add_parser(verb, parents=[common], help=help_)
        sp.add_argument("file")

    c3 = sub.add_parser("c3", help="the two-generator complex")
    c3sub = c3.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = c3sub.add_parser("verify", parents=[common], help="check that C3 is a complex")
    sp.add_argument("--a", type=int, required=True)
    sp = c3sub.add_parser("h0", parents=[common], help="H^0 of C3")
    sp.add_argument("file")

    orc = sub.add_parser("oracle", help="brute-force comparisons")
    osub = orc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = osub.add_parser("theorem2", parents=[common], help="Galois cohomology vs the phi-module side")
    sp.add_argument("--cases", type=int, default=50)

    w = sub.add_parser("witt", help="Witt vector checks")
    wsub = w.add_subparsers(dest="action", required=True, parser_class=_Parser)
    wsub.add_parser("selftest", parents=[common], help="run the Witt vector self test")
    return parser


def _engine_kw(args) -> dict:
    start = -args.window[0] if args.window else 4
    return {"start": start, "max_window": args.max_window}


def _load(path: str):
    from .fileformat import parse_file

    try:
        return parse_file(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _phigamma(M):
    from .c3 import TwoGenModule

    return M.base if isinstance(M, TwoGenModule) else M


# -- verbs -------------------------------------------------------------------------------------


def cmd_validate(args, rep: Report) -> int:
    from .c3 import TwoGenModule, validate_two_gen
    from .fileformat import parse_file
    from .modules import validate

    try:
        M = parse_file(args.file, do_validate=False)
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        M.base.act.check(M.params.p) if isinstance(M, TwoGenModule) else M.act.check(M.params.p)
        chi_ok = True
    except ValueError:
        chi_ok = False
    report = validate_two_gen(M, raise_on_error=False) if isinstance(M, TwoGenModule) else validate(M, raise_on_error=False)
    report.add("chi primitive mod p^2", chi_ok)
    rep.say(f"module: {args.file}", *report.lines(), f"valid: {'yes' if report.ok else 'no'}")
    rep.section("validate", file=args.file, **{name.replace(" ", "_").replace("'", "p"): "ok" if ok else "failed" for name, ok, _ in report.checks}, valid="yes" if report.ok else "no")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_h(args, rep: Report) -> int:
    from .herr import compute_cohomology

    M = _phigamma(_load(args.file))
    R = compute_cohomology(M, **_engine_kw(args))
    lo, hi = R.window
    rep.say(f"module: {args.file}", *R.report_lines(), f"window = [{lo}, {hi})")
    for (b, b2), exps in R.history:
        rep.say(f"  B = {-b}: image in window {-b2} has exponents {exps}")
    rep.section("cohomology", file=args.file, H0=_orders(R[0]), H1=_orders(R[1]), H2=_orders(R[2]),
                lengths=" ".join(map(str, R.lengths())), window=f"{lo}:{hi}")
    return EXIT_OK


def cmd_euler(args, rep: Report) -> int:
    from .herr import euler_check

    M = _phigamma(_load(args.file))
    E = euler_check(M, **_engine_kw(args))
    rep.say(f"module: {args.file}", *E.lines())
    rep.section("euler", file=args.file, lengths=" ".join(map(str, E.lengths)), chi=E.alternating_sum,
                expected=E.expected, ok="yes" if E.ok else "no")
    return EXIT_OK if E.ok else EXIT_INVALID


def cmd_dual(args, rep: Report) -> int:
    from .herr import compute_cohomology
    from .modules import hom_dual

    M = _phigamma(_load(args.file))
    kw = _engine_kw(args)
    R = compute_cohomology(M, **kw)
    S = compute_cohomology(hom_dual(M), **kw)
    rep.say(f"module: {args.file}")
    ok = True
    for i in range(3):
        a, b = R[i], S[2 - i]
        same = a.cyclic_orders == b.cyclic_orders
        ok &= same
        rep.say(f"H^{i}(M) = {a.format()}   H^{2 - i}(M~) = {b.format()}   {'match' if same else 'MISMATCH'}")
        rep.section("dual", i=i, left=_orders(a), right=_orders(b), match="yes" if same else "no")
    rep.say(f"dual orders agree: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_pair(args, rep: Report) -> int:
    from .duality import pairing_perfect

    M = _phigamma(_load(args.file))
    mats, ok = pairing_perfect(M, **_engine_kw(args))
    rep.say(f"module: {args.file}")
    for P in mats:
        rep.say(*P.lines())
        rep.section("pairing", i=P.degree, matrix="[" + "; ".join(" ".join(map(str, r)) for r in P.entries) + "]",
                    perfect="yes" if P.perfect else "no")
    rep.say(f"perfect: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_c3(args, rep: Report) -> int:
    if args.action == "verify":
        from .c3 import c3_symbolic_verify

        if args.a < 1:
            raise ValidationError("a must be a positive integer")
        V = c3_symbolic_verify(args.a)
        rep.say(*V.lines())
        rep.section("c3verify", a=args.a, complex="yes" if V.ok else "no")
        return EXIT_OK if V.ok else EXIT_INVALID
    from .c3 import TwoGenModule, c3_h0
    from .herr import h0

    M = _load(args.file)
    if not isinstance(M, TwoGenModule):
        M = TwoGenModule(M)
    G = c3_h0(M, **_engine_kw(args))
    rep.say(f"module: {args.file}", f"H^0(C3) = {G.format()}")
    fields = {"file": args.file, "H0": _orders(G)}
    if M.gamma_prime_is_identity():
        G2 = h0(M.base, **_engine_kw(args))
        agree = G2.cyclic_orders == G.cyclic_orders
        rep.say(f"gamma' = 1: H^0(C2) = {G2.format()} ({'agrees' if agree else 'DISAGREES'})")
        fields["C2_H0"] = _orders(G2)
        fields["agree"] = "yes" if agree else "no"
    rep.section("c3h0", **fields)
    return EXIT_OK if fields.get("agree", "yes") == "yes" else EXIT_INVALID


def cmd_oracle(args, rep: Report) -> int:
    from .oracle import theorem2_suite

    results = theorem2_suite(seed=args.seed, cases=args.cases)
    passed = sum(r.ok for r in results)
    for k, r in enumerate(results):
        rep.say(f"[{k:02d}] {r.line()}")
        g0, g1, _ = r.galois
        rep.section("case", index=k, rep=r.rep.describe(), H0=_orders(g0), H1=_orders(g1), ok="yes" if r.ok else "no")
    rep.say(f"theorem2: {passed}/{len(results)} agree")
    rep.section("theorem2", seed=args.seed, cases=len(results), passed=passed)
    return EXIT_OK if passed == len(results) else EXIT_INVALID


def cmd_witt(args, rep: Report) -> int:
    from .witt import selftest

    results = selftest(seed=args.seed)
    for name, ok in results:
        rep.say(f"{'ok  ' if ok else 'FAIL'} {name}")
    allok = all(ok for _, ok in results)
    rep.section("witt", checks=len(results), passed=sum(ok for _, ok in results), ok="yes" if allok else "no")
    return EXIT_OK if allok else EXIT_INVALID


COMMANDS = {
    "validate": cmd_validate,
    "h": cmd_h,
    "euler": cmd_euler,
    "dual": cmd_dual,
    "pair": cmd_pair,
    "c3": cmd_c3,
    "oracle": cmd_oracle,
    "witt": cmd_witt,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--window -8:8" would otherwise be read as an option
    for k in range(len(argv) - 1):
        if argv[k] == "--window":
            argv[k : k + 2] = [f"--window={argv[k + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(args.machine)
    code = EXIT_OK
    try:
        code = COMMANDS[args.verb](args, rep)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        rep.section("error", kind="parse", message=str(exc))
        code = EXIT_PARSE
    except NoStabilization as exc:
        err.write(f"no stabilization: {exc}\n")
        rep.section("error", kind="nostabilization", message=str(exc))
        code = EXIT_NOSTAB
    except ValidationError as exc:
        err.write(f"validation failed: {type(exc).__name__}: {exc}\n")
        rep.section("error", kind="validation", check=type(exc).__name__, message=str(exc))
        code = EXIT_INVALID
    except PhiGammaError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        rep.section("error", kind=type(exc).__name__, message=str(exc))
        code = EXIT_INVALID
    out.write(rep.render())
    return code


def main() -> None:
    sys.exit(run())
