"""Command-line front end: ``braidorder <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .braid import BraidWord, artin_action, parse_braid, underlying_permutation
from .certify import (
    Certificate,
    ConjugacyForm,
    Verdict,
    braid_form,
    certify_all,
    certify_biorder,
    extract_conjugacy_form,
)
from .complete import b3_stabilize, complete_with_axis_conjugates, stabilize_in_lower_braid
from .errors import (
    BraidOrderError,
    DepthExceedsCap,
    I0NotFixed,
    NoFixedPoint,
    NotConjugacyForm,
    ParseError,
    PreconditionError,
    SigmaNotBijective,
)
from .magnus import DEFAULT_CAP, magnus_expansion
from .order import OrderContext, explain_compare_in_F, schreier_rewrite
from .verify import run_verification
from .words import FreeGroup, Word, format_word, parse_word

EXIT_OK = 0
EXIT_LEFT = 2
EXIT_INCONCLUSIVE = 3
EXIT_NO_FIXED_POINT = 4
EXIT_UNDECIDED = 5
EXIT_USAGE = 64
EXIT_PARSE = 65

VERDICT_EXIT = {
    Verdict.BI_ORDER_PRESERVING: EXIT_OK,
    Verdict.LEFT_ORDER_PRESERVING: EXIT_LEFT,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

MAGIC_BRAID = "s1^2 s2^-1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


_ENDO_LINE = re.compile(r"\s*x(\d+)\s*=\s*")


def parse_endomorphism(text: str, rank: int) -> dict[int, Word]:
    """One ``x<k> = <word>`` line per generator; blank lines and ``#`` comments are ignored."""
    images: dict[int, Word] = {}
    group = FreeGroup(rank)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _ENDO_LINE.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'x<k> = <word>'", lineno, col)
        k = int(m.group(1))
        if not 1 <= k <= rank:
            raise ParseError(f"generator x{k} outside x1..x{rank}", lineno, m.start(1) + 1)
        if k in images:
            raise ParseError(f"x{k} defined twice", lineno, m.start(1) + 1)
        w = parse_word(line[m.end():], lineno, m.end())
        for g, _ in w.runs:
            if g > rank:
                raise ParseError(f"generator x{g} outside x1..x{rank}", lineno, m.end() + 1)
        images[k] = group.check(w)
    missing = [k for k in group.generators() if k not in images]
    if missing:
        raise ParseError(f"no image for x{missing[0]}", len(text.splitlines()) + 1, 1)
    return images


def _braid(args) -> BraidWord:
    if args.strands < 2:
        raise UsageError("the strand count must be at least 2")
    return parse_braid(args.braid, args.strands)


def _certificate_table(cert: Certificate) -> list[str]:
    lines = [f"i0 = {cert.i0}   verdict: {cert.verdict.value}"]
    if not cert.reports:
        lines.append("  (no orbits besides {i0})")
    for r in cert.reports:
        orbit = "{" + ",".join(map(str, r.orbit)) + "}"
        mark = "ok" if r.passes_gcd else ("h_O != 0" if r.passes_nonvanishing else "fails")
        lines.append(
            f"  orbit {orbit:<12} h = {list(r.h_values)!s:<14} h_O = {r.h_O:<4} gcd = {r.gcd_value:<3} {mark}"
        )
    return lines


def cmd_artin(args) -> int:
    b = _braid(args)
    images = artin_action(b)
    if args.json:
        print(_dump({f"x{j}": format_word(w) for j, w in images.items()}))
    else:
        for j, w in images.items():
            print(f"x{j} -> {format_word(w)}")
    return EXIT_OK


def _load_form(args) -> ConjugacyForm:
    if args.endo:
        if not args.trust_automorphism:
            raise UsageError("endomorphism input needs --trust-automorphism (automorphy is not checked)")
        with open(args.endo, encoding="utf-8") as fh:
            images = parse_endomorphism(fh.read(), args.strands)
        return extract_conjugacy_form(images)
    if args.braid is None:
        raise UsageError("give a braid or --endo FILE")
    return braid_form(_braid(args))


def cmd_certify(args) -> int:
    form = _load_form(args)
    try:
        cert = certify_all(form) if args.i0 is None else certify_biorder(form, args.i0)
    except NoFixedPoint:
        if args.json:
            print(_dump({"verdict": "NO_FIXED_POINT", "sigma": list(form.sigma.images)}))
        else:
            print(f"sigma = {form.sigma} has no fixed point: NO_FIXED_POINT")
        return EXIT_NO_FIXED_POINT
    if args.json:
        print(_dump(cert.to_json()))
    else:
        print(f"sigma = {form.sigma}")
        print("\n".join(_certificate_table(cert)))
    return VERDICT_EXIT[cert.verdict]


def cmd_complete(args) -> int:
    b = _braid(args)
    if args.strategy == "axis":
        result = complete_with_axis_conjugates(b)
    elif args.strategy == "b3":
        if b.strands != 3:
            raise PreconditionError("strategy b3 needs 3 strands")
        result = b3_stabilize(b)[1]
    else:
        result = stabilize_in_lower_braid(b)
    if args.json:
        print(_dump(result.to_json()))
        return EXIT_OK
    print(f"beta       = {result.beta or '(identity)'}")
    print(f"alpha      = {result.alpha or '(identity)'}")
    print(f"beta alpha = {result.product or '(identity)'}")
    for s in result.steps:
        print(f"  {s}")
    print("\n".join(_certificate_table(result.certificate)))
    return EXIT_OK


def _context(args) -> tuple[OrderContext, Certificate]:
    b = _braid(args)
    form = braid_form(b)
    cert = certify_all(form)
    return OrderContext(form, cert.i0, args.cap), cert


def cmd_compare(args) -> int:
    group = FreeGroup(args.strands)
    a, b = group.parse(args.word_a), group.parse(args.word_b)
    try:
        ctx, cert = _context(args)
    except NoFixedPoint as e:
        print(f"error: {e}; no ordering context", file=sys.stderr)
        return EXIT_NO_FIXED_POINT
    if cert.verdict is not Verdict.BI_ORDER_PRESERVING:
        print(
            f"warning: certificate is {cert.verdict.value}; the ordering is a bi-ordering "
            "but invariance under the braid is not guaranteed",
            file=sys.stderr,
        )
    try:
        result = explain_compare_in_F(a, b, ctx)
    except DepthExceedsCap as e:
        print(f"UNDECIDED_AT_CAP: depth exceeds cap {e.cap}; retry with a larger --cap", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.json:
        out = {
            "relation": result.relation.name,
            "h_difference": result.h_difference,
            "depth": result.depth,
            "index": [list(g) for g in result.index] if result.index else None,
            "coefficient": result.coefficient,
            "context": ctx.to_json(),
        }
        print(_dump(out))
    else:
        print(f"{format_word(a)}  {result.relation.name}  {format_word(b)}")
        print(f"  {result.explain()}")
    if args.dump_magnus and result.depth is not None:
        kw = schreier_rewrite(a.inverse() * b, ctx)
        print(f"# Magnus expansion of {kw} to degree {result.depth}", file=sys.stderr)
        for line in magnus_expansion(kw, result.depth).lines():
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        ctx, cert = _context(args)
    except NoFixedPoint as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_FIXED_POINT
    if cert.verdict is not Verdict.BI_ORDER_PRESERVING:
        print(f"error: certificate is {cert.verdict.value}; nothing to verify", file=sys.stderr)
        return VERDICT_EXIT[cert.verdict]
    report = run_verification(ctx, args.samples, args.seed, args.maxlen, args.retry_cap)
    if args.json:
        print(_dump({"certificate": cert.to_json(), "report": report.to_json()}))
    else:
        print(f"context: i0 = {ctx.i0}, cap = {ctx.cap}, retry cap = {report.retry_cap}")
        print(f"samples {report.samples}, seed {report.seed}, maxlen {report.maxlen}")
        print(
            f"comparisons {report.comparisons}, abstentions {report.abstentions} "
            f"({100 * report.abstention_rate:.2f}%), resolved on retry {report.resolved_on_retry}, "
            f"unresolved {report.unresolved}"
        )
        for prop, checks in report.checks.items():
            print(f"  {prop:<18} checks {checks:<6} violations {report.violations[prop]}")
    return EXIT_OK if report.total_violations == 0 and report.unresolved == 0 else 1


def cmd_demo(args) -> int:
    b = parse_braid(MAGIC_BRAID, 3)
    form = braid_form(b)
    cert = certify_all(form)
    if args.json:
        print(_dump(cert.to_json()))
        return VERDICT_EXIT[cert.verdict]
    print(f"braid: {MAGIC_BRAID} in B_3 (closure plus axis: the magic manifold link)")
    print("Artin action:")
    for j, w in artin_action(b).items():
        print(f"  x{j} -> {format_word(w)}")
    print(f"underlying permutation: {underlying_permutation(b)}")
    print("conjugacy form phi(x_i) = w_i x_sigma(i) w_i^-1:")
    for i in range(1, form.rank + 1):
        print(f"  i = {i}: sigma(i) = {form.sigma(i)}, w_i = {format_word(form.w(i))}")
    print(f"fixed point used: i0 = {cert.i0}, h = exponent sum of x{cert.i0}")
    for r in cert.reports:
        terms = " + ".join(f"h(w_{k})" for k in r.orbit)
        vals = " + ".join(map(str, r.h_values))
        print(f"orbit {{{','.join(map(str, r.orbit))}}}: h_O = {terms} = {vals} = {r.h_O}")
        print(f"  gcd({len(r.orbit)}, {r.h_O}) = {r.gcd_value}")
    print(f"verdict: {cert.verdict.value}")
    return VERDICT_EXIT[cert.verdict]


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="Magnus degree cap (default 8)")
    parser.add_argument("--seed", type=int, default=d(42), help="RNG seed for verify (default 42)")
    parser.add_argument("--json", action="store_true", default=d(False), help="JSON output")
    parser.add_argument(
        "--trust-automorphism",
        action="store_true",
        default=d(False),
        help="accept an endomorphism file without checking it is an automorphism",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braidorder", description=__doc__)
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("artin", parents=[common], help="print the Artin action of a braid")
    p.add_argument("strands", type=int)
    p.add_argument("braid")
    p.set_defaults(func=cmd_artin)

    p = sub.add_parser("certify", parents=[common], help="run the gcd / non-vanishing certificates")
    p.add_argument("strands", type=int)
    p.add_argument("braid", nargs="?")
    p.add_argument("--endo", metavar="FILE", help="endomorphism file, one 'x<k> = <word>' per line")
    p.add_argument("--i0", type=int, help="fixed point to use (default: best over all)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("complete", parents=[common], help="build a completing factor alpha")
    p.add_argument("strands", type=int)
    p.add_argument("braid")
    p.add_argument("strategy", choices=("axis", "lower", "b3"))
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("compare", parents=[common], help="compare two words in the invariant ordering")
    p.add_argument("strands", type=int)
    p.add_argument("braid")
    p.add_argument("word_a")
    p.add_argument("word_b")
    p.add_argument("--dump-magnus", action="store_true", help="dump the deciding Magnus expansion to stderr")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="property-test the invariant ordering")
    p.add_argument("strands", type=int)
    p.add_argument("braid")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--maxlen", type=int, default=12)
    p.add_argument("--retry-cap", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="walk through the magic manifold braid")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error at line {e.line}, column {e.column}: {e.message}", file=sys.stderr)
        return EXIT_PARSE
    except NotConjugacyForm as e:
        print(f"NOT_CONJUGACY_FORM: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (SigmaNotBijective, I0NotFixed, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BraidOrderError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
