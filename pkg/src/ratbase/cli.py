"""Command line entry point: ``ratbase <command> -p P -q Q ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from . import export
from .automata import maximal_word, minimal_word, tree_That, tree_T
from .errors import PreconditionViolated, RatBaseError
from .numeration import (RationalBase, evaluate, format_rational, format_word,
                         parse_word, represent)
from .spans import prefix_extension_search, span, span_word, value_witness
from .transducer import apply_stream, run_search
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _base_args() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-p", type=int, required=True, help="numerator of the base")
    parent.add_argument("-q", type=int, required=True, help="denominator of the base")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratbase", description="Rational base number systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    base = _base_args()

    cmd = sub.add_parser("repr", parents=[base], help="representation of an integer")
    cmd.add_argument("n", type=int)
    cmd.add_argument("--roundtrip", action="store_true", help="also print the value back")

    cmd = sub.add_parser("eval", parents=[base], help="value of a finite word")
    cmd.add_argument("word", help='comma separated digits; "" or eps for the empty word')
    cmd.add_argument("--roundtrip", action="store_true",
                     help="also print the representation when the value is a natural number")

    for name, what in (("minword", "minimal"), ("maxword", "maximal"), ("spanword", "span")):
        cmd = sub.add_parser(name, parents=[base], help=f"prefix of the {what} word of n")
        cmd.add_argument("-n", type=int, required=True)
        cmd.add_argument("-k", "--depth", type=int, default=16)
        cmd.add_argument("--states", action="store_true", help="also print visited states")

    cmd = sub.add_parser("transduce", parents=[base],
                         help="image of w(n) by the derived transducer next to w(n+1)")
    cmd.add_argument("-n", type=int, required=True)
    cmd.add_argument("-k", "--depth", type=int, default=16)
    cmd.add_argument("--inject-mismatch", action="store_true", help=argparse.SUPPRESS)

    cmd = sub.add_parser("span", parents=[base], help="span enclosures")
    cmd.add_argument("-n", type=int, default=0, help="first node")
    cmd.add_argument("--n-max", type=int, help="last node (default: n)")
    cmd.add_argument("-k", "--depth", type=int, default=32)
    cmd.add_argument("--format", choices=("text", "csv", "json"), default="text")
    cmd.add_argument("-o", dest="output")

    cmd = sub.add_parser("search-prefix", parents=[base],
                         help="smallest n whose span-word starts with WORD")
    cmd.add_argument("word")
    cmd.add_argument("--budget", type=int, default=10 ** 4)

    cmd = sub.add_parser("search-run", parents=[base],
                         help="smallest n with U a prefix of w(n) and V of w(n+1)")
    cmd.add_argument("u")
    cmd.add_argument("v")
    cmd.add_argument("--budget", type=int, default=10 ** 4)

    cmd = sub.add_parser("witness", parents=[base],
                         help="word of T with the value and length of a T-hat word")
    cmd.add_argument("word")

    cmd = sub.add_parser("verify", parents=[base], help="run a verification suite")
    cmd.add_argument("suite")
    cmd.add_argument("--n-min", type=int)
    cmd.add_argument("-n", "--n-max", dest="n_max", type=int)
    cmd.add_argument("-k", "--depth", dest="k", type=int)
    cmd.add_argument("--budget", type=int)
    cmd.add_argument("--samples", type=int)
    cmd.add_argument("--length", type=int)
    cmd.add_argument("--seed", type=int)
    cmd.add_argument("--jobs", type=int, default=1)
    cmd.add_argument("--format", choices=("json", "text"), default="json")
    cmd.add_argument("-o", dest="output")

    cmd = sub.add_parser("export", parents=[base], help="DOT or SVG drawings")
    cmd.add_argument("object", choices=("tree", "that", "transducer", "fractal"))
    cmd.add_argument("-n", "--n-max", dest="n_max", type=int, default=40,
                     help="largest state drawn; negative for an empty graph")
    cmd.add_argument("-k", "--depth", type=int, help="only states within this distance of 0")
    cmd.add_argument("--no-loop", action="store_true", help="drop the loop on state 0")
    cmd.add_argument("--format", choices=("dot", "svg"))
    cmd.add_argument("-o", dest="output")
    return parser


_NEGATIVE_WORD = re.compile(r"^-\d+(,\s*-?\d+)+$")


def _protect_words(argv: list[str]) -> list[str]:
    # "-1,0,3" would otherwise be taken for an option
    for i, tok in enumerate(argv):
        if tok == "--":
            return argv
        if _NEGATIVE_WORD.match(tok):
            return argv[:i] + ["--"] + argv[i:]
    return argv


def _write(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _word_line(digits, states=None) -> str:
    out = format_word(digits)
    if states is not None:
        out += "\n" + ",".join(str(s) for s in states)
    return out + "\n"


def run(args: argparse.Namespace) -> int:
    b = RationalBase(args.p, args.q)
    cmd = args.command

    if cmd == "repr":
        word = represent(b, args.n)
        out = format_word(word)
        if args.roundtrip:
            out += f"\n{format_rational(evaluate(b, word))}"
        _write(out + "\n", None)
        return EXIT_OK

    if cmd == "eval":
        word = parse_word(args.word, b)
        value = evaluate(b, word)
        out = format_rational(value)
        if args.roundtrip and value.denominator == 1 and value >= 0:
            out += "\n" + format_word(represent(b, int(value)))
        _write(out + "\n", None)
        return EXIT_OK

    if cmd in ("minword", "maxword"):
        stream = (minimal_word if cmd == "minword" else maximal_word)(b, args.n)
        digits, states = stream.take(args.depth)
        _write(_word_line(digits, states if args.states else None), None)
        return EXIT_OK

    if cmd == "spanword":
        digits = span_word(b, args.n).digits(args.depth)
        states = None
        if args.states:
            # run of the span-word from 0 in T-hat
            that, s, states = tree_That(b), 0, []
            for d in digits:
                s = that.step(s, d)
                if s is None:
                    break
                states.append(s)
        _write(_word_line(digits, states), None)
        return EXIT_OK

    if cmd == "transduce":
        image = apply_stream(b, minimal_word(b, args.n)).digits(args.depth)
        target = minimal_word(b, args.n + 1).digits(args.depth)
        if args.inject_mismatch and image:
            image[-1] = (image[-1] + 1) % b.q
        ok = image == target
        _write(f"D(w({args.n}))  {format_word(image)}\n"
               f"w({args.n + 1})     {format_word(target)}\n"
               f"{'MATCH' if ok else 'MISMATCH'}\n", None)
        return EXIT_OK if ok else EXIT_FAIL

    if cmd == "span":
        last = args.n if args.n_max is None else args.n_max
        values = [span(b, n, args.depth) for n in range(args.n, last + 1)]
        if args.format == "csv":
            text = export.spans_csv(values)
        elif args.format == "json":
            text = json.dumps({"schema": 1, "base": [b.p, b.q],
                               "spans": export.span_rows(values)}, indent=2) + "\n"
        else:
            text = "".join(f"{v.n}\t[{v.enclosure.lo}, {v.enclosure.hi}]\t"
                           f"~{float(v.enclosure.mid):.12g}\n" for v in values)
        _write(text, args.output)
        return EXIT_OK

    if cmd == "search-prefix":
        n = prefix_extension_search(b, parse_word(args.word, b), args.budget)
        _write(("not found within budget" if n is None else str(n)) + "\n", None)
        return EXIT_OK if n is not None else EXIT_FAIL

    if cmd == "search-run":
        n = run_search(b, parse_word(args.u, b), parse_word(args.v, b), args.budget)
        _write(("not found within budget" if n is None else str(n)) + "\n", None)
        return EXIT_OK if n is not None else EXIT_FAIL

    if cmd == "witness":
        word = parse_word(args.word, b)
        _write(format_word(value_witness(b, word)) + "\n", None)
        return EXIT_OK

    if cmd == "verify":
        return _verify(b, args)

    if cmd == "export":
        fmt = args.format or ("svg" if args.object == "fractal" else "dot")
        if (fmt == "svg") != (args.object == "fractal"):
            raise UsageError(f"{args.object} cannot be written as {fmt}")
        if args.object == "tree":
            text = export.automaton_dot(tree_T(b), args.n_max, args.depth, not args.no_loop)
        elif args.object == "that":
            text = export.automaton_dot(tree_That(b), args.n_max, args.depth, not args.no_loop)
        elif args.object == "transducer":
            text = export.transducer_dot(b, args.n_max)
        else:
            text = export.fractal_svg(b, args.n_max)
        _write(text, args.output)
        return EXIT_OK

    raise UsageError(f"unknown command {cmd}")


def _verify(b: RationalBase, args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    overrides = {key: getattr(args, key) for key in
                 ("n_min", "n_max", "k", "budget", "samples", "length", "seed")}
    try:
        report = run_suite(args.suite, b, jobs=args.jobs, **overrides)
    except PreconditionViolated as exc:
        payload = {"schema": 1, "suite": args.suite, "base": [b.p, b.q],
                   "error": "PreconditionViolated", "message": str(exc)}
        _write(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_USAGE
    data = report.as_dict()
    if args.format == "json":
        text = json.dumps(data, indent=2, default=str) + "\n"
    else:
        text = (f"{args.suite} base {b}: checked {report.checked}, "
                f"violations {report.violations}\n")
        if report.first_counterexample:
            text += f"first counterexample: {json.dumps(report.first_counterexample, default=str)}\n"
    _write(text, args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _protect_words(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return run(args)
    except UsageError as exc:
        print(f"ratbase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RatBaseError as exc:
        print(f"ratbase: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ratbase: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
