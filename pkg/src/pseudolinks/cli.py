"""Command-line interface.

Subcommands::

    invariant FILE            normalized (or --raw) bracket of a diagram/word
    close FILE.mpb            labeled closure of a mixed braid word, as .mpl
    braid FILE.mpl            braiding algorithm: diagram -> mixed braid word
    apply-moves FILE.mpl      seeded random walk of invariance moves
    oracle FILE               cross-check the engine against brute force
    check [SUITE...]          randomized self-check suites
    gen diagram|word          seeded corpus generator

All randomness is derived from ``--seed``; with a fixed seed every
command's output is byte-identical across runs and ``--jobs`` settings.

JSON invariant schema (version 1): a list of monomial groups
``{"laurent": [[a_exp, coeff], ...], "v_exp": int,
"curves": [[[letter, ...], mult], ...]}`` sorted by (v_exp, curves),
with each Laurent list sorted by exponent.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import A, Poly
from .braid import close, random_word, validate_word
from .braiding import (
    MorsePresentation,
    braid_from_diagram,
    diagram_from_morse,
    morse_from_braid_closure,
    random_morse,
)
from .checks import SUITES, run_check_suites
from .diagram import writhe
from .formats import FormatError, parse_mpb, parse_mpl_full, render_mpb, render_mpl
from .moves import random_move_walk
from .skein import bracket, bracket_bruteforce, normalized_invariant

__all__ = ["main", "poly_to_json"]


def poly_to_json(p: Poly) -> list[dict]:
    """Invariant values as the documented JSON schema (version 1)."""
    groups: dict[tuple, dict[int, int]] = {}
    for (a_exp, v_exp, curves), coeff in p.terms.items():
        key = (v_exp, tuple((tuple(cls.word), mult) for cls, mult in curves))
        groups.setdefault(key, {})[a_exp] = coeff
    out = []
    for (v_exp, curves) in sorted(groups):
        laurent = sorted(groups[(v_exp, curves)].items())
        out.append({
            "laurent": [[e, c] for e, c in laurent],
            "v_exp": v_exp,
            "curves": [[list(word), mult] for word, mult in curves],
        })
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_diagram(path: str):
    """Diagram (plus Morse presentation when available) from .mpl or .mpb."""
    text = _read(path)
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if path.endswith(".mpb") or head == "mpb":
        w = parse_mpb(text)
        m = morse_from_braid_closure(w)
        return diagram_from_morse(m), m
    return parse_mpl_full(text)


def _cmd_invariant(args) -> int:
    d, _ = _load_diagram(args.file)
    value = bracket(d) if args.raw else normalized_invariant(d)
    if args.json:
        _emit(json.dumps(poly_to_json(value), sort_keys=True) + "\n", args.output)
    else:
        _emit(str(value) + "\n", args.output)
    return 0


def _cmd_close(args) -> int:
    w = parse_mpb(_read(args.file))
    m = morse_from_braid_closure(w)
    _emit(render_mpl(diagram_from_morse(m), m), args.output)
    return 0


def _cmd_braid(args) -> int:
    d, m = parse_mpl_full(_read(args.file))
    if m is None:
        raise SystemExit(
            "braid: the input has no 'morse' section; braiding needs a plane "
            "presentation (files written by 'close' and 'gen' carry one)")

    def trace(step: str, events) -> None:
        print(f"# {step}", file=sys.stderr)
        for e in events:
            print(f"#   {e.kind} {e.pos} {e.arg}".rstrip(), file=sys.stderr)

    w = braid_from_diagram(m, trace=trace if args.trace else None)
    _emit(render_mpb(w), args.output)
    return 0


def _cmd_apply_moves(args) -> int:
    d, _ = parse_mpl_full(_read(args.file))
    d2 = random_move_walk(d, args.length, args.seed)
    _emit(render_mpl(d2), args.output)
    return 0


def _cmd_oracle(args) -> int:
    d, _ = _load_diagram(args.file)
    v = normalized_invariant(d)
    vo = (-A(-3)) ** writhe(d) * bracket_bruteforce(d)
    agree = v == vo
    if args.json:
        _emit(json.dumps({"agree": agree, "invariant": poly_to_json(v),
                          "bruteforce": poly_to_json(vo)}, sort_keys=True) + "\n",
              args.output)
    else:
        _emit(f"invariant  {v}\nbruteforce {vo}\nagree      {agree}\n", args.output)
    return 0 if agree else 1


def _cmd_check(args) -> int:
    report = run_check_suites(args.suite or None, args.seed, jobs=args.jobs,
                              cases=args.cases)
    if args.json:
        _emit(json.dumps(report, sort_keys=True) + "\n", args.output)
    else:
        lines = []
        for suite in report["suites"]:
            status = "ok" if suite["failed"] == 0 else "FAIL"
            lines.append(f"{suite['suite']:<12} {suite['cases']:>4} cases "
                         f"{suite['failed']:>3} failed  {status}")
            for ce in suite["counterexamples"]:
                lines.append(f"  counterexample {ce['id']}: {ce['detail']}")
        lines.append(f"total {report['total']} cases, {report['failed']} failed")
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if report["ok"] else 1


def _cmd_gen(args) -> int:
    if args.what == "diagram":
        m = random_morse(args.genus, args.size, args.seed)
        _emit(render_mpl(diagram_from_morse(m), m), args.output)
    else:
        import random as _random

        rng = _random.Random(args.seed)
        w = random_word(args.genus, args.strands, args.length, rng)
        _emit(render_mpb(w), args.output)
    return 0


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pseudolinks",
        description="Bracket-polynomial invariants of pseudo links in "
                    "handlebodies, and mixed pseudo braid tools.")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        sp.add_argument("-o", "--output", default=None,
                        help="write to this file instead of stdout")
        return sp

    sp = add("invariant", _cmd_invariant,
             "normalized bracket invariant of a .mpl diagram or .mpb word closure")
    sp.add_argument("file")
    sp.add_argument("--raw", action="store_true",
                    help="raw bracket, without the writhe normalization")
    sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = add("close", _cmd_close, "labeled closure of a .mpb word, as .mpl")
    sp.add_argument("file")

    sp = add("braid", _cmd_braid, "braid a .mpl diagram into a .mpb word")
    sp.add_argument("file")
    sp.add_argument("--trace", action="store_true",
                    help="print every intermediate presentation to stderr")

    sp = add("apply-moves", _cmd_apply_moves,
             "apply a seeded random walk of invariance moves to a .mpl diagram")
    sp.add_argument("file")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)

    sp = add("oracle", _cmd_oracle,
             "cross-check the invariant against the brute-force engine")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")

    sp = add("check", _cmd_check, "run randomized self-check suites")
    sp.add_argument("suite", nargs="*",
                    help=f"suites to run (default: all of {', '.join(sorted(SUITES))})")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cases", type=int, default=None,
                    help="override the per-suite case count")
    sp.add_argument("--json", action="store_true")

    sp = add("gen", _cmd_gen, "generate a seeded random diagram or braid word")
    sp.add_argument("what", choices=("diagram", "word"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--genus", type=int, default=0)
    sp.add_argument("--size", type=int, default=4,
                    help="target crossing count (diagram)")
    sp.add_argument("--strands", type=int, default=2, help="moving strands (word)")
    sp.add_argument("--length", type=int, default=4, help="word length (word)")
    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
