"""Command line front end.

Every command is a pure function of argv. ``eq`` exits 0 when the words are
equivalent and 1 when they are not, so it can serve as a shell predicate.
Usage errors exit 2 and an exhausted search budget exits 3.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import __version__
from .explorer import RELATIONS, conjecture4, enumerate_classes
from .rewriting import DEFAULT_BUDGET, VARIANTS, BudgetExceeded, derivation, rewrite_eq, rule_set
from .rowaction import act_word, grammic_eq_bounded
from .tableau import build_tableau, column_normal_form, plactic_eq, row_normal_form
from .threeletter import extract_params, grammic_eq3
from .words import MAX_ALPHABET, Alphabet, WordError, format_word, infer_alphabet, parse_word, project

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _words(args, *texts: str, k: int | None = None) -> tuple[list[tuple[int, ...]], int]:
    words = [parse_word(t, MAX_ALPHABET) for t in texts]
    k = k or args.alphabet or max(2, infer_alphabet(*words))
    for w in words:
        Alphabet(k).check(w)
    return words, k


def _emit(out: TextIO, args, text: str, data: dict) -> None:
    if args.format == "json":
        out.write(json.dumps(data) + "\n")
    else:
        out.write(text + "\n")


def cmd_tableau(args, out):
    (w,), _ = _words(args, args.word)
    t = build_tableau(w)
    text = "\n".join([t.render() or "(empty)", f"row normal form: {format_word(t.row_word())}",
                      f"column normal form: {format_word(t.column_word())}"])
    _emit(out, args, text, {
        "word": list(w),
        "rows": t.to_json(),
        "rowNormalForm": list(t.row_word()),
        "columnNormalForm": list(t.column_word()),
    })
    return EXIT_OK


def cmd_nf(args, out):
    (w,), _ = _words(args, args.word)
    nf = column_normal_form(w) if args.column else row_normal_form(w)
    kind = "column" if args.column else "row"
    _emit(out, args, format_word(nf), {"word": list(w), "kind": kind, "normalForm": list(nf)})
    return EXIT_OK


def cmd_eq(args, out):
    (u, v), k = _words(args, args.u, args.v)
    data = {"u": list(u), "v": list(v), "k": k}
    note = ""
    if args.rewrite:
        rules = rule_set(args.rewrite, k)
        if rules.k < k:
            raise UsageError(f"rule set {args.rewrite} covers only {rules.k} letters")
        relation = f"rewrite:{rules.name}"
        eq = rewrite_eq(u, v, rules, budget=args.budget)
        if not eq:
            note = f"no derivation connects the words under {rules.name}"
    elif args.grammic3:
        if k != 3:
            raise UsageError("--grammic3 needs words over {1,2,3}")
        relation = "grammic3"
        eq = grammic_eq3(u, v)
    elif args.plactic:
        relation = "plactic"
        eq = plactic_eq(u, v)
    else:
        relation = "grammic"
        verdict = grammic_eq_bounded(u, v, k)
        eq = verdict.equivalent
        if verdict.witness is not None:
            wit = verdict.witness
            data["witness"] = wit.to_json()
            if wit.x is None:
                note = wit.reason
            else:
                note = (f"witness x={','.join(map(str, wit.x))}: "
                        f"u gives {','.join(map(str, wit.image_u))}, v gives {','.join(map(str, wit.image_v))}")
    data.update(relation=relation, equivalent=eq)
    if note:
        data["note"] = note
    text = "equivalent" if eq else "inequivalent"
    if note:
        text += "\n" + note
    _emit(out, args, text, data)
    return EXIT_OK if eq else EXIT_NO


def cmd_act(args, out):
    try:
        x = tuple(int(c) for c in args.vector.split(","))
    except ValueError:
        raise UsageError(f"bad vector {args.vector!r}")
    if any(c < 0 for c in x):
        raise UsageError("vector coordinates must be nonnegative")
    (w,), k = _words(args, args.word, k=len(x))
    image = act_word(x, w)
    _emit(out, args, ",".join(map(str, image)), {"word": list(w), "x": list(x), "image": list(image)})
    return EXIT_OK


def cmd_derive(args, out):
    (u, v), k = _words(args, args.u, args.v)
    name = args.rules or ("grammic3" if k <= 3 else "knuth")
    rules = rule_set(name, k if name == "knuth" else None)
    if rules.k < k:
        raise UsageError(f"rule set {name} covers only {rules.k} letters")
    d = derivation(u, v, rules, weighted=True, budget=args.budget)
    if d is None:
        _emit(out, args, f"no derivation connects the words under {rules.name}",
              {"u": list(u), "v": list(v), "rules": rules.name, "derivation": None})
        return EXIT_NO
    lines = d.render(rules) + [f"grammic-rule applications: {d.grammic_rule_count}"]
    _emit(out, args, "\n".join(lines), {"rules": rules.name, "derivation": d.to_json()})
    return EXIT_OK


def cmd_params(args, out):
    (w,), _ = _words(args, args.word, k=3)
    p = extract_params(w)
    text = f"(a,b,c,d,e,f) = ({p.a},{p.b},{p.c},{p.d},{p.e},{p.f})\nrow normal form: {p.render()}"
    _emit(out, args, text, p.to_json())
    return EXIT_OK


def cmd_classes(args, out):
    if args.alphabet is None:
        raise UsageError("classes needs --alphabet")
    p = enumerate_classes(args.length, args.alphabet, args.relation, budget=args.budget, workers=args.workers)
    _emit(out, args, p.to_text(args.count_only), p.to_json(args.count_only))
    return EXIT_OK


def cmd_project(args, out):
    try:
        letters = [int(c) for c in args.letters.split(",")]
    except ValueError:
        raise UsageError(f"bad letter list {args.letters!r}")
    (w,), k = _words(args, args.word)
    Alphabet(k).check(letters)
    p = project(w, letters, relabel=not args.keep_labels)
    _emit(out, args, format_word(p), {"word": list(w), "letters": sorted(set(letters)), "projection": list(p)})
    return EXIT_OK


def cmd_conjecture4(args, out):
    variants = VARIANTS if args.rule == "both" else (args.rule,)
    reports = [conjecture4(args.max_len, v, budget=args.budget, workers=args.workers) for v in variants]
    text = "\n\n".join(r.to_text() for r in reports)
    _emit(out, args, text, {"toolVersion": __version__, "k": 4, "maxLen": args.max_len,
                            "reports": [r.to_json() for r in reports]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from overwriting flags given before it
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search node budget")
    common.add_argument("--alphabet", "-k", type=int, default=argparse.SUPPRESS, help="alphabet size")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="grammic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    parser.add_argument("--alphabet", "-k", type=int, default=None, help="alphabet size")
    parser.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableau", parents=[common], help="tableau and normal forms of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("nf", parents=[common], help="row or column normal form")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--row", action="store_true")
    g.add_argument("--column", action="store_true")
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("eq", parents=[common], help="decide an equivalence")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--plactic", action="store_true")
    g.add_argument("--grammic", action="store_true", help="bounded grid decision (default)")
    g.add_argument("--grammic3", action="store_true", help="three-letter parameter test")
    g.add_argument("--rewrite", metavar="RULESET", choices=("knuth", "grammic3", *VARIANTS))
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("act", parents=[common], help="act on a row vector")
    p.add_argument("word")
    p.add_argument("--vector", required=True, help="comma separated x1,...,xk")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("derive", parents=[common], help="derivation with fewest extra-rule steps")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--rules", choices=("knuth", "grammic3", *VARIANTS))
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("params", parents=[common], help="exponents (a,b,c,d,e,f) of a word over {1,2,3}")
    p.add_argument("word")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("classes", parents=[common], help="enumerate congruence classes")
    p.add_argument("--length", "-n", type=int, required=True)
    p.add_argument("--relation", choices=RELATIONS, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("project", parents=[common], help="erase letters outside a subalphabet")
    p.add_argument("--letters", required=True, help="comma separated letters to keep")
    p.add_argument("--keep-labels", action="store_true", help="do not relabel to 1..m")
    p.add_argument("word")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("conjecture4", parents=[common], help="test a four-letter presentation")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--rule", choices=(*VARIANTS, "both"), default="both")
    p.set_defaults(func=cmd_conjecture4)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        err.write(f"grammic: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, WordError, ValueError) as exc:
        err.write(f"grammic: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
