"""Command-line front end.

Exit codes: 0 when the requested computation succeeds (and any checked
claim holds), 1 when a checked claim is violated (a witness is printed),
2 on usage or input errors.  Progress and diagnostics go to stderr so
stdout stays machine-readable.
"""

import argparse
import json
import sys

from .counterexamples import build_Ln, verify
from .errors import LiedimError
from .idealengine import TruncatedContext
from .presentation import expr_text, parse_file, preabelianize, serialize
from .presentation import instantiate_metabelian
from .freealgebra import lyndon_expr
from .series import (
    check_corollary,
    check_lemma2,
    check_sjogren,
    check_theorem1,
    delta_n,
    quotient_report,
    sjogren,
)


def _build_parser():
    top = argparse.ArgumentParser(
        prog="liedim",
        description="Exact lower central series and dimension subrings of "
        "finitely presented Lie rings over the integers.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a presentation and echo its canonical form")
    p.add_argument("file")

    p = sub.add_parser("preabelianize", help="emit an equivalent pre-abelian presentation")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write to this path instead of stdout")

    p = sub.add_parser("series", help="per-n quotient structure report")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--class", type=int, dest="class_bound", default=None,
                   help="class bound c (default: max-n minus 1)")
    p.add_argument("--metabelian", action="store_true",
                   help="impose the metabelian law up to the working degree first")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("delta", help="basis of the n-th dimension subring preimage")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", type=int, dest="class_bound", required=True)

    p = sub.add_parser("check", help="verify one of the named module identities")
    p.add_argument("which", choices=("theorem1", "corollary", "lemma2", "sjogren"))
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", type=int, dest="class_bound", default=None,
                   help="class bound / truncation degree (defaults depend on the check)")
    p.add_argument("--metabelian", action="store_true",
                   help="impose the metabelian law before checking")

    p = sub.add_parser("counterexample", help="build and certify the family member L(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=None,
                   help="instantiation degree for the relator families (default 2n-4)")
    p.add_argument("--verify", action="store_true", help="run the full certificate")
    p.add_argument("--emit-presentation", dest="emit", metavar="OUT.LP",
                   help="write the finitely instantiated presentation to a file")

    p = sub.add_parser("sjogren", help="evaluate the universal annihilator constant")
    p.add_argument("--n", type=int, required=True)
    return top


def _lie_row_text(row, ctx, names):
    parts = []
    for j, v in enumerate(row):
        if v:
            name = expr_text(lyndon_expr(ctx.lyndon[j]), names)
            parts.append(f"{v}*{name}" if v != 1 else name)
    return " + ".join(parts) if parts else "0"


def _cmd_parse(args):
    print(serialize(parse_file(args.file)), end="")
    return 0


def _cmd_preabelianize(args):
    result = preabelianize(parse_file(args.file))
    text = "# e: " + " ".join(str(e) for e in result.preabelian.e) + "\n"
    text += serialize(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        print(text, end="")
    return 0


def _prepare(args, default_class):
    P = parse_file(args.file)
    c = args.class_bound if args.class_bound is not None else default_class
    if getattr(args, "metabelian", False):
        P = instantiate_metabelian(P, max(c + 1, 4))
    return P, c


def _cmd_series(args):
    P, c = _prepare(args, max(args.max_n - 1, 1))
    report = quotient_report(P, args.max_n, c)
    if args.format == "json":
        print(report.to_json())
    else:
        print(f"class bound {report.class_bound}, n up to {report.max_n}")
        for ent in report.entries:
            checks = (
                f"theorem1={'yes' if ent.two_delta_in_gamma else 'NO'} "
                f"corollary={'yes' if ent.corollary_holds else 'NO'} "
                f"sjogren={'yes' if ent.sjogren_holds else 'NO'}"
            )
            print(
                f"n={ent.n}: gamma_rank={ent.gamma.rank} delta_rank={ent.delta.rank} "
                f"quotient={ent.quotient} {checks}"
            )
    return 0


def _cmd_delta(args):
    P, c = _prepare(args, args.n - 1)
    basis = delta_n(P, args.n, c)
    doc = {
        "n": args.n,
        "class": c,
        "ambient_rank": basis.ambient_rank,
        "rank": basis.rank,
        "basis": [list(row) for row in basis.basis.entries],
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_check(args):
    defaults = {"theorem1": args.n - 1, "corollary": args.n, "lemma2": args.n + 1,
                "sjogren": args.n - 1}
    P, c = _prepare(args, max(defaults[args.which], 1))
    if args.which == "lemma2":
        P = preabelianize(P)
        result = check_lemma2(P, args.n, c)
        print(f"part_i: {'holds' if result.part_i else 'VIOLATED'}")
        print(f"part_iii: {'holds' if result.part_iii else 'VIOLATED'}")
        return 0 if (result.part_i and result.part_iii) else 1
    if args.which == "theorem1":
        holds, witness = check_theorem1(P, args.n, c)
        if holds:
            print("holds")
            return 0
        ctx = TruncatedContext(P.m, c)
        print("VIOLATED")
        print("witness: " + _lie_row_text(witness, ctx, P.generators))
        return 1
    if args.which == "corollary":
        holds = check_corollary(P, args.n, c)
        print("holds" if holds else "VIOLATED")
        return 0 if holds else 1
    holds = check_sjogren(P, args.n, c)
    print("holds" if holds else "VIOLATED")
    return 0 if holds else 1


def _cmd_counterexample(args):
    if args.emit:
        P = build_Ln(args.n, args.degree)
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(serialize(P))
        print(f"wrote {args.emit}", file=sys.stderr)
    if args.verify:
        cert = verify(args.n)
        print(cert.to_json())
        return 0 if cert.passed else 1
    if not args.emit:
        print("nothing to do: pass --verify and/or --emit-presentation", file=sys.stderr)
        return 2
    return 0


def _cmd_sjogren(args):
    print(sjogren(args.n).value)
    return 0


_DISPATCH = {
    "parse": _cmd_parse,
    "preabelianize": _cmd_preabelianize,
    "series": _cmd_series,
    "delta": _cmd_delta,
    "check": _cmd_check,
    "counterexample": _cmd_counterexample,
    "sjogren": _cmd_sjogren,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return _DISPATCH[args.command](args)
    except (LiedimError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
