"""Command-line front end.

Exit codes: 0 when the property holds, 1 when it fails, 2 on usage, parse
or validation errors. Counterexamples go on the last line, prefixed
``counterexample:``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import analysis, convert, language, refine, textio
from .core import MixTs, Tsr, TsrError, is_modal

OK, FAIL, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, obj, lines):
    if args.json:
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _ce_line(names):
    return "counterexample:" + "".join(" " + textio.quote(n) for n in names)


def _load(path):
    return textio.load(path)


def _as_tsr(S):
    return S if isinstance(S, Tsr) else convert.mr(S)


def _as_mixts(S):
    return S if isinstance(S, MixTs) else convert.rm(S)


def cmd_check(args):
    S = _load(args.file)
    kind = "tsr" if isinstance(S, Tsr) else "mixts"
    obj = {"kind": kind, "name": S.name, "states": len(S.states), "actions": len(S.actions)}
    if kind == "tsr":
        obj["transitions"] = len(S.delta)
    else:
        obj["may"], obj["must"] = len(S.may), len(S.must)
    _emit(args, obj, [f"{kind} {S.name}: {obj['states']} states, {obj['actions']} actions"])
    return OK


def cmd_modal(args):
    S = _load(args.file)
    if isinstance(S, Tsr):
        holds = is_modal(S)
    else:
        holds = all(S.may.get(k) == t for k, t in S.must.items())
    _emit(args, {"modal": holds}, ["modal" if holds else "not modal"])
    return OK if holds else FAIL


def cmd_deadlocks(args):
    T = _as_tsr(_load(args.file))
    rep = analysis.deadlock_states(T)
    obj = rep.names(T)
    lines = [f"deadlocked: {' '.join(obj['deadlocked']) or '-'}",
             f"reachable deadlocked: {' '.join(obj['reachable_deadlocked']) or '-'}",
             "deadlock free" if rep.deadlock_free else "not deadlock free"]
    _emit(args, obj, lines)
    return OK if rep.deadlock_free else FAIL


def cmd_refine(args):
    A, C = _load(args.abstract), _load(args.concrete)
    if type(A) is not type(C):
        raise UsageError("both systems must be of the same kind; use 'convert' first")
    if isinstance(A, Tsr):
        rep = refine.check_refinement(A, C, safe=args.safe)
    else:
        if args.safe:
            raise UsageError("--safe applies to tsr documents only")
        rep = refine.check_mixts_refinement(A, C)
    obj = rep.to_dict(A, C)
    what = "safe refinement" if args.safe else "refinement"
    lines = []
    if args.oracle:
        if isinstance(A, Tsr):
            gfp = refine.greatest_refinement_relation(A, C, safe=args.safe)
        else:
            gfp = refine.greatest_mixts_refinement_relation(A, C)
        agree = ((A.initial, C.initial) in gfp) == rep.holds
        obj["oracle_agrees"] = agree
        lines.append(f"oracle: {'agrees' if agree else 'DISAGREES'}")
        if not agree:
            _emit(args, obj, lines)
            return ERROR
    if rep.holds:
        lines.append(f"{what} holds ({len(rep.relation)} related pairs)")
    else:
        ce = rep.counterexample
        lines.append(f"{what} fails: {ce.violation} at ({A.states[ce.pair[0]]}, {C.states[ce.pair[1]]})")
        lines.append(_ce_line(rep.trace_names()))
    _emit(args, obj, lines)
    return OK if rep.holds else FAIL


def cmd_convert(args):
    S = _load(args.file)
    out = _as_tsr(S) if args.to == "tsr" else _as_mixts(S)
    sys.stdout.write(textio.export_json(out) if args.json else textio.dumps(out))
    return OK


def cmd_canon(args):
    S = _load(args.file)
    if not isinstance(S, MixTs):
        raise UsageError("canon expects a mixts document")
    out = convert.canonicalize(S)
    sys.stdout.write(textio.export_json(out) if args.json else textio.dumps(out))
    return OK


def cmd_iso(args):
    M1, M2 = _as_mixts(_load(args.file1)), _as_mixts(_load(args.file2))
    f = convert.iso_check(M1, M2)
    if f is None:
        _emit(args, {"isomorphic": False}, ["not isomorphic"])
        return FAIL
    pairs = sorted([M1.states[p], M2.states[q]] for p, q in f.items())
    _emit(args, {"isomorphic": True, "mapping": pairs},
          ["isomorphic"] + [f"{p} -> {q}" for p, q in pairs])
    return OK


def _word_obj(v):
    return None if v.word is None else v.word_names()


def cmd_lang(args):
    op = args.op
    if op == "empty":
        T = _as_tsr(_load(args.file))
        v = language.is_empty(T)
        obj = {"empty": v.holds, "witness": _word_obj(v)}
        lines = ["empty"] if v else ["not empty", "witness:" + "".join(" " + textio.quote(n) for n in v.word_names())]
        _emit(args, obj, lines)
        return OK if v else FAIL
    if op == "member":
        T = _as_tsr(_load(args.file))
        word = args.word.split()
        ok = language.accepts(T, word)
        _emit(args, {"member": ok, "word": word}, ["accepted" if ok else "rejected"])
        return OK if ok else FAIL
    if op in ("includes", "equiv"):
        T1, T2 = _as_tsr(_load(args.file1)), _as_tsr(_load(args.file2))
        v = language.includes(T1, T2) if op == "includes" else language.equivalent(T1, T2)
        key = "included" if op == "includes" else "equivalent"
        obj = {key: v.holds, "counterexample": _word_obj(v)}
        lines = [key if v else f"not {key}"]
        if not v:
            lines.append(_ce_line(v.word_names()))
        _emit(args, obj, lines)
        return OK if v else FAIL
    # enum
    T = _as_tsr(_load(args.file))
    words = language.enumerate_words(T, args.maxlen)
    named = [T.trace_names(w) for w in words]
    _emit(args, {"maxlen": args.maxlen, "words": named},
          [" ".join(textio.quote(n) for n in w) if w else "<empty>" for w in named])
    return OK


def cmd_dot(args):
    sys.stdout.write(textio.export_dot(_load(args.file)))
    return OK


def cmd_fmt(args):
    with open(args.file, encoding="utf-8") as f:
        doc = textio.parse(f.read())
    text = textio.dumps(textio.validate(doc))
    if args.in_place:
        with open(args.file, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    p = argparse.ArgumentParser(prog="tsrkit", parents=[common],
                                description="Refinement and language checks for transition systems with responses.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "validate a system").add_argument("file")
    add("modal", cmd_modal, "is the system modal").add_argument("file")
    add("deadlocks", cmd_deadlocks, "report deadlocked states").add_argument("file")
    sp = add("refine", cmd_refine, "does CONCRETE refine ABSTRACT")
    sp.add_argument("abstract")
    sp.add_argument("concrete")
    sp.add_argument("--safe", action="store_true")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check against the greatest-fixpoint relation")
    sp = add("convert", cmd_convert, "convert between tsr and mixts")
    sp.add_argument("file")
    sp.add_argument("--to", choices=("tsr", "mixts"), required=True)
    add("canon", cmd_canon, "canonicalize a mixts").add_argument("file")
    sp = add("iso", cmd_iso, "isomorphism of reachable parts")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = add("lang", cmd_lang, "language questions")
    lsub = sp.add_subparsers(dest="op", required=True)
    lsub.add_parser("empty", parents=[common]).add_argument("file")
    m = lsub.add_parser("member", parents=[common])
    m.add_argument("file")
    m.add_argument("word", help="space-separated actions; '' for the empty word")
    for op in ("includes", "equiv"):
        s = lsub.add_parser(op, parents=[common])
        s.add_argument("file1")
        s.add_argument("file2")
    e = lsub.add_parser("enum", parents=[common])
    e.add_argument("file")
    e.add_argument("--maxlen", type=int, default=6)

    add("dot", cmd_dot, "Graphviz export").add_argument("file")
    sp = add("fmt", cmd_fmt, "canonical reformat")
    sp.add_argument("file")
    sp.add_argument("-i", "--in-place", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except (TsrError, UsageError, OSError, ValueError) as e:
        print(f"tsrkit: error: {e}", file=sys.stderr)
        return ERROR


dispatch = main

if __name__ == "__main__":
    sys.exit(main())
