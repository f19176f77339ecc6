"""Line-based text format, canonical serialization, DOT and JSON export.

Format (UTF-8, ``#`` starts a comment)::

    kind tsr                      # or: kind mixts
    system medication
    actions prescribe sign give
    states s0 s1 s2
    initial s0
    responses s1 : give           # omitted states have no responses
    trans s0 prescribe s1         # tsr only
    may s0 prescribe s1           # mixts only
    must s1 give s2               # mixts only

Names are identifiers or double-quoted strings (``"don't trust"``).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .core import (MixTs, System, Tsr, TsrError, ValidationError, build_mixts,
                   build_tsr, validate)

_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | "(?P<quoted>(?:[^"\\]|\\.)*)"
  | (?P<colon>:)
  | (?P<comment>\#.*)
  | (?P<bad>.)
""", re.VERBOSE)
_EDGE_KINDS = {"tsr": ("trans",), "mixts": ("may", "must")}


class ParseError(TsrError, ValueError):
    def __init__(self, msg, line, column=1):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {msg}")


@dataclass(frozen=True)
class SystemDoc:
    """Parsed document: declarations in file order plus source spans.

    Spans map declaration keys to ``(line, column)`` and do not take part
    in equality.
    """

    kind: str
    name: str
    actions: tuple = ()
    states: tuple = ()
    initial: Optional[str] = None
    responses: tuple = ()  # ((state, (action, ...)), ...)
    edges: tuple = ()  # ((relation, source, action, target), ...)
    spans: dict = field(default_factory=dict, compare=False, repr=False)


def _tokenize(text, lineno):
    toks = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() + 1
        if kind in ("ws",):
            continue
        if kind == "comment":
            break
        if kind == "bad":
            what = "unterminated string" if m.group() == '"' else f"unexpected character {m.group()!r}"
            raise ParseError(what, lineno, col)
        if kind == "quoted":
            value = re.sub(r"\\(.)", r"\1", m.group("quoted"))
            if not value:
                raise ParseError("empty name", lineno, col)
            toks.append(("name", value, col, True))
        else:
            toks.append((kind, m.group(), col, False))
    return toks


def _names(toks, lineno, what):
    for kind, _, col, _ in toks:
        if kind != "name":
            raise ParseError(f"expected a name in {what}", lineno, col)
    return [t[1] for t in toks]


def parse(text: str) -> SystemDoc:
    """Parse text into a SystemDoc. Raises ParseError with line/column."""
    header = []
    actions, states, responses, edges = [], [], [], []
    initial = None
    spans = {}
    kind = name = None
    last_line = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        last_line = lineno
        toks = _tokenize(line, lineno)
        if not toks:
            continue
        kw_kind, kw, kw_col, kw_quoted = toks[0]
        if kw_kind != "name" or kw_quoted:
            raise ParseError("expected a keyword", lineno, kw_col)
        args = toks[1:]
        end_col = len(line) + 1
        if len(header) == 0:
            if kw != "kind" or len(args) != 1 or args[0][1] not in ("tsr", "mixts"):
                raise ParseError("first line must be 'kind tsr' or 'kind mixts'", lineno, kw_col)
            kind = args[0][1]
            header.append(kw)
            continue
        if len(header) == 1:
            if kw != "system" or len(args) != 1 or args[0][0] != "name":
                raise ParseError("second line must be 'system NAME'", lineno, kw_col)
            name = args[0][1]
            header.append(kw)
            continue
        if kw in ("actions", "states"):
            names = _names(args, lineno, kw)
            if not names:
                raise ParseError(f"'{kw}' needs at least one name", lineno, end_col)
            target = actions if kw == "actions" else states
            for (_, n, col, _) in args:
                spans.setdefault((kw, n), (lineno, col))
                target.append(n)
        elif kw == "initial":
            names = _names(args, lineno, kw)
            if len(names) != 1:
                raise ParseError("'initial' takes exactly one name", lineno, kw_col)
            if initial is not None and initial != names[0]:
                raise ParseError(f"initial state already declared as {initial!r}", lineno, args[0][2])
            initial = names[0]
            spans.setdefault(("initial", initial), (lineno, args[0][2]))
        elif kw == "responses":
            if kind != "tsr":
                raise ParseError("'responses' is only allowed in tsr documents", lineno, kw_col)
            if len(args) < 2 or args[0][0] != "name" or args[1][0] != "colon":
                raise ParseError("expected 'responses STATE : ACTION*'", lineno,
                                 args[1][2] if len(args) > 1 else end_col)
            acts = _names(args[2:], lineno, kw)
            responses.append((args[0][1], tuple(acts)))
            spans.setdefault(("responses", args[0][1]), (lineno, args[0][2]))
        elif kw in ("trans", "may", "must"):
            if kw not in _EDGE_KINDS[kind]:
                raise ParseError(f"'{kw}' is not allowed in {kind} documents", lineno, kw_col)
            names = _names(args, lineno, kw)
            if len(names) != 3:
                col = args[len(names)][2] if len(names) > 3 else end_col
                raise ParseError(f"'{kw}' takes SOURCE ACTION TARGET, got {len(names)} names",
                                 lineno, col)
            edges.append((kw, *names))
            spans.setdefault((kw, *names), (lineno, kw_col))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, kw_col)
    if len(header) < 2:
        raise ParseError("missing 'kind' and 'system' header", last_line + 1)
    return SystemDoc(kind, name, tuple(actions), tuple(states), initial,
                     tuple(responses), tuple(edges), spans)


def quote(name: str) -> str:
    if _BARE.match(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def canonical(doc: SystemDoc) -> SystemDoc:
    """Same declarations in canonical order, duplicates merged.

    States keep declaration order; response actions are sorted by name;
    edges are sorted by (source declaration index, action name), may edges
    before must edges.
    """
    order = {s: i for i, s in enumerate(doc.states)}

    def skey(s):
        return (order.get(s, len(order)), s)

    merged = {}
    for st, acts in doc.responses:
        merged.setdefault(st, set()).update(acts)
    responses = tuple((st, tuple(sorted(merged[st])))
                      for st in sorted(merged, key=skey) if merged[st])
    rel_rank = {"trans": 0, "may": 0, "must": 1}
    edges = tuple(sorted(set(doc.edges),
                         key=lambda e: (rel_rank[e[0]], skey(e[1]), e[2], e[3])))
    return SystemDoc(doc.kind, doc.name, tuple(doc.actions), tuple(doc.states),
                     doc.initial, responses, edges, dict(doc.spans))


def serialize(doc: SystemDoc) -> str:
    doc = canonical(doc)
    lines = [f"kind {doc.kind}", f"system {quote(doc.name)}"]
    if doc.actions:
        lines.append("actions " + " ".join(quote(a) for a in doc.actions))
    if doc.states:
        lines.append("states " + " ".join(quote(s) for s in doc.states))
    if doc.initial is not None:
        lines.append(f"initial {quote(doc.initial)}")
    for st, acts in doc.responses:
        lines.append(" ".join(["responses", quote(st), ":", *map(quote, acts)]))
    for rel, s, a, t in doc.edges:
        lines.append(f"{rel} {quote(s)} {quote(a)} {quote(t)}")
    return "\n".join(lines) + "\n"


def to_doc(S: System) -> SystemDoc:
    if isinstance(S, Tsr):
        responses = tuple((S.states[s], tuple(S.actions.name(a) for a in r))
                          for s, r in enumerate(S.responses))
        edges = tuple(("trans", *e) for e in S.edges())
        kind = "tsr"
    else:
        responses = ()
        edges = tuple([("may", *e) for e in S.may_edges()] +
                      [("must", *e) for e in S.must_edges()])
        kind = "mixts"
    return canonical(SystemDoc(kind, S.name, S.actions.names, S.states,
                               S.states[S.initial], responses, edges))


def dumps(S: System) -> str:
    return serialize(to_doc(S))


def loads(text: str) -> System:
    return validate(parse(text))


def load(path) -> System:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(S: System) -> str:
    """Graphviz rendering. Response sets annotate states; for mixed systems
    must edges are solid and may edges dashed."""
    out = [f"digraph {_dot_str(S.name)} {{", "  rankdir=LR;",
           "  node [shape=circle];", "  __start [shape=point, label=\"\"];",
           f"  __start -> {_dot_str(S.states[S.initial])};"]
    for s, st in enumerate(S.states):
        esc = _dot_str(st)[1:-1]
        if isinstance(S, Tsr):
            resp = sorted(S.actions.name(a) for a in S.responses[s])
            label = esc
            if resp:
                label += "\\n\u25a1{" + _dot_str(", ".join(resp))[1:-1] + "}"
            shape = "" if resp else ", shape=doublecircle"
            out.append(f"  {_dot_str(st)} [label=\"{label}\"{shape}];")
        else:
            out.append(f"  {_dot_str(st)} [label=\"{esc}\"];")
    if isinstance(S, Tsr):
        for src, a, tgt in S.edges():
            out.append(f"  {_dot_str(src)} -> {_dot_str(tgt)} [label={_dot_str(a)}];")
    else:
        for src, a, tgt in S.must_edges():
            out.append(f"  {_dot_str(src)} -> {_dot_str(tgt)} [label={_dot_str(a)}, style=solid];")
        for src, a, tgt in S.may_edges():
            out.append(f"  {_dot_str(src)} -> {_dot_str(tgt)} [label={_dot_str(a)}, style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"


def to_json_obj(S: System) -> dict:
    obj = {"kind": "tsr" if isinstance(S, Tsr) else "mixts", "name": S.name,
           "actions": list(S.actions.names), "states": list(S.states),
           "initial": S.states[S.initial]}
    if isinstance(S, Tsr):
        obj["responses"] = {S.states[s]: [S.actions.name(a) for a in sorted(r)]
                            for s, r in enumerate(S.responses)}
        obj["delta"] = [list(e) for e in S.edges()]
    else:
        obj["may"] = [list(e) for e in S.may_edges()]
        obj["must"] = [list(e) for e in S.must_edges()]
    return obj


def export_json(S: System) -> str:
    return json.dumps(to_json_obj(S), indent=2, ensure_ascii=False) + "\n"


def load_json(text: str) -> System:
    obj = json.loads(text)
    try:
        if obj["kind"] == "tsr":
            return build_tsr(obj["name"], obj["states"], obj["initial"], obj["responses"],
                             [tuple(e) for e in obj["delta"]], actions=obj["actions"])
        if obj["kind"] == "mixts":
            return build_mixts(obj["name"], obj["states"], obj["initial"],
                               [tuple(e) for e in obj["may"]], [tuple(e) for e in obj["must"]],
                               actions=obj["actions"])
    except KeyError as e:
        raise ValidationError(f"missing field {e.args[0]!r}") from None
    raise ValidationError(f"unknown kind {obj.get('kind')!r}")


FIXTURES = ("T_a", "T_b", "T_c", "M_med", "CE_left", "CE_right")


def fixture_path(name: str):
    """Filesystem path of a shipped fixture (``T_a``, ``M_med``, ...)."""
    if name not in FIXTURES:
        raise KeyError(name)
    ext = "mixts" if name.startswith("M_") else "tsr"
    return resources.files("tsrkit") / "fixtures" / f"{name}.{ext}"


def load_fixture(name: str) -> System:
    return loads(fixture_path(name).read_text(encoding="utf-8"))
