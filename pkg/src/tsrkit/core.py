"""Interned identifiers, the two system types, and structural validation.

States and actions are interned to dense integers in declaration order.
Both system types are immutable once built; every analysis in the package
is a pure function of them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Trace = tuple  # tuple[int, ...] of action ids
Edge = tuple  # (source name, action name, target name)


class TsrError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(TsrError, ValueError):
    pass


class DuplicateTransition(ValidationError):
    def __init__(self, state, action, relation="trans", span=None):
        self.state, self.action, self.relation, self.span = state, action, relation, span
        where = f" (line {span[0]})" if span else ""
        super().__init__(
            f"two {relation} transitions from {state!r} with action {action!r}{where}")


class UndeclaredName(ValidationError):
    def __init__(self, kind, name, span=None):
        self.kind, self.name, self.span = kind, name, span
        where = f" (line {span[0]})" if span else ""
        super().__init__(f"undeclared {kind} {name!r}{where}")


class DuplicateName(ValidationError):
    def __init__(self, kind, name, span=None):
        self.kind, self.name, self.span = kind, name, span
        where = f" (line {span[0]})" if span else ""
        super().__init__(f"{kind} {name!r} declared twice{where}")


class MissingInitial(ValidationError):
    def __init__(self, msg="no initial state declared"):
        super().__init__(msg)


class UnknownAction(TsrError, KeyError):
    def __str__(self):
        return f"unknown action {self.args[0]!r}"


@dataclass(frozen=True)
class ActionTable:
    """Ordered, duplicate-free action names; ids are positions."""

    names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        lookup = {}
        for i, n in enumerate(self.names):
            if n in lookup:
                raise DuplicateName("action", n)
            lookup[n] = i
        object.__setattr__(self, "_lookup", lookup)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._lookup

    def id(self, name: str) -> int:
        try:
            return self._lookup[name]
        except KeyError:
            raise UnknownAction(name) from None

    def name(self, aid: int) -> str:
        return self.names[aid]

    def union(self, other: "ActionTable") -> tuple["ActionTable", list]:
        """Merge by name. Returns the merged table (self's ids unchanged)
        and a list mapping other's ids into it."""
        names = list(self.names)
        seen = dict(self._lookup)
        remap = []
        for n in other.names:
            if n not in seen:
                seen[n] = len(names)
                names.append(n)
            remap.append(seen[n])
        return ActionTable(tuple(names)), remap


class _System:
    """State-name plumbing shared by Tsr and MixTs."""

    @cached_property
    def _state_index(self):
        return {n: i for i, n in enumerate(self.states)}

    def state_id(self, name: str) -> int:
        try:
            return self._state_index[name]
        except KeyError:
            raise UndeclaredName("state", name) from None

    def state_name(self, sid: int) -> str:
        return self.states[sid]

    @property
    def nstates(self) -> int:
        return len(self.states)

    def trace(self, word: Iterable) -> Trace:
        """Convert action names (or ids) to a trace of ids."""
        out = []
        for a in word:
            if isinstance(a, str):
                out.append(self.actions.id(a))
            elif isinstance(a, int) and 0 <= a < len(self.actions):
                out.append(a)
            else:
                raise UnknownAction(a)
        return tuple(out)

    def trace_names(self, trace: Iterable[int]) -> list:
        return [self.actions.name(a) for a in trace]


def _adjacency(n, delta):
    succ = [dict() for _ in range(n)]
    for (s, a), t in sorted(delta.items()):
        succ[s][a] = t
    return tuple(succ)


@dataclass(frozen=True)
class Tsr(_System):
    """Action-deterministic transition system with per-state response sets.

    ``responses[s]`` is a frozenset of action ids, total over states.
    ``delta`` maps ``(state, action)`` to the unique successor.
    """

    name: str
    actions: ActionTable
    states: tuple
    initial: int
    responses: tuple
    delta: Mapping = field(default_factory=dict)

    @cached_property
    def succ(self) -> tuple:
        """Per-state adjacency ``{action: target}``, actions ascending."""
        return _adjacency(len(self.states), self.delta)

    def edges(self):
        """Transitions as name triples, sorted by (source id, action id)."""
        return [(self.states[s], self.actions.name(a), self.states[t])
                for (s, a), t in sorted(self.delta.items())]

    def __repr__(self):
        return (f"Tsr({self.name!r}, states={len(self.states)}, "
                f"actions={len(self.actions)}, transitions={len(self.delta)})")


@dataclass(frozen=True)
class MixTs(_System):
    """System with separate may and must transition maps.

    Each map is a partial function ``(state, action) -> state``. Must edges
    are not required to be matched by may edges.
    """

    name: str
    actions: ActionTable
    states: tuple
    initial: int
    may: Mapping = field(default_factory=dict)
    must: Mapping = field(default_factory=dict)

    @cached_property
    def may_succ(self) -> tuple:
        return _adjacency(len(self.states), self.may)

    @cached_property
    def must_succ(self) -> tuple:
        return _adjacency(len(self.states), self.must)

    def may_edges(self):
        return [(self.states[s], self.actions.name(a), self.states[t])
                for (s, a), t in sorted(self.may.items())]

    def must_edges(self):
        return [(self.states[s], self.actions.name(a), self.states[t])
                for (s, a), t in sorted(self.must.items())]

    def __repr__(self):
        return (f"MixTs({self.name!r}, states={len(self.states)}, "
                f"actions={len(self.actions)}, may={len(self.may)}, must={len(self.must)})")


System = Union[Tsr, MixTs]


def _index_states(states, spans=None):
    index = {}
    for i, s in enumerate(states):
        if s in index:
            raise DuplicateName("state", s, (spans or {}).get(("states", s)))
        index[s] = i
    return index


def _edge_map(edges, sidx, actions, relation, spans):
    out = {}
    for src, act, tgt in edges:
        span = spans.get((relation, src, act, tgt))
        for st in (src, tgt):
            if st not in sidx:
                raise UndeclaredName("state", st, span)
        if act not in actions:
            raise UndeclaredName("action", act, span)
        key = (sidx[src], actions.id(act))
        t = sidx[tgt]
        if out.get(key, t) != t:
            raise DuplicateTransition(src, act, relation, span)
        out[key] = t
    return out


def _resolve_initial(initial, sidx, spans):
    if initial is None:
        raise MissingInitial()
    if initial not in sidx:
        raise UndeclaredName("state", initial, spans.get(("initial", initial)))
    return sidx[initial]


def build_tsr(name: str, states: Sequence[str], initial: str | None,
              responses: Mapping[str, Iterable[str]] | None = None,
              transitions: Iterable[Edge] = (),
              actions: Sequence[str] | None = None, *, spans=None) -> Tsr:
    """Build a validated Tsr from names.

    When ``actions`` is None the alphabet is inferred from responses and
    transitions in order of first use; otherwise every used action must be
    declared.
    """
    spans = spans or {}
    responses = dict(responses or {})
    transitions = list(transitions)
    if actions is None:
        seen = {}
        for st in states:
            for a in responses.get(st, ()):
                seen.setdefault(a, None)
        for _, a, _ in transitions:
            seen.setdefault(a, None)
        actions = list(seen)
    table = actions if isinstance(actions, ActionTable) else ActionTable(tuple(actions))
    sidx = _index_states(states, spans)
    init = _resolve_initial(initial, sidx, spans)
    resp = [set() for _ in states]
    for st, acts in responses.items():
        span = spans.get(("responses", st))
        if st not in sidx:
            raise UndeclaredName("state", st, span)
        for a in acts:
            if a not in table:
                raise UndeclaredName("action", a, span)
            resp[sidx[st]].add(table.id(a))
    delta = _edge_map(transitions, sidx, table, "trans", spans)
    return Tsr(name, table, tuple(states), init, tuple(frozenset(r) for r in resp), delta)


def build_mixts(name: str, states: Sequence[str], initial: str | None,
                may: Iterable[Edge] = (), must: Iterable[Edge] = (),
                actions: Sequence[str] | None = None, *, spans=None) -> MixTs:
    spans = spans or {}
    may, must = list(may), list(must)
    if actions is None:
        actions = list(dict.fromkeys(a for _, a, _ in may + must))
    table = actions if isinstance(actions, ActionTable) else ActionTable(tuple(actions))
    sidx = _index_states(states, spans)
    init = _resolve_initial(initial, sidx, spans)
    return MixTs(name, table, tuple(states), init,
                 _edge_map(may, sidx, table, "may", spans),
                 _edge_map(must, sidx, table, "must", spans))


def _check_kind(doc, kind):
    if getattr(doc, "kind", kind) != kind:
        raise ValidationError(f"expected a {kind} document, got {doc.kind}")


def validate_tsr(doc) -> Tsr:
    """Validate a parsed document (see ``tsrkit.textio.SystemDoc``)."""
    _check_kind(doc, "tsr")
    responses = {}
    for st, acts in doc.responses:
        responses.setdefault(st, []).extend(acts)
    trans = [(s, a, t) for rel, s, a, t in doc.edges if rel == "trans"]
    return build_tsr(doc.name, doc.states, doc.initial, responses, trans,
                     actions=doc.actions, spans=doc.spans)


def validate_mixts(doc) -> MixTs:
    _check_kind(doc, "mixts")
    may = [(s, a, t) for rel, s, a, t in doc.edges if rel == "may"]
    must = [(s, a, t) for rel, s, a, t in doc.edges if rel == "must"]
    return build_mixts(doc.name, doc.states, doc.initial, may, must,
                       actions=doc.actions, spans=doc.spans)


def validate(doc) -> System:
    return validate_tsr(doc) if doc.kind == "tsr" else validate_mixts(doc)


def may_set(T: Tsr, s: int) -> frozenset:
    """Actions labelling outgoing transitions of ``s``."""
    return frozenset(T.succ[s])


def may_set_scan(T: Tsr, s: int) -> frozenset:
    # Independent of the adjacency index; used to cross-check may_set.
    return frozenset(a for (src, a) in T.delta if src == s)


def is_modal(T: Tsr) -> bool:
    """True iff every response action is enabled in its state."""
    return all(T.responses[s] <= T.succ[s].keys() for s in range(len(T.states)))


def reachable_states(T: System) -> frozenset:
    """States reachable from the initial one (MixTs: over may and must)."""
    if isinstance(T, Tsr):
        adj = [list(d.values()) for d in T.succ]
    else:
        adj = [list(m.values()) + list(u.values())
               for m, u in zip(T.may_succ, T.must_succ)]
    seen = {T.initial}
    queue = deque([T.initial])
    while queue:
        s = queue.popleft()
        for t in adj[s]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)
