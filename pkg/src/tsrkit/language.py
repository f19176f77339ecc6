"""Finite-trace language of a TSR.

A TSR is read as a deterministic partial automaton whose accepting states
are those with no pending responses, so inclusion needs no subset
construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from ._align import align_actions, remap_sets, remap_succ
from .core import ActionTable, Tsr, TsrError

DEFAULT_CAP = 1_000_000
_SINK = -1


class ResourceLimit(TsrError, RuntimeError):
    pass


@dataclass(frozen=True)
class LanguageVerdict:
    """Outcome of a language question with an optional witness word.

    Truthiness is the verdict itself.
    """

    holds: bool
    word: Optional[tuple] = None
    actions: Optional[ActionTable] = None

    def __bool__(self):
        return self.holds

    def word_names(self):
        if self.word is None:
            return None
        return [self.actions.name(a) for a in self.word]


def run(T: Tsr, word) -> Optional[int]:
    """State reached by ``word`` from the initial state, or None if stuck."""
    s = T.initial
    for a in T.trace(word):
        s = T.succ[s].get(a)
        if s is None:
            return None
    return s


def accepts(T: Tsr, word) -> bool:
    s = run(T, word)
    return s is not None and not T.responses[s]


def is_empty(T: Tsr) -> LanguageVerdict:
    """Empty iff no accepting state is reachable.

    When non-empty the verdict carries the shortest accepted word, ties
    broken towards smaller action ids.
    """
    parent = {T.initial: None}
    queue = deque([T.initial])
    while queue:
        s = queue.popleft()
        if not T.responses[s]:
            word = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return LanguageVerdict(False, tuple(reversed(word)), T.actions)
        for a, t in T.succ[s].items():
            if t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    return LanguageVerdict(True, None, T.actions)


def includes(T1: Tsr, T2: Tsr, *, strict: bool = False) -> LanguageVerdict:
    """Decide whether the language of ``T2`` is contained in that of ``T1``.

    On failure the verdict carries the shortest word accepted by ``T2`` and
    rejected by ``T1``, expressed over the merged alphabet.
    """
    table, remap = align_actions(T1.actions, T2.actions, strict)
    succ1 = T1.succ
    succ2 = remap_succ(T2.succ, remap)
    resp2 = remap_sets(T2.responses, remap)
    root = (T1.initial, T2.initial)
    parent = {root: None}
    queue = deque([root])
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        if not resp2[s2] and (s1 == _SINK or T1.responses[s1]):
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return LanguageVerdict(False, tuple(reversed(word)), table)
        m1 = succ1[s1] if s1 != _SINK else {}
        for a in sorted(succ2[s2]):
            nxt = (m1.get(a, _SINK), succ2[s2][a])
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return LanguageVerdict(True, None, table)


def equivalent(T1: Tsr, T2: Tsr, *, strict: bool = False) -> LanguageVerdict:
    """Two-sided inclusion; the witness is the smaller one-sided witness."""
    fwd = includes(T1, T2, strict=strict)
    back = includes(T2, T1, strict=strict)
    if fwd and back:
        return LanguageVerdict(True, None, fwd.actions)
    # re-express both witnesses over fwd's merged alphabet before comparing
    cands = [tuple(fwd.actions.id(n) for n in v.word_names()) for v in (fwd, back) if not v]
    word = min(cands, key=lambda w: (len(w), w))
    return LanguageVerdict(False, word, fwd.actions)


def enumerate_words(T: Tsr, maxlen: int, cap: int = DEFAULT_CAP) -> list:
    """All accepted words of length at most ``maxlen``.

    Ordered by length, then lexicographically by action id. Raises
    ResourceLimit when either the result or the frontier of live runs would
    exceed ``cap``.
    """
    if maxlen < 0:
        raise ValueError("maxlen must be non-negative")
    out = []
    layer = [((), T.initial)]
    for length in range(maxlen + 1):
        for word, s in layer:
            if not T.responses[s]:
                out.append(word)
        if len(out) > cap:
            raise ResourceLimit(f"more than {cap} accepted words up to length {length}")
        if length == maxlen:
            break
        layer = [(word + (a,), t) for word, s in layer for a, t in T.succ[s].items()]
        if len(layer) > cap:
            raise ResourceLimit(f"more than {cap} runs of length {length + 1}")
    return out
