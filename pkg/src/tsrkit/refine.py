"""Refinement and safe refinement between TSRs, and refinement between MixTs.

Convention throughout: ``check_refinement(T1, T2)`` asks whether the
concrete ``T2`` refines the abstract ``T1``; relations are sets of
``(state of T1, state of T2)`` id pairs.

Both transition maps are functional, so every matching demanded by the
refinement conditions is unique. Refinement from the initial pair is then
decided by a single breadth-first walk over forced pairs. The generic
greatest-fixpoint computation is kept as an independent oracle.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from ._align import align_actions, remap_sets, remap_succ
from .core import ActionTable, MixTs, Tsr


class Violation(str, enum.Enum):
    RESPONSE_NOT_GROWN = "ResponseNotGrown"
    MUST_NOT_PRESERVED = "MustNotPreserved"
    MAY_NOT_REFLECTED = "MayNotReflected"
    DEADLOCK_NOT_REFLECTED = "DeadlockNotReflected"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Counterexample:
    """Shortest trace to a pair at which exactly one condition fails.

    ``action`` is the offending action for the transition conditions and
    the smallest offending response for ``ResponseNotGrown``. ``moves`` is
    only set for mixed systems, where each step is a ``"must"`` or ``"may"``
    move.
    """

    trace: tuple
    pair: tuple
    violation: Violation
    action: Optional[int] = None
    moves: Optional[tuple] = None


@dataclass(frozen=True)
class RefinementReport:
    holds: bool
    relation: Optional[frozenset]
    counterexample: Optional[Counterexample]
    actions: ActionTable
    safe: bool = False

    def __bool__(self):
        return self.holds

    def trace_names(self):
        if self.counterexample is None:
            return None
        return [self.actions.name(a) for a in self.counterexample.trace]

    def to_dict(self, S1, S2) -> dict:
        """JSON-ready view using state and action names of ``S1``/``S2``."""
        out = {"holds": self.holds, "safe": self.safe}
        if self.relation is not None:
            out["relation"] = sorted([S1.states[p], S2.states[q]] for p, q in self.relation)
        ce = self.counterexample
        if ce is not None:
            out["counterexample"] = {
                "trace": self.trace_names(),
                "pair": [S1.states[ce.pair[0]], S2.states[ce.pair[1]]],
                "violation": ce.violation.value,
                "action": None if ce.action is None else self.actions.name(ce.action),
            }
            if ce.moves is not None:
                out["counterexample"]["moves"] = list(ce.moves)
        return out


def _aligned(T1: Tsr, T2: Tsr, strict: bool):
    table, remap = align_actions(T1.actions, T2.actions, strict)
    succ1 = list(T1.succ)
    succ2 = remap_succ(T2.succ, remap)
    return table, succ1, list(T1.responses), succ2, remap_sets(T2.responses, remap)


def _local_violation(r1, m1, r2, m2, safe):
    if not r1 <= r2:
        return Violation.RESPONSE_NOT_GROWN, min(r1 - r2)
    missing = [a for a in r1 if a in m1 and a not in m2]
    if missing:
        return Violation.MUST_NOT_PRESERVED, min(missing)
    extra = [a for a in m2 if a not in m1]
    if extra:
        return Violation.MAY_NOT_REFLECTED, min(extra)
    if safe and r2 and not m2 and not (r1 and not m1):
        return Violation.DEADLOCK_NOT_REFLECTED, None
    return None


def _trace_to(parent, pair):
    trace, moves = [], []
    while parent[pair] is not None:
        pair, a, move = parent[pair]
        trace.append(a)
        moves.append(move)
    return tuple(reversed(trace)), tuple(reversed(moves))


def check_refinement(T1: Tsr, T2: Tsr, *, safe: bool = False,
                     strict: bool = False) -> RefinementReport:
    """Decide whether ``T2`` refines ``T1`` (safely, if ``safe``).

    Alphabets are unioned by name unless ``strict``, which raises
    ``AlphabetMismatch`` when they differ.
    """
    table, succ1, resp1, succ2, resp2 = _aligned(T1, T2, strict)
    root = (T1.initial, T2.initial)
    parent = {root: None}
    queue = deque([root])
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        m1, m2 = succ1[s1], succ2[s2]
        bad = _local_violation(resp1[s1], m1, resp2[s2], m2, safe)
        if bad is not None:
            trace, _ = _trace_to(parent, pair)
            ce = Counterexample(trace, pair, bad[0], bad[1])
            return RefinementReport(False, None, ce, table, safe)
        for a in sorted(m2):
            nxt = (m1[a], m2[a])
            if nxt not in parent:
                parent[nxt] = (pair, a, None)
                queue.append(nxt)
    return RefinementReport(True, frozenset(parent), None, table, safe)


def check_safe_refinement(T1: Tsr, T2: Tsr, *, strict: bool = False) -> RefinementReport:
    return check_refinement(T1, T2, safe=True, strict=strict)


def greatest_refinement_relation(T1: Tsr, T2: Tsr, safe: bool = False) -> frozenset:
    """Largest relation over all of S1 x S2 meeting every refinement condition.

    Brute-force deletion to a fixpoint; a refinement exists iff the initial
    pair survives.
    """
    table, remap = T1.actions.union(T2.actions)
    edges1 = [[] for _ in T1.states]
    for (s, a), t in T1.delta.items():
        edges1[s].append((a, t))
    edges2 = [[] for _ in T2.states]
    for (s, a), t in T2.delta.items():
        edges2[s].append((remap[a], t))
    resp1 = [set(r) for r in T1.responses]
    resp2 = [{remap[a] for a in r} for r in T2.responses]

    def dead(resp, edges, s):
        return len(resp[s]) > 0 and len(edges[s]) == 0

    def ok(s1, s2, R):
        if not resp1[s1].issubset(resp2[s2]):
            return False
        for a, t1 in edges1[s1]:
            if a in resp1[s1] and not any(b == a and (t1, t2) in R for b, t2 in edges2[s2]):
                return False
        for a, t2 in edges2[s2]:
            if not any(b == a and (t1, t2) in R for b, t1 in edges1[s1]):
                return False
        if safe and dead(resp2, edges2, s2) and not dead(resp1, edges1, s1):
            return False
        return True

    R = {(p, q) for p in range(len(T1.states)) for q in range(len(T2.states))}
    changed = True
    while changed:
        changed = False
        for pair in sorted(R):
            if not ok(pair[0], pair[1], R):
                R.discard(pair)
                changed = True
    return frozenset(R)


def is_refinement(R, T1: Tsr, T2: Tsr, safe: bool = False) -> bool:
    """Check that the given pair set satisfies every refinement condition."""
    R = set(R)
    if (T1.initial, T2.initial) not in R:
        return False
    _, succ1, resp1, succ2, resp2 = _aligned(T1, T2, False)
    for s1, s2 in R:
        m1, m2 = succ1[s1], succ2[s2]
        if _local_violation(resp1[s1], m1, resp2[s2], m2, safe) is not None:
            return False
        # 2b successors are a subset of these once 2c holds locally
        for a in m2:
            if (m1[a], m2[a]) not in R:
                return False
    return True


def _aligned_mixts(M1: MixTs, M2: MixTs, strict: bool):
    table, remap = align_actions(M1.actions, M2.actions, strict)
    return (table, list(M1.must_succ), list(M1.may_succ),
            remap_succ(M2.must_succ, remap), remap_succ(M2.may_succ, remap))


def greatest_mixts_refinement_relation(M1: MixTs, M2: MixTs) -> frozenset:
    """Largest relation where musts of the left are matched by musts of the
    right and mays of the right by mays of the left, with related targets."""
    _, must1, may1, must2, may2 = _aligned_mixts(M1, M2, False)

    def ok(s1, s2, R):
        for a, t1 in must1[s1].items():
            if not any(b == a and (t1, t2) in R for b, t2 in must2[s2].items()):
                return False
        for a, t2 in may2[s2].items():
            if not any(b == a and (t1, t2) in R for b, t1 in may1[s1].items()):
                return False
        return True

    R = {(p, q) for p in range(len(M1.states)) for q in range(len(M2.states))}
    changed = True
    while changed:
        changed = False
        for pair in sorted(R):
            if not ok(pair[0], pair[1], R):
                R.discard(pair)
                changed = True
    return frozenset(R)


def _mixts_forced_walk(must1, may1, must2, may2, root):
    parent = {root: None}
    queue = deque([root])
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        bad = None
        for a in sorted(must1[s1]):
            if a not in must2[s2]:
                bad = (Violation.MUST_NOT_PRESERVED, a)
                break
        if bad is None:
            for a in sorted(may2[s2]):
                if a not in may1[s1]:
                    bad = (Violation.MAY_NOT_REFLECTED, a)
                    break
        if bad is not None:
            trace, moves = _trace_to(parent, pair)
            return parent, Counterexample(trace, pair, bad[0], bad[1], moves)
        steps = [(a, "must", (t, must2[s2][a])) for a, t in must1[s1].items()]
        steps += [(a, "may", (may1[s1][a], t)) for a, t in may2[s2].items()]
        for a, move, nxt in sorted(steps):
            if nxt not in parent:
                parent[nxt] = (pair, a, move)
                queue.append(nxt)
    return parent, None


def check_mixts_refinement(M1: MixTs, M2: MixTs, *, strict: bool = False) -> RefinementReport:
    """Decide whether ``M2`` refines ``M1`` as mixed transition systems.

    The verdict comes from the greatest fixpoint. The reported relation is
    the part of it forced from the initial pair, and a failing verdict
    carries the shortest must/may walk to a locally unmatched transition.
    """
    table, must1, may1, must2, may2 = _aligned_mixts(M1, M2, strict)
    root = (M1.initial, M2.initial)
    holds = root in greatest_mixts_refinement_relation(M1, M2)
    parent, ce = _mixts_forced_walk(must1, may1, must2, may2, root)
    if holds != (ce is None):
        raise AssertionError("fixpoint and forced walk disagree")
    if holds:
        return RefinementReport(True, frozenset(parent), None, table)
    return RefinementReport(False, None, ce, table)


def is_mixts_refinement(R, M1: MixTs, M2: MixTs) -> bool:
    R = set(R)
    if (M1.initial, M2.initial) not in R:
        return False
    _, must1, may1, must2, may2 = _aligned_mixts(M1, M2, False)
    for s1, s2 in R:
        for a, t1 in must1[s1].items():
            if a not in must2[s2] or (t1, must2[s2][a]) not in R:
                return False
        for a, t2 in may2[s2].items():
            if a not in may1[s1] or (may1[s1][a], t2) not in R:
                return False
    return True
