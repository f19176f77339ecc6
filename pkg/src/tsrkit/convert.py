"""Conversions between TSRs and action-deterministic mixed systems.

``rm`` turns each response into a must edge, landing on the matching may
target when one exists and on a fresh sink state otherwise. ``mr`` goes back
by forgetting must targets. Fresh sinks are named ``<state>__req_<action>``.
"""
from __future__ import annotations

from collections import deque

from .core import MixTs, Tsr, TsrError
from .refine import is_mixts_refinement, is_refinement


class NotARefinement(TsrError, ValueError):
    pass


def _fresh_name(base, taken):
    name, k = base, 0
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    taken.add(name)
    return name


def _rm_with_sinks(T: Tsr):
    states = list(T.states)
    taken = set(states)
    must = {}
    sinks = {}
    for s in range(len(T.states)):
        enabled = T.succ[s]
        for a in sorted(T.responses[s]):
            if a in enabled:
                must[(s, a)] = enabled[a]
            else:
                sink = len(states)
                states.append(_fresh_name(f"{T.states[s]}__req_{T.actions.name(a)}", taken))
                must[(s, a)] = sink
                sinks[(s, T.actions.name(a))] = sink
    M = MixTs(T.name, T.actions, tuple(states), T.initial, dict(T.delta), must)
    return M, sinks


def rm(T: Tsr) -> MixTs:
    """Mixed system of a TSR: may = transitions, must = responses."""
    return _rm_with_sinks(T)[0]


def _must_sinks(M: MixTs) -> set:
    # States whose only role is to be the target of must edges.
    has_out = {s for s, _ in M.may} | {s for s, _ in M.must}
    may_in = set(M.may.values())
    must_in = set(M.must.values())
    return {t for t in must_in
            if t != M.initial and t not in has_out and t not in may_in}


def _mr_with_index(M: MixTs):
    dropped = _must_sinks(M)
    kept = [s for s in range(len(M.states)) if s not in dropped]
    index = {s: i for i, s in enumerate(kept)}
    responses = [set() for _ in kept]
    for (s, a) in M.must:
        if s in index:
            responses[index[s]].add(a)
    delta = {(index[s], a): index[t] for (s, a), t in M.may.items()}
    T = Tsr(M.name, M.actions, tuple(M.states[s] for s in kept), index[M.initial],
            tuple(frozenset(r) for r in responses), delta)
    return T, index


def mr(M: MixTs) -> Tsr:
    """TSR of a mixed system.

    Responses are the actions with a must edge, transitions are the may
    edges. States that exist only as targets of must edges (no outgoing
    edges, no incoming may edge, not initial) carry no information once
    must targets are forgotten and are dropped.
    """
    return _mr_with_index(M)[0]


def _is_dedicated_sink(M: MixTs, t: int, indegree, has_out) -> bool:
    return t != M.initial and t not in has_out and indegree.get(t, 0) == 1


def canonicalize(M: MixTs) -> MixTs:
    """Redirect must edges to the representative RM would pick.

    A must edge with a may edge on the same action now targets the may
    target; a must-only edge targets a dedicated sink, reusing the current
    target when it already is one. Original states are all kept.
    """
    indegree = {}
    for t in list(M.may.values()) + list(M.must.values()):
        indegree[t] = indegree.get(t, 0) + 1
    has_out = {s for s, _ in M.may} | {s for s, _ in M.must}
    states = list(M.states)
    taken = set(states)
    must = {}
    for (s, a), t in sorted(M.must.items()):
        if (s, a) in M.may:
            must[(s, a)] = M.may[(s, a)]
        elif _is_dedicated_sink(M, t, indegree, has_out):
            must[(s, a)] = t
        else:
            must[(s, a)] = len(states)
            states.append(_fresh_name(f"{M.states[s]}__req_{M.actions.name(a)}", taken))
    return MixTs(M.name, M.actions, tuple(states), M.initial, dict(M.may), must)


def iso_check(M1: MixTs, M2: MixTs):
    """Forced isomorphism between the reachable parts, or None.

    Returns ``{state of M1: state of M2}``. Actions are matched by name.
    """
    n2a = {n: M1.actions.id(n) if n in M1.actions else ("missing", n) for n in M2.actions}

    def relabel(d):
        return {n2a[M2.actions.name(a)]: t for a, t in d.items()}

    fwd = {M1.initial: M2.initial}
    bwd = {M2.initial: M1.initial}
    queue = deque([M1.initial])
    while queue:
        p = queue.popleft()
        q = fwd[p]
        for d1, d2 in ((M1.may_succ[p], relabel(M2.may_succ[q])),
                       (M1.must_succ[p], relabel(M2.must_succ[q]))):
            if d1.keys() != d2.keys():
                return None
            for a, p2 in d1.items():
                q2 = d2[a]
                if fwd.get(p2, q2) != q2 or bwd.get(q2, p2) != p2:
                    return None
                if p2 not in fwd:
                    fwd[p2] = q2
                    bwd[q2] = p2
                    queue.append(p2)
    return fwd


def lift_refinement_to_mixts(R, T1: Tsr, T2: Tsr) -> frozenset:
    """Carry a TSR refinement over to ``rm(T1)``, ``rm(T2)``.

    Original state ids are unchanged by ``rm``; each related pair
    additionally relates its fresh sinks for the same action.
    """
    if not is_refinement(R, T1, T2):
        raise NotARefinement("relation is not a refinement between the given TSRs")
    _, sinks1 = _rm_with_sinks(T1)
    _, sinks2 = _rm_with_sinks(T2)
    lifted = set(R)
    for s1, s2 in R:
        for (src, act), k1 in sinks1.items():
            if src == s1 and (s2, act) in sinks2:
                lifted.add((k1, sinks2[(s2, act)]))
    return frozenset(lifted)


def transfer_refinement_to_tsr(R, M1: MixTs, M2: MixTs) -> frozenset:
    """Carry a MixTs refinement over to ``mr(M1)``, ``mr(M2)``.

    Pairs touching a state that ``mr`` drops are discarded; the rest are
    renumbered into the TSR ids. Raises NotARefinement if either side of
    the transfer fails its checker.
    """
    if not is_mixts_refinement(R, M1, M2):
        raise NotARefinement("relation is not a refinement between the given mixed systems")
    T1, idx1 = _mr_with_index(M1)
    T2, idx2 = _mr_with_index(M2)
    moved = frozenset((idx1[p], idx2[q]) for p, q in R if p in idx1 and q in idx2)
    if not is_refinement(moved, T1, T2):
        raise NotARefinement("relation does not transfer to the response view")
    return moved
