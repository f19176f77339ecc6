"""Seeded random systems and refinement-preserving mutations.

Every generator is a pure function of its seed and parameters, so a failing
property can be replayed from the printed seed.
"""
from __future__ import annotations

import random

from .core import ActionTable, MixTs, Tsr, reachable_states


def _names(prefix, n):
    return tuple(f"{prefix}{i}" for i in range(n))


def random_tsr(seed, nstates, nactions, density=0.5, response_rate=0.2, *,
               modal=False, name=None) -> Tsr:
    """Random TSR.

    Each ``(state, action)`` gets a uniformly chosen successor with
    probability ``density``; each action joins a state's responses with
    probability ``response_rate`` (only enabled actions when ``modal``).
    """
    if nstates < 1:
        raise ValueError("nstates must be at least 1")
    rng = random.Random(seed)
    delta = {}
    for s in range(nstates):
        for a in range(nactions):
            if rng.random() < density:
                delta[(s, a)] = rng.randrange(nstates)
    responses = []
    for s in range(nstates):
        r = set()
        for a in range(nactions):
            if rng.random() < response_rate and (not modal or (s, a) in delta):
                r.add(a)
        responses.append(frozenset(r))
    return Tsr(name or f"rand{seed}", ActionTable(_names("a", nactions)),
               _names("s", nstates), 0, tuple(responses), delta)


def random_modal_tsr(seed, nstates, nactions, density=0.5, response_rate=0.2, *,
                     name=None) -> Tsr:
    return random_tsr(seed, nstates, nactions, density, response_rate, modal=True, name=name)


def apply_refinement_edits(T: Tsr, deletions=(), additions=(), name=None) -> Tsr:
    """Delete transitions and grow response sets, by name.

    ``deletions`` holds ``(state, action)`` pairs; ``additions`` holds
    ``(state, action)`` responses to add. Deleting a transition whose action
    is a response of its source would break the refinement and is refused.
    """
    delta = dict(T.delta)
    responses = [set(r) for r in T.responses]
    for st, act in deletions:
        s, a = T.state_id(st), T.actions.id(act)
        if a in T.responses[s]:
            raise ValueError(f"transition {st} -{act}-> is required and cannot be deleted")
        if (s, a) not in delta:
            raise ValueError(f"no transition {st} -{act}->")
        del delta[(s, a)]
    for st, act in additions:
        responses[T.state_id(st)].add(T.actions.id(act))
    return Tsr(name or T.name, T.actions, T.states, T.initial,
               tuple(frozenset(r) for r in responses), delta)


def mutate_to_refinement(T: Tsr, seed, delete_rate=0.3, grow_rate=0.1, name=None) -> Tsr:
    """A TSR that refines ``T`` via the identity relation.

    Only transitions on non-response actions are deleted, responses only
    grow and nothing is added, so the identity relation stays a refinement.
    """
    rng = random.Random(seed)
    dels, adds = [], []
    for (s, a) in sorted(T.delta):
        if a not in T.responses[s] and rng.random() < delete_rate:
            dels.append((T.states[s], T.actions.name(a)))
    for s in range(len(T.states)):
        for a in range(len(T.actions)):
            if a not in T.responses[s] and rng.random() < grow_rate:
                adds.append((T.states[s], T.actions.name(a)))
    return apply_refinement_edits(T, dels, adds, name=name or f"{T.name}_ref{seed}")


def mutate_to_unsafe_refinement(T: Tsr, seed, name=None):
    """A refinement of ``T`` with a reachable deadlock that ``T`` lacks.

    Picks a reachable, non-deadlocked state whose transitions are all
    deletable, removes them and makes sure it has a pending response.
    Returns None when ``T`` has no such state.
    """
    rng = random.Random(seed)
    cands = [s for s in sorted(reachable_states(T))
             if T.succ[s] and not (T.responses[s] & T.succ[s].keys())
             and len(T.actions) > 0]
    if not cands:
        return None
    s = rng.choice(cands)
    st = T.states[s]
    dels = [(st, T.actions.name(a)) for a in T.succ[s]]
    adds = [] if T.responses[s] else [(st, T.actions.name(rng.randrange(len(T.actions))))]
    return apply_refinement_edits(T, dels, adds, name=name or f"{T.name}_unsafe{seed}")


def random_mixts(seed, nstates, nactions, may_density=0.4, must_density=0.2, *,
                 name=None) -> MixTs:
    """Random mixed system with no structural link between may and must."""
    if nstates < 1:
        raise ValueError("nstates must be at least 1")
    rng = random.Random(seed)
    may, must = {}, {}
    for s in range(nstates):
        for a in range(nactions):
            if rng.random() < may_density:
                may[(s, a)] = rng.randrange(nstates)
            if rng.random() < must_density:
                must[(s, a)] = rng.randrange(nstates)
    return MixTs(name or f"mix{seed}", ActionTable(_names("a", nactions)),
                 _names("m", nstates), 0, may, must)


def mutate_mixts_to_refinement(M: MixTs, seed, delete_rate=0.3, grow_rate=0.1,
                               name=None) -> MixTs:
    """A mixed system refining ``M`` via the identity on ``M``'s states.

    May edges without a must edge on the same action may be deleted; new
    must edges may be added, onto the may target when there is one and onto
    a fresh sink otherwise. Nothing else changes.
    """
    rng = random.Random(seed)
    states = list(M.states)
    may = dict(M.may)
    must = dict(M.must)
    for key in sorted(M.may):
        if key not in M.must and rng.random() < delete_rate:
            del may[key]
    for s in range(len(M.states)):
        for a in range(len(M.actions)):
            if (s, a) not in must and rng.random() < grow_rate:
                if (s, a) in may:
                    must[(s, a)] = may[(s, a)]
                else:
                    must[(s, a)] = len(states)
                    states.append(f"{M.states[s]}__new_{M.actions.name(a)}_{len(states)}")
    return MixTs(name or f"{M.name}_ref{seed}", M.actions, tuple(states), M.initial, may, must)
