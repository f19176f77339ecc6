from __future__ import annotations

from .core import ActionTable, TsrError


class AlphabetMismatch(TsrError, ValueError):
    pass


def align_actions(t1: ActionTable, t2: ActionTable, strict: bool = False):
    """Union two action tables by name.

    Returns ``(table, remap2)``; ids of ``t1`` are kept, ``remap2[a]`` is the
    merged id of ``t2``'s action ``a``.
    """
    if strict and set(t1.names) != set(t2.names):
        only1 = sorted(set(t1.names) - set(t2.names))
        only2 = sorted(set(t2.names) - set(t1.names))
        raise AlphabetMismatch(f"alphabets differ: only left {only1}, only right {only2}")
    return t1.union(t2)


def remap_succ(succ, remap):
    return [{remap[a]: t for a, t in d.items()} for d in succ]


def remap_sets(sets, remap):
    return [frozenset(remap[a] for a in r) for r in sets]
