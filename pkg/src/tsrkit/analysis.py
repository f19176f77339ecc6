"""Deadlock, acceptance and modality analyses on a single TSR."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Tsr, is_modal, reachable_states


@dataclass(frozen=True)
class DeadlockReport:
    deadlocked: frozenset
    reachable_deadlocked: frozenset
    deadlock_free: bool

    def names(self, T: Tsr) -> dict:
        return {
            "deadlocked": sorted(T.states[s] for s in self.deadlocked),
            "reachable_deadlocked": sorted(T.states[s] for s in self.reachable_deadlocked),
            "deadlock_free": self.deadlock_free,
        }


def is_deadlocked(T: Tsr, s: int) -> bool:
    """Obligations pending and no move possible."""
    return bool(T.responses[s]) and not T.succ[s]


def deadlock_states(T: Tsr) -> DeadlockReport:
    dead = frozenset(s for s in range(len(T.states)) if is_deadlocked(T, s))
    reach = dead & reachable_states(T)
    return DeadlockReport(dead, reach, not reach)


def is_deadlock_free(T: Tsr) -> bool:
    return deadlock_states(T).deadlock_free


def accepting_states(T: Tsr) -> frozenset:
    return frozenset(s for s, r in enumerate(T.responses) if not r)


def check_modal_deadlock_lemma(T: Tsr) -> bool:
    """Modal implies deadlock free. Vacuously true for non-modal systems."""
    return not is_modal(T) or is_deadlock_free(T)
