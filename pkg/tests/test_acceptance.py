"""Acceptance criteria. Each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import time

import pytest

from tsrkit import (NotARefinement, Violation, canonicalize, check_mixts_refinement, check_refinement,
                    check_safe_refinement, deadlock_states, enumerate_words,
                    greatest_refinement_relation, includes, is_deadlock_free, is_mixts_refinement,
                    is_refinement, iso_check, lift_refinement_to_mixts, mr, rm,
                    transfer_refinement_to_tsr)
from tsrkit.testkit import (mutate_mixts_to_refinement, mutate_to_refinement,
                            mutate_to_unsafe_refinement, random_mixts, random_modal_tsr,
                            random_tsr)

from .oracles import regex_expansion


def report(capsys, num, text, ok, detail=""):
    with capsys.disabled():
        print(f"\n[AC{num:02d}] {'PASS' if ok else 'FAIL'}  {text}" + (f"  ({detail})" if detail else ""))
    assert ok, f"criterion {num} failed: {text} {detail}"


def params(seed, max_states=8, max_actions=3):
    """Vary size and shape with the seed."""
    return dict(nstates=1 + seed % max_states, nactions=1 + (seed // 7) % max_actions,
                density=(0.3, 0.5, 0.7, 0.9)[seed % 4],
                response_rate=(0.1, 0.25, 0.4)[seed % 3])


def sid(T, name):
    return T.state_id(name)


def test_ac01_medication_facts(capsys, T_a, T_b, T_c):
    ab = check_refinement(T_a, T_b)
    ab_safe = check_safe_refinement(T_a, T_b)
    identity = frozenset((s, s) for s in range(5))
    ac = check_refinement(T_a, T_c)
    ac_safe = check_safe_refinement(T_a, T_c)
    s1 = (sid(T_a, "s1"), sid(T_c, "s1"))
    checks = {
        "a->b identity": ab.holds and ab.relation == identity,
        "a->b safe": ab_safe.holds,
        "a->c holds": ac.holds,
        "a->c unsafe at (s1,s1)": (not ac_safe.holds
                                   and ac_safe.counterexample.pair == s1
                                   and ac_safe.counterexample.violation
                                   is Violation.DEADLOCK_NOT_REFLECTED),
        "b/c unrelated": not check_refinement(T_b, T_c).holds
                         and not check_refinement(T_c, T_b).holds,
        "deadlocks(c)={s1}": deadlock_states(T_c).deadlocked == {sid(T_c, "s1")},
    }
    bad = [k for k, v in checks.items() if not v]
    report(capsys, 1, "medication workflow refinement facts", not bad, ", ".join(bad))


def test_ac02_language_of_refined_workflow(capsys, T_b):
    words = [tuple(T_b.trace_names(w)) for w in enumerate_words(T_b, 7)]
    expected = regex_expansion(7)
    report(capsys, 2, "enumerate(T_b, 7) equals the regex expansion",
           words == expected and len(words) == 5, f"{len(words)} words")


def test_ac03_roundtrip_laws(capsys):
    fails_a = [seed for seed in range(500)
               if mr(rm(random_tsr(seed, **params(seed, 12, 4)))) != random_tsr(seed, **params(seed, 12, 4))]
    fails_b = []
    for seed in range(500):
        M = random_mixts(seed, 1 + seed % 12, 1 + (seed // 12) % 4,
                         may_density=(0.2, 0.4, 0.6)[seed % 3],
                         must_density=(0.1, 0.3, 0.5)[seed % 3])
        if iso_check(rm(mr(M)), canonicalize(M)) is None:
            fails_b.append(seed)
    report(capsys, 3, "mr(rm(T)) = T and rm(mr(M)) ~ canonicalize(M), 500 each",
           not fails_a and not fails_b, f"failing seeds {fails_a[:5]} {fails_b[:5]}")


def test_ac04_modal_lemma(capsys):
    fails = [seed for seed in range(1000)
             if not is_deadlock_free(random_modal_tsr(seed, **params(seed, 10, 4)))]
    report(capsys, 4, "1000 random modal TSRs are deadlock free", not fails,
           f"failing seeds {fails[:5]}")


def test_ac05_refinement_implies_inclusion(capsys):
    fails, disagree = [], []
    for seed in range(500):
        T = random_tsr(seed, **params(seed))
        T2 = mutate_to_refinement(T, seed, delete_rate=(0.2, 0.5, 0.8)[seed % 3])
        if not includes(T, T2):
            fails.append(seed)
        for big, small in ((T, T2), (T2, T)):
            v = includes(big, small)
            bounded = set(enumerate_words(small, 6)) <= set(enumerate_words(big, 6))
            if bounded != (v.holds or len(v.word) > 6):
                disagree.append(seed)
    report(capsys, 5, "500 refinement pairs satisfy inclusion; k=6 enumeration agrees",
           not fails and not disagree, f"fails {fails[:5]} disagree {disagree[:5]}")


def test_ac06_converse_counterexample(capsys, CE_left, CE_right):
    checks = {
        "included both ways": includes(CE_left, CE_right).holds and includes(CE_right, CE_left).holds,
        "both empty": not enumerate_words(CE_left, 10) and not enumerate_words(CE_right, 10),
        "deadlock free": is_deadlock_free(CE_left) and is_deadlock_free(CE_right),
        "no refinement either way": not check_refinement(CE_left, CE_right).holds
                                    and not check_refinement(CE_right, CE_left).holds,
    }
    bad = [k for k, v in checks.items() if not v]
    report(capsys, 6, "inclusion without refinement on the empty-language pair", not bad,
           ", ".join(bad))


def test_ac07_oracle_equivalence(capsys):
    fails = []
    holds = 0
    for seed in range(500):
        T1 = random_tsr(seed, **params(seed))
        if seed % 2:
            T2 = mutate_to_refinement(T1, seed)
        else:
            T2 = random_tsr(seed + 10_000, **params(seed + 3))
        for safe in (False, True):
            rep = check_refinement(T1, T2, safe=safe)
            gfp = greatest_refinement_relation(T1, T2, safe=safe)
            holds += rep.holds
            if rep.holds != ((T1.initial, T2.initial) in gfp):
                fails.append((seed, safe))
    report(capsys, 7, "rooted check equals greatest-fixpoint membership, 500 pairs x 2 modes",
           not fails, f"{holds} holding verdicts; fails {fails[:5]}")


def test_ac08_functor_laws(capsys):
    lift_fails, transfer_fails = [], []
    for seed in range(200):
        T1 = random_tsr(seed, **params(seed))
        T2 = mutate_to_refinement(T1, seed)
        R = check_refinement(T1, T2).relation
        lifted = lift_refinement_to_mixts(R, T1, T2)
        M1, M2 = rm(T1), rm(T2)
        if not (check_mixts_refinement(M1, M2).holds and is_mixts_refinement(lifted, M1, M2)):
            lift_fails.append(seed)
    for seed in range(200):
        M1 = random_mixts(seed, 1 + seed % 8, 1 + (seed // 8) % 3)
        M2 = mutate_mixts_to_refinement(M1, seed)
        rep = check_mixts_refinement(M1, M2)
        try:
            moved = transfer_refinement_to_tsr(rep.relation, M1, M2)
            if not (check_refinement(mr(M1), mr(M2)).holds and is_refinement(moved, mr(M1), mr(M2))):
                transfer_fails.append(seed)
        except NotARefinement:
            transfer_fails.append(seed)
    report(capsys, 8, "lifted/transferred relations pass the other checker, 200 each",
           not lift_fails and not transfer_fails, f"{lift_fails[:5]} {transfer_fails[:5]}")


def test_ac09_safety_semantics(capsys):
    fails, checked, unsafe_hits = [], 0, 0
    for seed in range(500):
        T1 = random_tsr(seed, **params(seed))
        T2 = mutate_to_refinement(T1, seed, delete_rate=0.7, grow_rate=0.2)
        if is_deadlock_free(T1) and check_safe_refinement(T1, T2).holds:
            checked += 1
            if not is_deadlock_free(T2):
                fails.append(seed)
        T3 = mutate_to_unsafe_refinement(T1, seed)
        if T3 is not None:
            rep = check_safe_refinement(T1, T3)
            if not rep.holds and rep.counterexample.violation is Violation.DEADLOCK_NOT_REFLECTED:
                unsafe_hits += 1
    report(capsys, 9, "safe refinement preserves deadlock freedom; unsafe pairs detected",
           not fails and checked > 0 and unsafe_hits > 0,
           f"{checked} safe pairs, {unsafe_hits} unsafe detections, fails {fails[:5]}")


def test_ac10_scale(capsys):
    T1 = random_tsr(2024, 1000, 8, density=0.6, response_rate=0.1)
    T2 = random_tsr(2025, 1000, 8, density=0.6, response_rate=0.1)
    T3 = mutate_to_refinement(T1, 7)
    t0 = time.perf_counter()
    r12 = check_refinement(T1, T2)
    r13 = check_refinement(T1, T3)
    r13s = check_safe_refinement(T1, T3)
    elapsed = time.perf_counter() - t0
    report(capsys, 10, "refinement on 1000-state, 8-action systems under 5 s",
           elapsed < 5.0 and r13.holds and len(r13.relation) > 100,
           f"{elapsed:.3f}s, random pair holds={r12.holds}, "
           f"mutated pair explored {len(r13.relation)} pairs, safe={r13s.holds}")
