import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsrkit import (ActionTable, DuplicateName, DuplicateTransition, MissingInitial,
                    UndeclaredName, UnknownAction, build_mixts, build_tsr, is_modal,
                    may_set, parse, reachable_states, validate_mixts, validate_tsr)
from tsrkit.core import may_set_scan
from tsrkit.testkit import random_mixts, random_tsr
from tsrkit.textio import dumps, to_doc


def names(T, ids):
    return {T.actions.name(a) for a in ids}


def test_action_table_ids_follow_declaration_order():
    t = ActionTable(("x", "y", "z"))
    assert [t.id(n) for n in "xyz"] == [0, 1, 2]
    assert t.name(2) == "z"
    with pytest.raises(UnknownAction):
        t.id("w")
    with pytest.raises(DuplicateName):
        ActionTable(("x", "x"))


def test_action_table_union_keeps_left_ids():
    left, right = ActionTable(("a", "b")), ActionTable(("c", "a"))
    merged, remap = left.union(right)
    assert merged.names == ("a", "b", "c")
    assert remap == [2, 0]


def test_medication_fixture_shape(T_a):
    assert len(T_a.states) == 5
    assert names(T_a, T_a.responses[T_a.state_id("s1")]) == {"give"}


def test_minimal_system_is_valid():
    T = validate_tsr(parse("kind tsr\nsystem x\nstates s0\ninitial s0\n"))
    assert T.states == ("s0",) and T.responses == (frozenset(),) and not T.delta


def test_duplicate_transition_rejected():
    doc = parse("kind tsr\nsystem x\nactions a\nstates s0 s1 s2\ninitial s0\n"
                "trans s0 a s1\ntrans s0 a s2\n")
    with pytest.raises(DuplicateTransition) as e:
        validate_tsr(doc)
    assert e.value.state == "s0" and e.value.action == "a"
    assert e.value.span == (7, 1)


def test_repeated_identical_transition_is_one_edge():
    T = build_tsr("x", ["s0", "s1"], "s0", {}, [("s0", "a", "s1"), ("s0", "a", "s1")])
    assert len(T.delta) == 1


@pytest.mark.parametrize("text, exc", [
    ("states s0\n", MissingInitial),
    ("states s0\ninitial s9\n", UndeclaredName),
    ("actions a\nstates s0\ninitial s0\ntrans s0 a s1\n", UndeclaredName),
    ("actions a\nstates s0\ninitial s0\ntrans s0 b s0\n", UndeclaredName),
    ("actions a\nstates s0\ninitial s0\nresponses s0 : b\n", UndeclaredName),
    ("actions a\nstates s0\ninitial s0\nresponses s1 : a\n", UndeclaredName),
    ("states s0 s0\ninitial s0\n", DuplicateName),
])
def test_validation_errors(text, exc):
    with pytest.raises(exc):
        validate_tsr(parse("kind tsr\nsystem x\n" + text))


def test_mixts_fixture_is_valid(M_med):
    assert len(M_med.states) == 6
    must_only = [(M_med.states[s], M_med.actions.name(a), M_med.states[t])
                 for (s, a), t in M_med.must.items() if (s, a) not in M_med.may]
    assert must_only == [("s1", "give", "s5")]


def test_mixts_with_empty_must_is_valid():
    M = build_mixts("lts", ["s0", "s1"], "s0", may=[("s0", "a", "s1")])
    assert not M.must and len(M.may) == 1


def test_mixts_duplicate_must_rejected():
    doc = parse("kind mixts\nsystem x\nactions a\nstates s t1 t2\ninitial s\n"
                "must s a t1\nmust s a t2\n")
    with pytest.raises(DuplicateTransition) as e:
        validate_mixts(doc)
    assert e.value.relation == "must"


def test_may_and_must_are_independent_maps():
    M = build_mixts("x", ["s", "t", "u"], "s", may=[("s", "a", "t")], must=[("s", "a", "u")])
    assert M.may[(0, 0)] == 1 and M.must[(0, 0)] == 2


def test_may_set_examples(T_a, T_b):
    assert names(T_b, may_set(T_b, T_b.state_id("s1"))) == {"sign"}
    assert names(T_a, may_set(T_a, T_a.state_id("s3"))) == {"prescribe", "sign", "cancel"}
    assert may_set(T_a, T_a.state_id("s4")) == frozenset()


def test_is_modal_examples(T_a, CE_left):
    # s1 requires give but cannot take it
    assert not is_modal(T_a)
    assert is_modal(build_tsr("x", ["s0", "s1"], "s0", {}, [("s0", "a", "s1")]))
    assert is_modal(CE_left)


def test_reachable_states(T_a, T_c):
    assert reachable_states(T_c) == {0, 1}
    assert reachable_states(T_a) == set(range(5))
    assert reachable_states(build_tsr("x", ["s0"], "s0")) == {0}


def test_reachable_states_mixts_follows_must():
    M = build_mixts("x", ["s0", "s1", "s2"], "s0", may=[], must=[("s0", "a", "s2")])
    assert reachable_states(M) == {0, 2}


def test_unreachable_states_are_kept():
    T = build_tsr("x", ["s0", "orphan"], "s0")
    assert T.states == ("s0", "orphan") and reachable_states(T) == {0}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(0, 4))
def test_may_set_index_agrees_with_scan(seed, n, k):
    T = random_tsr(seed, n, k, density=0.6)
    for s in range(n):
        assert may_set(T, s) == may_set_scan(T, s)
        assert may_set(T, s) <= set(range(k))
        assert all(len([t for (q, b), t in T.delta.items() if (q, b) == (s, a)]) <= 1
                   for a in range(k))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(0, 4))
def test_validate_serialize_validate_is_identity(seed, n, k):
    T = random_tsr(seed, n, k)
    assert validate_tsr(parse(dumps(T))) == T
    M = random_mixts(seed, n, k)
    assert validate_mixts(parse(dumps(M))) == M
    assert validate_tsr(to_doc(T)) == T
