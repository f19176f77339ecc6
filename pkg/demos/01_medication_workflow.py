"""
Refining a medication workflow
==============================

Three versions of a small hospital workflow ship with the package. ``T_a``
lets a doctor prescribe repeatedly before signing or cancelling, ``T_b``
tightens it, and ``T_c`` cuts it down to a single prescription that then
waits forever for a nurse.
"""

from tsrkit import (check_refinement, check_safe_refinement, deadlock_states, export_dot,
                    load_fixture)

T_a, T_b, T_c = (load_fixture(n) for n in ("T_a", "T_b", "T_c"))
for T in (T_a, T_b, T_c):
    print(T)

# %%
# ``T_b`` refines ``T_a``: the identity on states is a witness, and the
# refinement is safe because it introduces no deadlock.
rep = check_refinement(T_a, T_b)
print("T_b refines T_a:", rep.holds)
print("witness:", sorted((T_a.states[p], T_b.states[q]) for p, q in rep.relation))
print("safe:", check_safe_refinement(T_a, T_b).holds)

# %%
# ``T_c`` also refines ``T_a``, but not safely: after ``prescribe`` the
# state ``s1`` still requires ``give`` and has nowhere to go.
print("T_c refines T_a:", check_refinement(T_a, T_c).holds)
unsafe = check_safe_refinement(T_a, T_c)
ce = unsafe.counterexample
print(f"safe: {unsafe.holds}; {ce.violation} after {unsafe.trace_names()} "
      f"at ({T_a.states[ce.pair[0]]}, {T_c.states[ce.pair[1]]})")
print("deadlocks in T_c:", deadlock_states(T_c).names(T_c))

# %%
# Neither of ``T_b`` and ``T_c`` refines the other.
for left, right in ((T_b, T_c), (T_c, T_b)):
    r = check_refinement(left, right)
    print(f"{right.name} refines {left.name}: {r.holds} "
          f"({r.counterexample.violation} after {r.trace_names()})")

# %%
# DOT output can be piped to ``dot -Tsvg``.
print(export_dot(T_b))
