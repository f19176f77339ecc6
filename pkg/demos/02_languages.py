"""
Finite-trace languages
======================

A run is accepted when it ends in a state with no pending responses.
"""

from tsrkit import (accepts, check_refinement, enumerate_words, equivalent, includes, is_empty,
                    load_fixture)

T_a, T_b = load_fixture("T_a"), load_fixture("T_b")

# %%
# All accepted words of the refined workflow up to length 7.
for w in enumerate_words(T_b, 7):
    print(" ".join(T_b.trace_names(w)) or "<empty word>")

print(accepts(T_b, ["prescribe", "sign", "give"]), accepts(T_b, ["prescribe", "sign"]))

# %%
# Refinement implies inclusion of the concrete language in the abstract one.
print("L(T_b) within L(T_a):", includes(T_a, T_b).holds)
v = equivalent(T_a, T_b)
print("equivalent:", v.holds, "witness:", v.word_names())

# %%
# The converse fails. Each of these one-state systems loops on an action it
# requires, so neither accepts anything, yet neither refines the other.
left, right = load_fixture("CE_left"), load_fixture("CE_right")
print("empty:", is_empty(left).holds, is_empty(right).holds)
print("inclusion both ways:", includes(left, right).holds, includes(right, left).holds)
print("refinement:", check_refinement(left, right).holds, check_refinement(right, left).holds)
