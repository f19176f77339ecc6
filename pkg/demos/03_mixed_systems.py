"""
Responses as must transitions
=============================

Every TSR corresponds to an action-deterministic mixed transition system.
Responses become must edges; a response with no matching transition gets a
fresh sink as must target.
"""

from tsrkit import (canonicalize, check_mixts_refinement, check_refinement, dumps, iso_check,
                    lift_refinement_to_mixts, load_fixture, mr, rm, transfer_refinement_to_tsr)

T_a, T_b = load_fixture("T_a"), load_fixture("T_b")
M = rm(T_a)
print(dumps(M))

# %%
# The shipped mixed fixture names the sink ``s5``; it is the same system up
# to that name, and converting back gives the original TSR.
M_med = load_fixture("M_med")
print("isomorphic:", iso_check(M, M_med) is not None)
T = mr(M_med)
print("mr(M_med) matches T_a:", (T.states, T.responses, T.delta) ==
      (T_a.states, T_a.responses, T_a.delta))

# %%
# ``canonicalize`` moves must targets to where ``rm`` would put them, so
# ``rm(mr(M))`` and ``canonicalize(M)`` always agree on their reachable parts.
print(canonicalize(M_med) == M_med)

# %%
# Refinements move between the two views.
R = check_refinement(T_a, T_b).relation
lifted = lift_refinement_to_mixts(R, T_a, T_b)
print("lifted pairs:", sorted((M.states[p], rm(T_b).states[q]) for p, q in lifted))
mix = check_mixts_refinement(rm(T_a), rm(T_b))
print("back in the response view:", sorted(transfer_refinement_to_tsr(mix.relation, rm(T_a), rm(T_b))))
