"""
Random systems and refinement properties
========================================

The generators in ``tsrkit.testkit`` are deterministic in their seed, which
makes sweeps like these replayable.
"""

import time

from tsrkit import (check_refinement, check_safe_refinement, greatest_refinement_relation,
                    includes, is_deadlock_free)
from tsrkit.testkit import mutate_to_refinement, mutate_to_unsafe_refinement, random_tsr

agree = incl = 0
for seed in range(200):
    T1 = random_tsr(seed, 6, 3, density=0.6, response_rate=0.25)
    T2 = mutate_to_refinement(T1, seed) if seed % 2 else random_tsr(seed + 1, 6, 3)
    rep = check_refinement(T1, T2)
    agree += rep.holds == ((T1.initial, T2.initial) in greatest_refinement_relation(T1, T2))
    incl += (not rep.holds) or includes(T1, T2).holds
print(f"rooted check agrees with fixpoint: {agree}/200, refinement implies inclusion: {incl}/200")

# %%
# Removing every transition out of a state that still owes a response turns
# a refinement into an unsafe one.
T = random_tsr(11, 8, 3, density=0.6, response_rate=0.2)
U = mutate_to_unsafe_refinement(T, 3)
print("deadlock free:", is_deadlock_free(T), "->", is_deadlock_free(U))
print("refines:", check_refinement(T, U).holds, "safe:", check_safe_refinement(T, U).holds,
      check_safe_refinement(T, U).counterexample.violation)

# %%
# The check walks only pairs forced from the initial pair.
big = random_tsr(1, 1000, 8, density=0.6, response_rate=0.1)
ref = mutate_to_refinement(big, 2)
t0 = time.perf_counter()
rep = check_refinement(big, ref)
print(f"1000 states: holds={rep.holds}, {len(rep.relation)} pairs, "
      f"{time.perf_counter() - t0:.3f}s")
