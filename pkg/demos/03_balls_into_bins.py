"""The balls-into-bins stand-ins for load growth.

Process 1 removes the three heaviest buckets each round, Process 2 only at
the end of each halving epoch. The coupled run checks the pointwise ordering
of surviving loads on shared randomness.
"""

import numpy as np

from cyclebasis.ballsbins import coupled_p1_p1a_p2, process1, process2, max_load_floor

M = 3 * 2 ** 12
p1 = [process1(M, seed=s).max_load for s in range(10)]
p2 = [process2(M, seed=s).max_load for s in range(10)]
print(f"M={M}: process 1 final max loads {p1}")
print(f"M={M}: process 2 final max loads {p2}")
print(f"guaranteed floor for c=0.1: {max_load_floor(0.1, M):.3f}")

res = process2(M, seed=0)
print("epoch     m   k  bad  mean increment (k/6)")
for e in res.epochs:
    print(f"{e.epoch:>5} {e.m:>5} {e.k:>3} {e.bad:>4}  {e.mean_increment:.3f} ({e.k / 6:.3f})")

r = coupled_p1_p1a_p2(48, 12, seed=3)
print("coupled surviving loads (P1, P1a, P2):")
print(np.vstack([r.p1, r.p1a, r.p2]))
