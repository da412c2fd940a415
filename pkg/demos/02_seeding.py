"""
Choosing seeds
==============

Four unit vectors in the plane at 0, 10, 90 and 100 degrees.  Starting from
the 0-degree document, the second seed is the farthest one (100 degrees).  A
third seed is picked from the ``r`` documents with the largest summed distance
to the current seeds, taking the one with the smallest summed squared
distance.
"""

# %%
import math

from textclust import SparseVector, assign_to_seeds, select_seeds


def at(deg):
    t = math.radians(deg)
    return SparseVector.from_pairs([(0, math.cos(t)), (1, math.sin(t))], 2)


docs = [at(0), at(10), at(90), at(100)]

seeds, trace = select_seeds(docs, k=2, r=1, first=0)
print("k=2 seeds:", seeds.seeds)

# %%
seeds, trace = select_seeds(docs, k=3, r=2, first=0)
print("k=3 seeds:", seeds.seeds)
for step in trace.steps:
    print("  candidates", step.candidates, "dist sums", [round(x, 4) for x in step.dist_sums],
          "squared sums", [round(x, 4) for x in step.sq_dist_sums], "->", step.chosen)

# %%
# Nearest-seed assignment gives the initial clusters.
sol = assign_to_seeds(docs, select_seeds(docs, 2, 1, first=0)[0])
print("assignment:", sol.assignment.tolist(), "T =", round(sol.cached_t, 6))
