"""
Classifying triangles with Vol = m^2, m boundary points and width >= m.

Run with ``python3 demos/classification.py``.
"""

from ellpairs import classify, lattice
from ellpairs.lattice import LatticeTriangle

# The three case solvers each cover one range of a/m.
print("case 1 (strict):", classify.solve_case1(strict=True))
for sol in classify.solve_case1(strict=False):
    print("case 1 (non-strict) survivor:", (sol.a, sol.c - 2 * sol.d, sol.c), "m =", sol.m)

print("case 2 intermediates (k, a, x, m):", [(c.k, c.a, c.x, c.m) for c in classify.solve_case2()])
print("case 3 triples:", classify.case3_triples())

# Most candidates die on the width or boundary conditions.
for abc in [(1, 5, 9), (2, 3, 8), (3, 5, 12), (3, 8, 12)]:
    rep = lattice.candidate_check(LatticeTriangle.from_abc(*abc))
    print(abc, "m =", rep.m, "volume =", rep.volume, "width =", rep.width, "passes" if rep.passes else "rejected")

# What survives, one representative per equivalence class.
print()
for ct in classify.classify_all():
    print(ct.to_json())

# A brute-force scan over a small box finds the same three classes.
prim, imprim = classify.brute_oracle(20, 120, jobs=2)
print("oracle:", [ct.key for ct in prim], "with", len(imprim), "imprimitive classes")
