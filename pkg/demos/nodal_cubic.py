"""
Nine points on a nodal cubic: roots, restriction to the cubic, and polyhedrality mod p.

Run with ``python3 demos/nodal_cubic.py``.
"""

from fractions import Fraction

from ellpairs import arith

# Points t1, t2, t3 of the smooth locus are collinear exactly when t1 t2 t3 = 1.
print(arith.collinear_iff_product_one(2, 3, Fraction(1, 6)), arith.collinear_iff_product_one(2, 3, 5))

census = arith.root_census()
print("roots:", census.total, " kernel:", census.kernel, " images:", census.images)
print(f"restriction of C: a^{census.res_c.alpha} q^{census.res_c.beta}")

for p in (7, 13, 2):
    print(f"p = {p}:", arith.polyhedrality_test(2, 3, p))

rep = arith.density_scan(2, 3, 200_000, [2, 3], jobs=2)
print(f"polyhedral density {float(rep.density):.4f}, S(2,3) density {float(rep.membership_density):.4f}")
print("order filters:", [(f.l, round(float(f.density), 4)) for f in rep.per_l])
print("Stephens constant", round(arith.stephens_constant(), 5))

for q, r in arith.heath_brown_triple(7, 100_000).items():
    print(f"a = 7, q = {q}: polyhedral {float(r.density):.4f}")
