"""
Pencils of curves on the three triangles and the elliptic fibrations they define.

Run with ``python3 demos/fibrations.py``.
"""

from ellpairs import linsys, toric
from ellpairs.lattice import LatticeTriangle

TRIANGLES = [(LatticeTriangle.from_abc(2, 5, 8), 4), (LatticeTriangle.from_abc(5, 12, 20), 10)]

for t, m in TRIANGLES:
    print(f"--- {t.format()}  m = {m}")
    system = linsys.linear_system(t, m)
    print("dim L(m) =", system.dimension, " arithmetic genus =", linsys.arithmetic_genus(t, m))

    # The subgroup curve g and the cofactor h span the adjoint system.
    g = linsys.subgroup_factor(t, m)
    h, e, k = linsys.adjoint_cofactor(t, m)
    print(f"adjoint generator = ({g})^{e} * ({h})^{k}")

    an = toric.fibration_for_triangle(t, m, h=h)
    print("rays:", an.surface.rays)
    print("self-intersections:", an.surface.self_intersections)
    print("Gram of C, g, h:", an.named_gram())
    print("contracted:", an.log)
    rep = an.report
    print("fibers:", rep.fibers, " Euler total:", rep.euler_total, " extremal:", rep.extremal, " label:", rep.surface_label)
