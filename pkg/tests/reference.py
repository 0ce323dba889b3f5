"""Reference data shared by several test modules."""

# a member of the Delta1 pencil, in Magma's x[1], x[2] notation
REF_CURVE = (
    "9/4*x[1]^5*x[2]^8 - 8*x[1]^4*x[2]^6 + 15/2*x[1]^3*x[2]^4 + 2*x[1]^3*x[2]^3 + 2*x[1]^2*x[2]^3"
    " - 6*x[1]^2*x[2] + x[1]^2 - 6*x[1]*x[2] + 17/4*x[1] + 1"
)

# adjoint factor pairs (g, h) for Delta1, Delta2, Delta3
REF_ADJOINT_FACTORS = [
    ("x*y^2 - 1", "x^2*y^3 - 3*x*y + x + 1"),
    ("x*y^2 - 1", "x^2*y^3 - 3*x*y + x + 1"),
    ("x[1]*x[2]^3 - 1", "x^3*y^7 - 2*x^2*y^5 - x^2*y^4 + 5*x*y^2 - 3*x*y + x - 1"),
]

# resolved fan of Delta1: ray list and self-intersections, in the printed order
REF_RAYS = [(0, 1), (-1, 1), (-2, 1), (-5, 2), (-8, 3), (-3, 1), (-1, 0), (1, -1), (3, -2), (8, -5), (5, -3), (2, -1), (1, 0)]
REF_DIAG = [-1, -2, -3, -2, -1, -3, -2, -2, -3, -1, -2, -3, -2]

# rows for C, g and h: divisor coefficients in the printed ray order, then -mult
REF_ADJSYS = [
    [8, 5, 2, 1, 0, 0, 0, 0, 0, 0, 1, 2, 5, -4],
    [2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1],
    [3, 2, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 2, -2],
]


def ref_imat():
    """Intersection matrix of the reference fan, with E appended last."""
    n = len(REF_RAYS)
    mat = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        mat[i][i] = REF_DIAG[i]
        mat[i][(i + 1) % n] = mat[(i + 1) % n][i] = 1
    mat[n][n] = -1
    return mat


def cyclic_rotation(seq, target):
    n = len(seq)
    return next((k for k in range(n) if list(seq[k:]) + list(seq[:k]) == list(target)), None)
