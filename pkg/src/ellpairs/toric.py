"""
Smooth toric surfaces from lattice polygons, blown up at the identity e.

The minimal resolution of P(polygon) is read off the inner-normal fan; curves
of the form {f = 0} get their divisor class from the support function of the
Newton polygon of f, and the proper transform subtracts mult * E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .lattice import LatticeTriangle
from .linsys import (
    LatticePolygon,
    LaurentPolynomial,
    adjoint_cofactor,
    convex_hull,
    linear_system,
    multiplicity_at_e,
    newton_polytope,
    subgroup_factor,
)

Ray = tuple[int, int]


def _det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angle_key(u: Ray) -> float:
    return math.atan2(u[1], u[0]) % (2 * math.pi)


def resolve_cone(u1: Ray, u2: Ray) -> list[Ray]:
    """Rays strictly between ``u1`` and ``u2`` (counterclockwise) in the minimal resolution.

    These are the lattice points on the compact boundary of the convex hull of
    the nonzero lattice points in the cone. That boundary lies inside the
    triangle (0, u1, u2) since the segment u1-u2 belongs to the hull.
    """
    d = _det(u1, u2)
    if d <= 0:
        raise ValueError(f"cone {u1}, {u2} is not strictly convex counterclockwise")
    if d == 1:
        return []
    xs = (0, u1[0], u2[0])
    ys = (0, u1[1], u2[1])
    pts = []
    for i in range(min(xs), max(xs) + 1):
        for j in range(min(ys), max(ys) + 1):
            p = (i, j)
            if p == (0, 0):
                continue
            # inside the closed triangle (0, u1, u2)
            if _det(u1, p) >= 0 and _det(p, u2) >= 0 and _det((u2[0] - u1[0], u2[1] - u1[1]), (i - u1[0], j - u1[1])) >= 0:
                pts.append(p)
    hull = convex_hull(pts)
    # hull is counterclockwise and its edge u1 -> u2 is the far side, so the
    # near chain runs clockwise from u1 to u2
    k = hull.index(u1)
    near = [hull[(k - s) % len(hull)] for s in range(len(hull))]
    near = near[: near.index(u2) + 1]
    out: list[Ray] = []
    for p, q in zip(near, near[1:]):
        g = gcd(abs(q[0] - p[0]), abs(q[1] - p[1]))
        step = ((q[0] - p[0]) // g, (q[1] - p[1]) // g)
        for s in range(1, g + 1):
            out.append((p[0] + s * step[0], p[1] + s * step[1]))
    out = out[:-1]
    if any(gcd(abs(r[0]), abs(r[1])) != 1 for r in out):
        raise AssertionError("non-primitive ray on the resolution boundary")
    return out


@dataclass(frozen=True)
class ResolvedSurface:
    rays: tuple[Ray, ...]
    self_intersections: tuple[int, ...]
    polygon: LatticePolygon = field(compare=False)
    has_exceptional: bool = True

    @property
    def n(self) -> int:
        return len(self.rays)

    def index_of(self, ray: Sequence[int]) -> int:
        return self.rays.index(tuple(ray))


def resolved_fan(t: LatticeTriangle | LatticePolygon) -> ResolvedSurface:
    """Inner-normal fan with every cone resolved, starting at the lexicographically smallest ray."""
    poly = LatticePolygon.from_triangle(t) if isinstance(t, LatticeTriangle) else t
    if poly.dimension < 2:
        raise ValueError("polygon must be two-dimensional")
    normals = sorted(set(poly.inner_normals()), key=_angle_key)
    rays: list[Ray] = []
    for k, u in enumerate(normals):
        rays.append(u)
        rays.extend(resolve_cone(u, normals[(k + 1) % len(normals)]))
    start = rays.index(min(rays))
    rays = rays[start:] + rays[:start]
    n = len(rays)
    selfint = []
    for i in range(n):
        prev, cur, nxt = rays[i - 1], rays[i], rays[(i + 1) % n]
        if abs(_det(cur, nxt)) != 1:
            raise AssertionError(f"cone {cur}, {nxt} is not smooth")
        w = (prev[0] + nxt[0], prev[1] + nxt[1])
        a = w[0] // cur[0] if cur[0] else w[1] // cur[1]
        if (w[0], w[1]) != (a * cur[0], a * cur[1]):
            raise AssertionError("smooth-fan relation failed")
        selfint.append(-a)
    return ResolvedSurface(tuple(rays), tuple(selfint), poly)


def intersection_matrix(s: ResolvedSurface) -> list[list[int]]:
    """Boundary divisors in ray order, then E."""
    n = s.n
    mat = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        mat[i][i] = s.self_intersections[i]
        j = (i + 1) % n
        mat[i][j] = mat[j][i] = 1
    mat[n][n] = -1
    return mat


@dataclass(frozen=True)
class CurveClass:
    """Class sum coeffs[i] * D_i - mult_e * E; ``toric_intersections`` is the boundary profile.

    ``mult_e`` is minus the coefficient of E, so E itself has ``mult_e = -1``.
    """

    name: str
    toric_intersections: tuple[int, ...]
    mult_e: int
    coeffs: tuple[int, ...] = field(default=(), compare=False)


def _profile(s: ResolvedSurface, coeffs: Sequence[int]) -> tuple[int, ...]:
    mat = intersection_matrix(s)
    return tuple(sum(mat[i][j] * coeffs[j] for j in range(s.n)) for i in range(s.n))


def divisor_class(s: ResolvedSurface, name: str, coeffs: Sequence[int], mult: int) -> CurveClass:
    if len(coeffs) != s.n:
        raise ValueError("coefficient vector does not match the ray count")
    return CurveClass(name, _profile(s, coeffs), mult, tuple(coeffs))


def curve_class(s: ResolvedSurface, f: LaurentPolynomial, mult: int | None = None, name: str = "C") -> CurveClass:
    """Proper transform of {f = 0}: coefficient -min<v, u_i> over Newt(f) on each ray, minus mult * E."""
    if not f:
        raise ValueError("zero polynomial")
    newt = newton_polytope(f)
    coeffs = [-newt.support_min(u) for u in s.rays]
    if mult is None:
        mult = int(multiplicity_at_e(f))
    return divisor_class(s, name, coeffs, mult)


def boundary_class(s: ResolvedSurface, i: int) -> CurveClass:
    coeffs = [0] * s.n
    coeffs[i] = 1
    return divisor_class(s, f"D{i}", coeffs, 0)


def exceptional_class(s: ResolvedSurface) -> CurveClass:
    return divisor_class(s, "E", [0] * s.n, -1)


def pair(s: ResolvedSurface, c1: CurveClass, c2: CurveClass) -> int:
    if len(c1.coeffs) != s.n or len(c2.coeffs) != s.n:
        raise ValueError("classes do not live on this surface")
    return sum(a * b for a, b in zip(c1.coeffs, c2.toric_intersections)) - c1.mult_e * c2.mult_e


@dataclass
class CurveConfiguration:
    names: list[str]
    gram: list[list[int]]

    def __post_init__(self):
        n = len(self.names)
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("gram matrix shape does not match names")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix is not symmetric")

    @classmethod
    def from_classes(cls, s: ResolvedSurface, classes: Sequence[CurveClass]) -> "CurveConfiguration":
        return cls([c.name for c in classes], [[pair(s, a, b) for b in classes] for a in classes])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def dot(self, a: str, b: str) -> int:
        return self.gram[self.index(a)][self.index(b)]

    def submatrix(self, names: Sequence[str]) -> list[list[int]]:
        idx = [self.index(n) for n in names]
        return [[self.gram[i][j] for j in idx] for i in idx]

    def reordered(self, names: Sequence[str]) -> "CurveConfiguration":
        return CurveConfiguration(list(names), self.submatrix(names))


def contract_to_minimal(
    cfg: CurveConfiguration, fiber_class: str
) -> tuple[CurveConfiguration, list[tuple[str, int]]]:
    """Blow down (-1)-curves orthogonal to the fiber, first in name order, until none remain.

    Returns the new configuration and a log of ``(name, self-intersection)`` pairs.
    """
    names = list(cfg.names)
    gram = [row[:] for row in cfg.gram]
    f = names.index(fiber_class)
    log: list[tuple[str, int]] = []
    while True:
        x = next(
            (i for i in range(len(names)) if i != f and gram[i][i] == -1 and gram[i][f] == 0),
            None,
        )
        if x is None:
            break
        log.append((names[x], gram[x][x]))
        col = [gram[i][x] for i in range(len(names))]
        keep = [i for i in range(len(names)) if i != x]
        gram = [[gram[i][j] + col[i] * col[j] for j in keep] for i in keep]
        names = [names[i] for i in keep]
        f = names.index(fiber_class)
    return CurveConfiguration(names, gram), log


# --- Kodaira fibers ---------------------------------------------------------

EULER = {"II*": 10, "III*": 9, "IV*": 8, "II": 2, "III": 3, "IV": 4}

# extremal rational elliptic surfaces (Miranda-Persson), fibers listed with I1 fillers
EXTREMAL_LABELS = {
    ("II", "II*"): "X22",
    ("I1", "I1", "II*"): "X211",
    ("I1", "I1", "I4*"): "X411",
    ("III", "III*"): "X33",
    ("I1", "I2", "III*"): "X321",
    ("IV", "IV*"): "X44",
    ("I1", "I3", "IV*"): "X431",
    ("I1", "I1*", "I4"): "X141",
    ("I2", "I2", "I2*"): "X222",
    ("I1", "I1", "I1", "I9"): "X9111",
    ("I1", "I1", "I2", "I8"): "X8211",
    ("I1", "I1", "I5", "I5"): "X5511",
    ("I1", "I2", "I3", "I6"): "X6321",
    ("I2", "I2", "I4", "I4"): "X4422",
    ("I3", "I3", "I3", "I3"): "X3333",
    ("I0*", "I0*"): "X11(j)",
}


def fiber_euler(symbol: str) -> int:
    if symbol in EULER:
        return EULER[symbol]
    if symbol.endswith("*"):
        return int(symbol[1:-1]) + 6
    return int(symbol[1:])


def _fiber_rank(symbol: str) -> int:
    """Number of components minus one."""
    if symbol in ("II*", "III*", "IV*"):
        return {"II*": 8, "III*": 7, "IV*": 6}[symbol]
    if symbol in ("II", "III", "IV"):
        return {"II": 0, "III": 1, "IV": 2}[symbol]
    if symbol.endswith("*"):
        return int(symbol[1:-1]) + 4
    return int(symbol[1:]) - 1


def dynkin_type(gram: Sequence[Sequence[int]]) -> tuple[str, int, bool]:
    """Classify a connected (-2)-configuration as ``(family, rank, affine)``.

    Finite A_n, D_n, E_6..8 and their affine extensions are recognized; anything
    else raises ValueError.
    """
    n = len(gram)
    if any(gram[i][i] != -2 for i in range(n)):
        raise ValueError("not a (-2)-configuration")
    adj = [[j for j in range(n) if j != i and gram[i][j]] for i in range(n)]
    if n == 2 and gram[0][1] == 2:
        return ("A", 1, True)
    if any(gram[i][j] not in (0, 1) for i in range(n) for j in range(n) if i != j):
        raise ValueError("component graph is not simply laced")
    edges = sum(len(a) for a in adj) // 2
    deg = [len(a) for a in adj]
    if n == 1:
        return ("A", 1, False)
    if edges == n and all(d == 2 for d in deg):
        return ("A", n - 1, True)
    if edges != n - 1:
        raise ValueError("component graph is not ADE")
    branch = [i for i in range(n) if deg[i] >= 3]
    if not branch:
        return ("A", n, False)
    if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
        return ("D", 4, True)
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        leaves = [i for i in range(n) if deg[i] == 1]
        if len(leaves) == 4 and all(any(nb in branch for nb in adj[leaf]) for leaf in leaves):
            return ("D", n - 1, True)
        raise ValueError("component graph is not ADE")
    if len(branch) != 1 or deg[branch[0]] != 3:
        raise ValueError("component graph is not ADE")
    b = branch[0]
    legs = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while deg[cur] == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur, length = cur, nxt, length + 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return ("D", n, False)
    finite = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}
    affine = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}
    if tuple(legs) in finite:
        return ("E", finite[tuple(legs)], False)
    if tuple(legs) in affine:
        return ("E", affine[tuple(legs)], True)
    raise ValueError(f"component graph with legs {legs} is not ADE")


def fiber_symbol(family: str, rank: int, affine: bool) -> str:
    """Kodaira symbol of the fiber containing a given root configuration.

    For a finite diagram the fiber has one more component than the diagram; an
    affine diagram is the whole fiber.
    """
    if family == "A":
        return f"I{rank + 1}"
    if family == "D":
        return f"I{rank - 4}*"
    return {6: "IV*", 7: "III*", 8: "II*"}[rank]


@dataclass(frozen=True)
class KodairaReport:
    fibers: tuple[str, ...]
    euler_total: int
    mw_rank: int
    extremal: bool
    surface_label: str
    components: tuple[tuple[str, ...], ...] = ()
    diagrams: tuple[str, ...] = ()


def _fiber_sort_key(sym: str) -> tuple[int, str]:
    return (-fiber_euler(sym), sym)


def kodaira_classify(cfg: CurveConfiguration, fiber_class: str) -> KodairaReport:
    f = cfg.index(fiber_class)
    nodes = [i for i in range(len(cfg.names)) if i != f and cfg.gram[i][i] == -2 and cfg.gram[i][f] == 0]
    seen: set[int] = set()
    comps: list[list[int]] = []
    for v in nodes:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            w = stack.pop()
            comp.append(w)
            for u in nodes:
                if u not in seen and cfg.gram[w][u]:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    fibers, diagrams, rank_sum = [], [], 0
    for comp in comps:
        fam, rank, affine = dynkin_type([[cfg.gram[i][j] for j in comp] for i in comp])
        diagrams.append(f"{fam}{rank}" + ("~" if affine else ""))
        fibers.append(fiber_symbol(fam, rank, affine))
        rank_sum += rank
    euler = sum(fiber_euler(s) for s in fibers)
    if euler > 12:
        raise ValueError(f"fiber Euler numbers sum to {euler} > 12")
    fibers += ["I1"] * (12 - euler)
    mw_rank = 8 - sum(_fiber_rank(s) for s in fibers)
    if mw_rank < 0:
        raise ValueError("root configuration exceeds rank 8")
    label = EXTREMAL_LABELS.get(tuple(sorted(fibers)), "") if mw_rank == 0 else ""
    order = sorted(range(len(comps)), key=lambda k: _fiber_sort_key(fibers[k]))
    return KodairaReport(
        fibers=tuple(sorted(fibers, key=_fiber_sort_key)),
        euler_total=12,
        mw_rank=mw_rank,
        extremal=mw_rank == 0,
        surface_label=label,
        components=tuple(tuple(cfg.names[i] for i in comps[k]) for k in order),
        diagrams=tuple(diagrams[k] for k in order),
    )


# --- the fibration pipeline --------------------------------------------------


@dataclass
class FibrationAnalysis:
    surface: ResolvedSurface
    classes: dict[str, CurveClass]
    configuration: CurveConfiguration
    contracted: CurveConfiguration
    log: list[tuple[str, int]]
    report: KodairaReport

    def named_gram(self, names: Sequence[str] = ("C", "g", "h")) -> list[list[int]]:
        return self.configuration.submatrix(names)

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.surface.rays],
            "selfint": list(self.surface.self_intersections),
            "curves": {
                name: {"profile": list(c.toric_intersections), "mult": c.mult_e}
                for name, c in self.classes.items()
            },
            "gram": self.named_gram(),
            "contracted": [name for name, _ in self.log],
            "diagrams": list(self.report.diagrams),
            "fibers": list(self.report.fibers),
            "euler_total": self.report.euler_total,
            "mw_rank": self.report.mw_rank,
            "extremal": self.report.extremal,
            "surface_label": self.report.surface_label,
        }


def analyze_fibration(
    t: LatticeTriangle,
    m: int,
    general: LaurentPolynomial,
    g_factor: LaurentPolynomial,
    h: LaurentPolynomial,
    reverse_order: bool = False,
) -> FibrationAnalysis:
    """Build boundary + E + g + h + C, contract orthogonal (-1)-curves, classify fibers."""
    s = resolved_fan(t)
    classes = {
        "C": curve_class(s, general, m, "C"),
        "g": curve_class(s, g_factor, None, "g"),
        "h": curve_class(s, h, None, "h"),
    }
    allc = [boundary_class(s, i) for i in range(s.n)] + [exceptional_class(s)] + [classes[k] for k in ("g", "h", "C")]
    cfg = CurveConfiguration.from_classes(s, allc)
    work = cfg.reordered(cfg.names[::-1]) if reverse_order else cfg
    contracted, log = contract_to_minimal(work, "C")
    return FibrationAnalysis(s, classes, cfg, contracted, log, kodaira_classify(contracted, "C"))


def fibration_for_triangle(
    t: LatticeTriangle,
    m: int,
    h: LaurentPolynomial | None = None,
    reverse_order: bool = False,
) -> FibrationAnalysis:
    """Full pipeline: generic pencil member, subgroup factor and the adjoint cofactor h."""
    general = linear_system(t, m).generic_member()
    if h is None:
        h = adjoint_cofactor(t, m)[0]
    return analyze_fibration(t, m, general, subgroup_factor(t, m), h, reverse_order)


def noether_defect(s: ResolvedSurface) -> int:
    """Sum of -D_i^2 minus (3n - 12); zero for every smooth complete toric surface."""
    return sum(-a for a in s.self_intersections) - (3 * s.n - 12)
