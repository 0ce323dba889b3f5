"""
Integer geometry of lattice triangles.

Everything here is exact: volumes are normalized (twice the Euclidean area),
boundary counts are lattice perimeters, and widths are taken over primitive
integer directions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple, Sequence


class LatticePoint(NamedTuple):
    x: int
    y: int


Matrix2 = tuple[tuple[int, int], tuple[int, int]]


def _cross(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _sub(p: Sequence[int], q: Sequence[int]) -> tuple[int, int]:
    return (p[0] - q[0], p[1] - q[1])


def is_primitive_vector(v: Sequence[int]) -> bool:
    return gcd(abs(v[0]), abs(v[1])) == 1


@dataclass(frozen=True)
class LatticeTriangle:
    v0: LatticePoint
    v1: LatticePoint
    v2: LatticePoint

    def __post_init__(self):
        for name in ("v0", "v1", "v2"):
            p = getattr(self, name)
            object.__setattr__(self, name, LatticePoint(int(p[0]), int(p[1])))
        if _cross(_sub(self.v1, self.v0), _sub(self.v2, self.v0)) == 0:
            raise ValueError(f"degenerate triangle {self.vertices}")

    @classmethod
    def from_abc(cls, a: int, b: int, c: int) -> "LatticeTriangle":
        """The triangle {(0,0), (a,0), (b,c)}."""
        return cls((0, 0), (a, 0), (b, c))

    @classmethod
    def parse(cls, text: str) -> "LatticeTriangle":
        """Parse ``"x0,y0 x1,y1 x2,y2"`` or a JSON array of three ``[x, y]`` pairs."""
        text = text.strip()
        if text.startswith("["):
            pts = json.loads(text)
        else:
            pts = [tok.split(",") for tok in text.split()]
        if len(pts) != 3 or any(len(p) != 2 for p in pts):
            raise ValueError(f"expected three lattice points, got {text!r}")
        return cls(*[(int(p[0]), int(p[1])) for p in pts])

    @property
    def vertices(self) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
        return (self.v0, self.v1, self.v2)

    def format(self) -> str:
        return " ".join(f"{p.x},{p.y}" for p in self.vertices)

    def to_json(self) -> list[list[int]]:
        return [[p.x, p.y] for p in self.vertices]

    def transformed(self, matrix: Matrix2, shift: Sequence[int] = (0, 0)) -> "LatticeTriangle":
        return LatticeTriangle(*[apply_affine(matrix, shift, p) for p in self.vertices])

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [_sub(vs[(i + 1) % 3], vs[i]) for i in range(3)]


def apply_affine(matrix: Matrix2, shift: Sequence[int], p: Sequence[int]) -> LatticePoint:
    (m00, m01), (m10, m11) = matrix
    return LatticePoint(m00 * p[0] + m01 * p[1] + shift[0], m10 * p[0] + m11 * p[1] + shift[1])


def normalized_volume(t: LatticeTriangle) -> int:
    return abs(_cross(_sub(t.v1, t.v0), _sub(t.v2, t.v0)))


def boundary_count(t: LatticeTriangle) -> int:
    return sum(gcd(abs(e[0]), abs(e[1])) for e in t.edges())


def contains(t: LatticeTriangle, p: Sequence[int], strict: bool = False) -> bool:
    """Half-plane test; ``strict`` excludes the boundary."""
    vs = t.vertices
    orient = 1 if _cross(_sub(vs[1], vs[0]), _sub(vs[2], vs[0])) > 0 else -1
    for i in range(3):
        s = orient * _cross(_sub(vs[(i + 1) % 3], vs[i]), _sub(p, vs[i]))
        if s < 0 or (strict and s == 0):
            return False
    return True


def lattice_points(t: LatticeTriangle, interior: bool = False) -> list[LatticePoint]:
    xs = [p.x for p in t.vertices]
    ys = [p.y for p in t.vertices]
    return [
        LatticePoint(i, j)
        for i in range(min(xs), max(xs) + 1)
        for j in range(min(ys), max(ys) + 1)
        if contains(t, (i, j), strict=interior)
    ]


def interior_points(t: LatticeTriangle) -> list[LatticePoint]:
    return lattice_points(t, interior=True)


def width_along(t: LatticeTriangle, direction: Sequence[int]) -> int:
    if direction[0] == 0 and direction[1] == 0:
        raise ValueError("zero direction")
    if not is_primitive_vector(direction):
        raise ValueError(f"direction {tuple(direction)} is not primitive")
    vals = [p.x * direction[0] + p.y * direction[1] for p in t.vertices]
    return max(vals) - min(vals)


def lattice_width(t: LatticeTriangle) -> tuple[int, list[tuple[int, int]]]:
    """Minimal width and every primitive direction attaining it.

    Any direction ``lam`` satisfies ``width_along(lam) >= |<e, lam>|`` for each
    edge vector ``e``, so the minimizer lies in the parallelogram
    ``|<e1, lam>| <= W0, |<e2, lam>| <= W0`` with ``W0`` the smaller of the two
    axis widths. We enumerate its integer points through the inverse of the
    edge matrix.
    """
    bound = min(width_along(t, (1, 0)), width_along(t, (0, 1)))
    e1, e2, _ = t.edges()
    det = _cross(e1, e2)
    best = bound
    found: set[tuple[int, int]] = set()
    # lam solves [e1; e2] lam = (s, r); Cramer's rule with integer check.
    for s in range(-bound, bound + 1):
        for r in range(-bound, bound + 1):
            lx = s * e2[1] - r * e1[1]
            ly = -s * e2[0] + r * e1[0]
            if lx % det or ly % det:
                continue
            lam = (lx // det, ly // det)
            if lam == (0, 0) or not is_primitive_vector(lam):
                continue
            w = width_along(t, lam)
            if w < best:
                best, found = w, {lam}
            elif w == best:
                found.add(lam)
    return best, sorted(found, reverse=True)


@dataclass(frozen=True)
class NormalForm:
    """``matrix @ p + shift`` sends the source triangle onto {(0,0),(a,0),(b,c)}.

    ``matrix`` is unimodular; its determinant is -1 when the placement needs a
    reflection (mirror-image triangles share a normal form).
    """

    a: int
    b: int
    c: int
    matrix: Matrix2
    shift: tuple[int, int]

    @property
    def primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.c, self.b)

    def triangle(self) -> LatticeTriangle:
        return LatticeTriangle.from_abc(self.a, self.b, self.c)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _placements(t: LatticeTriangle):
    vs = t.vertices
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            p, q, r = vs[i], vs[j], vs[k]
            e = _sub(q, p)
            g, u, v = _ext_gcd(e[0], e[1])
            w = (e[0] // g, e[1] // g)
            # rows (u, v) and (-w1, w0) have det u*w0 + v*w1 = 1 and send w to (1, 0)
            mat: Matrix2 = ((u, v), (-w[1], w[0]))
            rr = apply_affine(mat, (0, 0), _sub(r, p))
            if rr.y < 0:
                # reflected placement: flip the second row, det becomes -1
                mat = (mat[0], (w[1], -w[0]))
                rr = LatticePoint(rr.x, -rr.y)
            # shear x -> x + k*y to bring b into [0, c)
            k_shear = -(rr.x // rr.y)
            mat = ((mat[0][0] + k_shear * mat[1][0], mat[0][1] + k_shear * mat[1][1]), mat[1])
            b = rr.x + k_shear * rr.y
            shift = (-(mat[0][0] * p[0] + mat[0][1] * p[1]), -(mat[1][0] * p[0] + mat[1][1] * p[1]))
            yield NormalForm(g, b, rr.y, mat, shift)


def normalize(t: LatticeTriangle) -> NormalForm:
    """Canonical representative under unimodular maps and translations.

    Each of the six (ordered edge, orientation) placements gives one form with
    ``a > 0`` and ``0 <= b < c``; the lexicographically smallest ``(a, c, b)``
    wins.
    """
    return min(_placements(t), key=lambda nf: nf.key)


def normal_forms(t: LatticeTriangle) -> list[NormalForm]:
    """All six placements, sorted; duplicates are kept."""
    return sorted(_placements(t), key=lambda nf: nf.key)


@dataclass(frozen=True)
class CandidateReport:
    m: int
    volume: int
    width: int
    width_directions: list[tuple[int, int]] = field(compare=False)
    primitive: bool

    @property
    def passes_area(self) -> bool:
        return self.volume == self.m * self.m

    @property
    def passes_width(self) -> bool:
        return self.width >= self.m

    @property
    def passes(self) -> bool:
        return self.passes_area and self.passes_width


def candidate_check(t: LatticeTriangle) -> CandidateReport:
    w, dirs = lattice_width(t)
    return CandidateReport(
        m=boundary_count(t),
        volume=normalized_volume(t),
        width=w,
        width_directions=dirs,
        primitive=normalize(t).primitive,
    )
