"""
Laurent polynomials over Q and the linear systems L_P(m) of curves supported in
a lattice polygon P with multiplicity at least m at the torus identity e = (1, 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .lattice import LatticePoint, LatticeTriangle, interior_points, lattice_width

Exponent = tuple[int, int]


def _gbinom(n: int, k: int) -> int:
    """Binomial coefficient valid for negative ``n`` (power-series convention)."""
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


class LaurentPolynomial:
    """Finite map (i, j) -> nonzero Fraction, read as sum c * x^i * y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "LaurentPolynomial":
        return cls({(i, j): coeff})

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        return parse_laurent(text)

    @classmethod
    def from_json(cls, triples: Iterable[Sequence]) -> "LaurentPolynomial":
        return cls({(int(i), int(j)): Fraction(str(c)) for i, j, c in triples})

    def to_json(self) -> list[list]:
        return [[i, j, str(c)] for (i, j), c in sorted(self.terms.items())]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial({(0, 0): other})
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = LaurentPolynomial({(0, 0): 1}), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"LaurentPolynomial({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)

    @property
    def support(self) -> list[Exponent]:
        return sorted(self.terms)

    def shift(self, di: int, dj: int) -> "LaurentPolynomial":
        return LaurentPolynomial({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def primitive_part(self) -> "LaurentPolynomial":
        """Scale to coprime integer coefficients with positive leading term."""
        if not self:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        lead = self.terms[max(self.terms)]
        scale = Fraction(den, g) * (1 if lead > 0 else -1)
        return LaurentPolynomial({e: c * scale for e, c in self.terms.items()})

    def taylor_coefficient(self, alpha: int, beta: int) -> Fraction:
        """Coefficient of u^alpha v^beta after x -> 1 + u, y -> 1 + v."""
        return sum(
            (c * _gbinom(i, alpha) * _gbinom(j, beta) for (i, j), c in self.terms.items()),
            Fraction(0),
        )

    def evaluate(self, x, y):
        return sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in self.terms.items()), Fraction(0))


def _coerce(other) -> LaurentPolynomial:
    if isinstance(other, LaurentPolynomial):
        return other
    if isinstance(other, (int, Fraction)):
        return LaurentPolynomial({(0, 0): other})
    return NotImplemented


X = LaurentPolynomial.monomial(1, 0)
Y = LaurentPolynomial.monomial(0, 1)
ONE = LaurentPolynomial.monomial(0, 0)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<mons>(?:[xy](?:\^\(?-?\d+\)?)?\s*\*?\s*)*)""",
    re.VERBOSE,
)
_MON_RE = re.compile(r"([xy])(?:\^\(?(-?\d+)\)?)?")


def parse_laurent(text: str) -> LaurentPolynomial:
    """Parse sums of ``c*x^i*y^j`` terms; also accepts Magma's ``x[1]``, ``x[2]``."""
    s = text.replace("x[1]", "x").replace("x[2]", "y").replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial")
    terms: dict[Exponent, Fraction] = {}
    pos = 0
    while pos < len(s):
        mt = _TERM_RE.match(s, pos)
        if not mt or mt.end() == pos or not (mt.group("coeff") or mt.group("mons").strip()):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and not mt.group("sign"):
            raise ValueError(f"missing operator near {s[pos:]!r}")
        coeff = Fraction(mt.group("coeff") or 1)
        if mt.group("sign") == "-":
            coeff = -coeff
        i = j = 0
        for var, exp in _MON_RE.findall(mt.group("mons")):
            e = int(exp) if exp else 1
            if var == "x":
                i += e
            else:
                j += e
        terms[(i, j)] = terms.get((i, j), Fraction(0)) + coeff
        pos = mt.end()
    return LaurentPolynomial(terms)


def format_laurent(f: LaurentPolynomial) -> str:
    if not f:
        return "0"
    parts = []
    for (i, j), c in sorted(f.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
        mon = []
        if i:
            mon.append("x" if i == 1 else f"x^{i}")
        if j:
            mon.append("y" if j == 1 else f"y^{j}")
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not mon else []) + mon)
        parts.append(("-" if c < 0 else "+") + body)
    out = " ".join(p[0] + " " + p[1:] for p in parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def multiplicity_at_e(f: LaurentPolynomial) -> float | int:
    """Order of vanishing at (1, 1); ``math.inf`` for the zero polynomial."""
    if not f:
        return float("inf")
    imin = min(i for i, _ in f.terms)
    jmin = min(j for _, j in f.terms)
    g = f.shift(-imin, -jmin)
    degree = max(i + j for i, j in g.terms)
    for order in range(degree + 1):
        for alpha in range(order + 1):
            if g.taylor_coefficient(alpha, order - alpha):
                return order
    raise AssertionError("nonzero polynomial vanishing to order above its degree")


# --- polygons ---------------------------------------------------------------


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence[int]]) -> list[LatticePoint]:
    """Counterclockwise hull without collinear vertices (monotone chain)."""
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if len(pts) <= 2:
        return [LatticePoint(*p) for p in pts]
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return [LatticePoint(*p) for p in hull]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon given by counterclockwise vertices; may degenerate to a segment or point."""

    vertices: tuple[LatticePoint, ...]

    @classmethod
    def hull(cls, points: Iterable[Sequence[int]]) -> "LatticePolygon":
        return cls(tuple(convex_hull(points)))

    @classmethod
    def from_triangle(cls, t: LatticeTriangle) -> "LatticePolygon":
        return cls.hull(t.vertices)

    @property
    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def contains(self, p: Sequence[int], strict: bool = False) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return not strict and tuple(p) == tuple(vs[0])
        if len(vs) == 2:
            if strict or _cross(vs[0], vs[1], p) != 0:
                return False
            return min(vs[0][0], vs[1][0]) <= p[0] <= max(vs[0][0], vs[1][0]) and min(
                vs[0][1], vs[1][1]
            ) <= p[1] <= max(vs[0][1], vs[1][1])
        for k in range(len(vs)):
            s = _cross(vs[k], vs[(k + 1) % len(vs)], p)
            if s < 0 or (strict and s == 0):
                return False
        return True

    def lattice_points(self, interior: bool = False) -> list[LatticePoint]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return [
            LatticePoint(i, j)
            for i in range(min(xs), max(xs) + 1)
            for j in range(min(ys), max(ys) + 1)
            if self.contains((i, j), strict=interior)
        ]

    def edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        vs = self.vertices
        if len(vs) < 3:
            return []
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def inner_normals(self) -> list[tuple[int, int]]:
        """Primitive inner normal of each edge, in edge order."""
        out = []
        for p, q in self.edges():
            dx, dy = q[0] - p[0], q[1] - p[1]
            g = gcd(abs(dx), abs(dy))
            out.append((-dy // g, dx // g))
        return out

    def edge_lengths(self) -> list[int]:
        return [gcd(abs(q[0] - p[0]), abs(q[1] - p[1])) for p, q in self.edges()]

    def support_min(self, u: Sequence[int]) -> int:
        return min(v[0] * u[0] + v[1] * u[1] for v in self.vertices)

    def normalized_volume(self) -> int:
        vs = self.vertices
        if len(vs) < 3:
            return 0
        return sum(vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[k][1] * vs[(k + 1) % len(vs)][0] for k in range(len(vs)))

    def interior_hull(self) -> "LatticePolygon":
        pts = self.lattice_points(interior=True)
        if not pts:
            raise ValueError("polygon has no interior lattice points")
        return LatticePolygon.hull(pts)


def newton_polytope(f: LaurentPolynomial) -> LatticePolygon:
    if not f:
        raise ValueError("zero polynomial has no Newton polytope")
    return LatticePolygon.hull(f.terms)


# --- exact linear algebra ---------------------------------------------------


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q by Gauss-Jordan elimination."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))


def solve_exact(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """A rational solution of sum_k x_k * columns[k] = target, or None."""
    n = len(columns)
    rows = [[col[i] for col in columns] + [-target[i]] for i in range(len(target))]
    for v in nullspace(rows, n + 1):
        if v[n] != 0:
            return [x / v[n] for x in v[:n]]
    return None


# --- linear systems ---------------------------------------------------------


def taylor_conditions(points: Sequence[Exponent], mult: int) -> list[list[int]]:
    """Rows (alpha, beta), alpha + beta < mult, of the map coefficients -> Taylor coefficients at e."""
    return [
        [_gbinom(i, alpha) * _gbinom(j, order - alpha) for i, j in points]
        for order in range(mult)
        for alpha in range(order + 1)
    ]


@dataclass(frozen=True)
class LinearSystem:
    polygon: LatticePolygon
    mult: int
    basis: tuple[LaurentPolynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def generic_member(self, max_tries: int = 50) -> LaurentPolynomial:
        """``f1 + r*f2`` for the first r = 1, 2, ... with full Newton polygon and multiplicity exactly ``mult``.

        For a one-dimensional system this is the generator itself.
        """
        if not self.basis:
            raise ValueError("empty linear system")
        if len(self.basis) == 1:
            return self.basis[0]
        f1, f2 = self.basis[0], self.basis[1]
        for r in range(1, max_tries + 1):
            f = f1 + r * f2
            if newton_polytope(f) == self.polygon and multiplicity_at_e(f) == self.mult:
                return f.primitive_part()
        raise ValueError("no generic member found among f1 + r*f2")

    def contains(self, f: LaurentPolynomial) -> bool:
        """Membership by exact elimination against the basis."""
        keys = sorted(set(f.terms).union(*(b.terms for b in self.basis)))
        cols = [[b.terms.get(k, Fraction(0)) for k in keys] for b in self.basis]
        return solve_exact(cols, [f.terms.get(k, Fraction(0)) for k in keys]) is not None


def linear_system(polygon: LatticePolygon | LatticeTriangle, mult: int) -> LinearSystem:
    if isinstance(polygon, LatticeTriangle):
        polygon = LatticePolygon.from_triangle(polygon)
    points = [tuple(p) for p in polygon.lattice_points()]
    if not points:
        raise ValueError("empty polygon")
    rows = taylor_conditions(points, mult)
    basis = []
    for v in nullspace(rows, len(points)):
        f = LaurentPolynomial({pt: c for pt, c in zip(points, v)})
        basis.append(f.primitive_part())
    return LinearSystem(polygon, mult, tuple(basis))


def subgroup_data(t: LatticeTriangle, m: int) -> tuple[LatticePoint, int, int]:
    """``(P, u, v)`` with the segment from P to P + m(u, v) inside ``t`` and (v, -u) a width direction.

    Directions are tried in the order returned by ``lattice_width`` with (u, v)
    oriented so that v > 0 (or u > 0 when v = 0); P is the first such lattice
    point by (y, x).
    """
    width, directions = lattice_width(t)
    if width != m:
        raise ValueError(f"lattice width is {width}, not {m}")
    poly = LatticePolygon.from_triangle(t)
    points = sorted(poly.lattice_points(), key=lambda p: (p.y, p.x))
    for lam in directions:
        u, v = -lam[1], lam[0]
        if (v, u) < (0, 0):
            continue
        for p in points:
            if poly.contains((p.x + m * u, p.y + m * v)):
                return p, u, v
    raise ValueError("no width direction carries a segment of lattice length m inside the triangle")


def subgroup_factor(t: LatticeTriangle, m: int) -> LaurentPolynomial:
    """The reduced factor ``x^u y^v - 1`` of the subgroup curve."""
    _, u, v = subgroup_data(t, m)
    return LaurentPolynomial.monomial(u, v) - 1


def subgroup_curve(t: LatticeTriangle, m: int) -> LaurentPolynomial:
    """``x^s y^r (x^u y^v - 1)^m`` along a width-attaining direction, supported in ``t``.

    For ``{(0,0),(a,0),(b,c)}`` this is ``x^(b-mu) (x^u y^v - 1)^m`` with ``mv = c``.
    """
    p, u, v = subgroup_data(t, m)
    g = ((LaurentPolynomial.monomial(u, v) - 1) ** m).shift(p.x, p.y)
    assert multiplicity_at_e(g) == m
    assert all(poly_contains(t, e) for e in g.terms)
    return g


def poly_contains(t: LatticeTriangle, e: Exponent) -> bool:
    return LatticePolygon.from_triangle(t).contains(e)


def adjoint_system(t: LatticeTriangle, m: int) -> LinearSystem:
    """Curves in the interior hull of ``t`` with multiplicity at least ``m - 1`` at e."""
    return linear_system(LatticePolygon.from_triangle(t).interior_hull(), m - 1)


def exact_divide(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    """``f / g`` if ``g`` divides ``f`` in Q[x^±1, y^±1], else None."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return LaurentPolynomial()
    rem = dict(f.terms)
    gl = max(g.terms)
    gl_c = g.terms[gl]
    quotient: dict[Exponent, Fraction] = {}
    g_lo = min(g.terms)
    while rem:
        lead = max(rem)
        c = rem[lead] / gl_c
        q = (lead[0] - gl[0], lead[1] - gl[1])
        # lex-smallest term of q*g must not undershoot the lex-smallest term of f
        if (q[0] + g_lo[0], q[1] + g_lo[1]) < min(f.terms):
            return None
        quotient[q] = c
        for (i, j), gc in g.terms.items():
            key = (i + q[0], j + q[1])
            val = rem.get(key, Fraction(0)) - c * gc
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return LaurentPolynomial(quotient)


def factor_multiplicities(f: LaurentPolynomial, factors: Sequence[LaurentPolynomial]) -> list[int] | None:
    """Exponents ``e_k >= 1`` with ``f = unit * prod factors[k]^e_k``, or None.

    Units of the Laurent ring are the nonzero monomials c*x^i*y^j.
    """
    rest = f
    exps = []
    for g in factors:
        e = 0
        while True:
            q = exact_divide(rest, g)
            if q is None:
                break
            rest, e = q, e + 1
        if e == 0:
            return None
        exps.append(e)
    return exps if rest.is_monomial() else None


def strip_monomial(f: LaurentPolynomial) -> LaurentPolynomial:
    """Shift ``f`` so that both minimal exponents are zero."""
    return f.shift(-min(i for i, _ in f.terms), -min(j for _, j in f.terms))


def _rational_root(c: Fraction, k: int) -> Fraction | None:
    if c < 0 and k % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    out = []
    for n in (abs(c.numerator), c.denominator):
        r = round(n ** (1.0 / k))
        r = next((x for x in (r - 1, r, r + 1) if x >= 0 and x**k == n), None)
        if r is None:
            return None
        out.append(r)
    return sign * Fraction(out[0], out[1])


def perfect_power_root(f: LaurentPolynomial, k: int) -> LaurentPolynomial | None:
    """``h`` with ``h^k = f`` if one exists over Q, else None.

    Terms of h are found from the top in lex order: the leading term of
    ``f - h^k`` fixes the next term through the derivative ``k * lead(h)^(k-1)``.
    """
    if not f or k < 1:
        return None
    if k == 1:
        return f
    lead = max(f.terms)
    if lead[0] % k or lead[1] % k:
        return None
    c0 = _rational_root(f.terms[lead], k)
    if c0 is None:
        return None
    top = (lead[0] // k, lead[1] // k)
    # Newt(h) = Newt(f)/k, so every exponent of h lies in this box
    imin, imax = min(i for i, _ in f.terms), max(i for i, _ in f.terms)
    jmin, jmax = min(j for _, j in f.terms), max(j for _, j in f.terms)
    h = {top: c0}
    denom = k * c0 ** (k - 1)
    while True:
        rem = f - LaurentPolynomial(h) ** k
        if not rem:
            return LaurentPolynomial(h)
        e = max(rem.terms)
        nxt = (e[0] - (k - 1) * top[0], e[1] - (k - 1) * top[1])
        if nxt >= top or not (imin <= k * nxt[0] <= imax and jmin <= k * nxt[1] <= jmax):
            return None
        h[nxt] = h.get(nxt, Fraction(0)) + rem.terms[e] / denom


def adjoint_cofactor(t: LatticeTriangle, m: int) -> tuple[LaurentPolynomial, int, int]:
    """Split the adjoint generator as unit * g^e * h^k with g the subgroup factor.

    Returns ``(h, e, k)`` with h the k-th root of the g-free part for the
    largest k that admits one; h is normalized to coprime integer coefficients.
    """
    adj = adjoint_system(t, m)
    if adj.dimension != 1:
        raise ValueError(f"adjoint system has dimension {adj.dimension}, expected 1")
    gf = subgroup_factor(t, m)
    rest, e = adj.basis[0], 0
    while (q := exact_divide(rest, gf)) is not None:
        rest, e = q, e + 1
    rest = strip_monomial(rest)
    degree = max(i + j for i, j in rest.terms)
    for k in range(max(degree, 1), 0, -1):
        h = perfect_power_root(rest, k)
        if h is not None:
            return strip_monomial(h).primitive_part(), e, k
    raise AssertionError("k = 1 always succeeds")


def verify_adjoint_factorization(t: LatticeTriangle, m: int, factors: Sequence[LaurentPolynomial]) -> bool:
    """True iff the adjoint generator is a unit times a product of positive powers of ``factors``."""
    adj = adjoint_system(t, m)
    if adj.dimension != 1:
        raise ValueError(f"adjoint system has dimension {adj.dimension}, expected 1")
    return factor_multiplicities(adj.basis[0], factors) is not None


def arithmetic_genus(t: LatticeTriangle, m: int) -> int:
    return len(interior_points(t)) - m * (m - 1) // 2
