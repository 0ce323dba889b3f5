"""
Classification of lattice triangles with Vol = m^2, |boundary| = m, width >= m.

Three Diophantine case solvers cover a/m > 2/3, 1/2 < a/m <= 2/3 and
1/3 <= a/m <= 1/2; ``brute_oracle`` enumerates normal forms in a box and is
used to cross-check them.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Literal

from .lattice import LatticeTriangle, NormalForm, candidate_check, normal_forms, normalize

THEOREM_TRIANGLES = ((2, 5, 8), (5, 12, 20), (5, 18, 45))
CASE2_K_OPTIONS = (4, 5, 7, 8, 9, 10, 11)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class Case1Solution:
    e: int
    x: int
    p: int
    s: int
    k: int
    y: int

    @property
    def a(self) -> int:
        return self.e * self.s**2

    @property
    def c(self) -> int:
        return self.e * (self.s + self.x) ** 2

    @property
    def m(self) -> int:
        return self.e * self.s * (self.s + self.x)

    @property
    def d(self) -> int:
        return (self.e * self.s * self.x + self.p) // 2

    def triangle(self) -> LatticeTriangle:
        # b' = c - b = 2d
        return LatticeTriangle.from_abc(self.a, self.c - 2 * self.d, self.c)


def _case1_params(mode: str) -> Iterable[tuple[int, int, int]]:
    if mode == "listing":
        # loop bounds of the reference Sage search
        for x in range(1, 5):
            for e in range(1, 18 // (x * x)):
                for p in range(0, e * x * x):
                    yield e, x, p
    else:
        for x in range(1, 5):
            for e in range(1, 18):
                if e * x * x >= 18:
                    break
                for p in range(0, e * x * x + 1):
                    yield e, x, p


def solve_case1(strict: bool = True, mode: Literal["listing", "exact"] = "listing") -> list[Case1Solution]:
    """Solutions of 2e(s+x)^2 = k(esx + p) with a/m > 2/3.

    For each ``(e, x, p)`` the product
    ``(ex^2 k - 4(ex^2-p) - xy)(ex^2 k - 4(ex^2-p) + xy) = 16(ex^2-p)^2`` is
    split over the positive divisors of the right-hand side, giving ``k`` and
    ``y``; ``s`` then comes from the quadratic formula with ``sqrt(D) = |y|``.

    ``mode="listing"`` uses the reference search's loop bounds and the ratio test
    ``(s - x)/s > 2/3``; ``mode="exact"`` runs over all ``0 <= p <= ex^2 < 18``
    and tests ``a/m = s/(s + x) > 2/3``. With ``strict`` the side-sum
    condition ``m - a - d = gcd(2d + a, c)`` is enforced as well.

    At ``p = ex^2`` (exact mode only) the product degenerates to ``0 = 0`` and
    the equation becomes ``2(s + x) = kx``, an infinite family. There
    ``m - a - d = ex(s - x)/2`` while ``gcd(2d + a, c) <= e x^3``, so strict
    solutions have ``s <= 2x^2 + x``; that bound is also used as the cap for
    the non-strict listing of this family.
    """
    if mode not in ("listing", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    found: dict[tuple, Case1Solution] = {}
    for e, x, p in _case1_params(mode):
        q = e * x * x - p
        rhs = 16 * q * q
        if rhs == 0:
            for s in range(1, 2 * x * x + x + 1):
                if (2 * (s + x)) % x:
                    continue
                k = 2 * (s + x) // x
                _keep_case1(found, Case1Solution(e, x, p, s, k, 0), mode, strict)
            continue
        for div in divisors(rhs):
            twice_a = div + rhs // div
            ydiff = rhs // div - div
            if twice_a % 2 or ydiff % (2 * x):
                continue
            big_a, y = twice_a // 2, ydiff // (2 * x)
            knum = big_a + 4 * q
            if knum % (e * x * x):
                continue
            k = knum // (e * x * x)
            if k % 2 == 0:
                continue
            disc = e * e * x * x * (4 - k) ** 2 - 8 * e * (2 * e * x * x - p * k)
            assert disc == y * y
            for root in {abs(y), -abs(y)}:
                num = -e * x * (4 - k) + root
                if num % (4 * e):
                    continue
                s = num // (4 * e)
                if s <= 0 or (e * s * x + p) % 2:
                    continue
                _keep_case1(found, Case1Solution(e, x, p, s, k, abs(y)), mode, strict)
    return list(found.values())


def _keep_case1(found: dict, sol: Case1Solution, mode: str, strict: bool) -> None:
    if sol.k % 2 == 0 or (sol.e * sol.s * sol.x + sol.p) % 2:
        return
    if gcd(sol.a, sol.d) != 1:
        return
    ratio = Fraction(sol.s - sol.x, sol.s) if mode == "listing" else Fraction(sol.s, sol.s + sol.x)
    if not ratio > Fraction(2, 3):
        return
    if strict and sol.m - sol.a - sol.d != gcd(2 * sol.d + sol.a, sol.c):
        return
    found.setdefault((sol.e, sol.x, sol.p, sol.s, sol.k), sol)


@dataclass(frozen=True)
class Case2Candidate:
    k: int
    a: int
    x: int
    m: int

    @property
    def d(self) -> int:
        return self.m - self.a - self.x

    def triangles(self) -> list[tuple[str, LatticeTriangle]]:
        """Both b' = 2d and b' = 3d expansions, with the parity rule of each branch."""
        d = self.d
        if d <= 0 or gcd(2 * d + self.a, self.k) != self.x:
            return []
        c = self.k * d
        out = []
        if self.k % 2 == 1:
            out.append(("2d", LatticeTriangle.from_abc(self.a, c - 2 * d, c)))
        if self.k % 3 != 0:
            out.append(("3d", LatticeTriangle.from_abc(self.a, c - 3 * d, c)))
        return out


def solve_case2() -> list[Case2Candidate]:
    """Integer roots of m^2 = ka(m - a - x) with a/m > 1/2, before triangle expansion."""
    out = []
    for k in CASE2_K_OPTIONS:
        if 2 * k - 9 <= 0:
            continue
        for x in divisors(k):
            for a in range(1, (4 * k * x) // (2 * k - 9) + 1):
                r = exact_sqrt((k * a) ** 2 - 4 * k * a * (a + x))
                if r is None:
                    continue
                for num in sorted({k * a + r, k * a - r}):
                    if num % 2 or num <= 0:
                        continue
                    m = num // 2
                    if Fraction(a, m) > Fraction(1, 2):
                        out.append(Case2Candidate(k, a, x, m))
    return out


@dataclass(frozen=True)
class Case3Candidate:
    b0: int
    c0: int
    x: int
    y: int
    m: int

    @property
    def a(self) -> int:
        return (self.m - self.y) // 2

    @property
    def d(self) -> int:
        return self.m - self.a - self.x

    @property
    def abc(self) -> tuple[int, int, int]:
        return (self.a, self.b0 * self.d, self.c0 * self.d)

    def triangle(self) -> LatticeTriangle:
        return LatticeTriangle.from_abc(*self.abc)


def solve_case3() -> list[Case3Candidate]:
    """Roots of (c0 - 4)m^2 - 2 c0 x m - c0 y (y - 2x) = 0 over the finite parameter box.

    ``y`` runs over ``0 <= y < 2x``: at ``y = 2x`` one gets ``d = m/2 > a``,
    against the side ordering ``a >= d``.
    """
    out = []
    for b0 in range(3, 13):
        for c0 in range(b0 + 2, 13):
            if gcd(b0, c0) != 1:
                continue
            for x in divisors(c0):
                for y in range(0, 2 * x):
                    qa, qb, qc = c0 - 4, -2 * c0 * x, -c0 * y * (y - 2 * x)
                    r = exact_sqrt(qb * qb - 4 * qa * qc)
                    if r is None:
                        continue
                    for num in sorted({-qb + r, -qb - r}):
                        if num <= 0 or num % (2 * qa):
                            continue
                        m = num // (2 * qa)
                        if (m - y) % 2:
                            continue
                        cand = Case3Candidate(b0, c0, x, y, m)
                        a, b, c = cand.abc
                        if a <= 0 or cand.d <= 0:
                            continue
                        if gcd(gcd(a, b), c) != 1:
                            continue
                        if x != gcd(b - a, c):
                            continue
                        out.append(cand)
    return out


def case3_triples() -> dict[tuple[int, int, int], int]:
    """Distinct ``(a, b, c)`` produced by :func:`solve_case3`, mapped to ``m``."""
    return {cand.abc: cand.m for cand in solve_case3()}


@dataclass(frozen=True)
class ClassifiedTriangle:
    triangle: LatticeTriangle
    normal_form: NormalForm
    m: int
    volume: int
    width: int
    source: str

    @property
    def key(self) -> tuple[int, int, int]:
        return self.normal_form.key

    def to_json(self) -> dict:
        return {
            "vertices": self.triangle.to_json(),
            "m": self.m,
            "volume": self.volume,
            "width": self.width,
            "primitive": self.normal_form.primitive,
            "source": self.source,
        }


def representative(t: LatticeTriangle, m: int) -> LatticeTriangle:
    """Display form {(0,0),(a,0),(b,c)}: the longest base edge whose lattice length divides m, then least b.

    The normal form (lex-least (a, c, b)) is used for deduplication; this form
    is what gets printed, so solver and oracle output coincide.
    """
    forms = {(nf.a, nf.b, nf.c) for nf in normal_forms(t)}
    a, b, c = min(forms, key=lambda f: (m % f[0] != 0, -f[0], f[1]))
    return LatticeTriangle.from_abc(a, b, c)


def _classified(t: LatticeTriangle, source: str) -> ClassifiedTriangle | None:
    rep = candidate_check(t)
    if not rep.passes:
        return None
    return ClassifiedTriangle(representative(t, rep.m), normalize(t), rep.m, rep.volume, rep.width, source)


def candidate_triangles() -> list[tuple[str, LatticeTriangle]]:
    """Every triangle the three solvers emit, before the final checks."""
    out = [("case1", sol.triangle()) for sol in solve_case1(strict=True)]
    for cand in solve_case2():
        out.extend(("case2", t) for _, t in cand.triangles())
    out.extend(("case3", cand.triangle()) for cand in solve_case3())
    return out


def classify_all() -> list[ClassifiedTriangle]:
    """Primitive survivors of all three cases, one per normal form, ordered by normal form."""
    best: dict[tuple[int, int, int], ClassifiedTriangle] = {}
    for source, t in candidate_triangles():
        ct = _classified(t, source)
        if ct is None or not ct.normal_form.primitive:
            continue
        if ct.key not in best or source < best[ct.key].source:
            best[ct.key] = ct
    return [best[k] for k in sorted(best)]


def _oracle_chunk(args: tuple[list[int], int]) -> list[tuple[int, int, int]]:
    a_values, c_max = args
    hits = []
    for a in a_values:
        for c in range(1, c_max + 1):
            m = exact_sqrt(a * c)
            if m is None:
                continue
            for b in range(c):
                if a + gcd(b, c) + gcd(abs(a - b), c) != m:
                    continue
                if candidate_check(LatticeTriangle.from_abc(a, b, c)).passes_width:
                    hits.append((a, b, c))
    return hits


def brute_oracle(a_max: int, c_max: int, jobs: int = 1) -> tuple[list[ClassifiedTriangle], list[ClassifiedTriangle]]:
    """Exhaustive scan of {(0,0),(a,0),(b,c)} with a <= a_max, 0 <= b < c <= c_max.

    Returns ``(primitive_hits, imprimitive_hits)``, each deduplicated by normal form.
    """
    chunks = [list(range(start, a_max + 1, max(jobs, 1))) for start in range(1, min(jobs, a_max) + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_oracle_chunk, [(ch, c_max) for ch in chunks]))
    else:
        results = [_oracle_chunk((ch, c_max)) for ch in chunks]
    prim: dict = {}
    imprim: dict = {}
    for abc in sorted(h for res in results for h in res):
        ct = _classified(LatticeTriangle.from_abc(*abc), "oracle")
        target = prim if ct.normal_form.primitive else imprim
        target.setdefault(ct.key, ct)
    return [prim[k] for k in sorted(prim)], [imprim[k] for k in sorted(imprim)]
