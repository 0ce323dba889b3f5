"""
Arithmetic of the blow-up of P^2 at nine points on a nodal cubic.

The smooth locus of y^2 z = x^2 (x + z) is identified with G_m, the flex
[0:1:0] playing the role of 1. With z_1..z_7 = 1, z_8 = a, z_9 = q/a, each
root of the E8 lattice C-perp/<C> restricts to a^alpha q^beta, and modulo p the
effective cone is polyhedral exactly when some root with alpha != 0 restricts
into <q mod p>.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Literal, Sequence

from .linsys import solve_exact
from .primes import is_prime, prime_factors, primes_in_range, primes_upto, spf_table

Outcome = Literal["polyhedral", "non_polyhedral", "outside_U"]


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def _exponents(n: int) -> dict[int, int]:
    out = {}
    for p in prime_factors(abs(n)):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def exponent_vector(x) -> dict[int, int]:
    """Prime exponents of a nonzero rational; the sign is dropped."""
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("zero has no exponent vector")
    vec = _exponents(x.numerator)
    for p, e in _exponents(x.denominator).items():
        vec[p] = vec.get(p, 0) - e
    return vec


def multiplicatively_independent(a, q) -> bool:
    """True iff a^x q^y = 1 forces x = y = 0.

    The sign is torsion, so it never matters: a relation a^x q^y = +-1 squares
    to an honest one.
    """
    va, vq = exponent_vector(a), exponent_vector(q)
    primes = sorted(set(va) | set(vq))
    if not any(va.values()) or not any(vq.values()):
        return False
    return any(
        va.get(p, 0) * vq.get(r, 0) - va.get(r, 0) * vq.get(p, 0) for p, r in combinations(primes, 2)
    )


# --- the nodal cubic --------------------------------------------------------


def _param_poly(t: Fraction, order: int = 0) -> tuple[Fraction, Fraction, Fraction]:
    """``order``-th derivative of t -> (4t(1-t), 4t(1+t), (1-t)^3)."""
    if order == 0:
        return (4 * t * (1 - t), 4 * t * (1 + t), (1 - t) ** 3)
    if order == 1:
        return (4 - 8 * t, 4 + 8 * t, -3 * (1 - t) ** 2)
    if order == 2:
        return (Fraction(-8), Fraction(8), 6 * (1 - t))
    raise ValueError("order must be 0, 1 or 2")


def _normalize_point(p: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    for c in reversed(p):
        if c:
            return tuple(x / c for x in p)
    raise ValueError("zero vector is not a projective point")


def nodal_point(t) -> tuple[Fraction, Fraction, Fraction]:
    """Point of y^2 z = x^2 (x + z) with parameter ``t`` in G_m.

    Away from t = 1 this is (s^2 - 1, s(s^2 - 1), 1) with s = (1 + t)/(1 - t);
    t = 1 gives the flex [0:1:0].
    """
    t = _as_fraction(t)
    if t == 0:
        raise ValueError("t = 0 maps to the node")
    return _normalize_point(_param_poly(t))


def on_nodal_cubic(p: Sequence) -> bool:
    x, y, z = (Fraction(c) for c in p)
    return y * y * z - x * x * (x + z) == 0


def _det3(rows) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def collinear_iff_product_one(t1, t2, t3) -> tuple[bool, bool]:
    """(collinear, t1*t2*t3 == 1); repeated parameters use tangent or flex contact.

    A line meets the curve in the points of parameter t counted with multiplicity,
    so a parameter repeated k times contributes the first k derivatives of the
    parametrization as rows.
    """
    ts = [_as_fraction(t) for t in (t1, t2, t3)]
    if any(t == 0 for t in ts):
        raise ValueError("t = 0 maps to the node")
    rows, seen = [], {}
    for t in ts:
        k = seen.get(t, 0)
        rows.append(_param_poly(t, k))
        seen[t] = k + 1
    collinear = _det3(rows) == 0
    return collinear, ts[0] * ts[1] * ts[2] == 1


# --- roots and restriction images ------------------------------------------


@dataclass(frozen=True)
class RootClass:
    """d*h - sum m_i E_i; ``coeffs`` holds m_1..m_9."""

    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 9:
            raise ValueError("need nine E-coefficients")

    @property
    def vector(self) -> tuple[int, ...]:
        return (self.d,) + self.coeffs

    @property
    def self_intersection(self) -> int:
        return self.d * self.d - sum(m * m for m in self.coeffs)

    def dot_c(self) -> int:
        """Intersection with C = 3h - sum E_i."""
        return 3 * self.d - sum(self.coeffs)

    def label(self) -> str:
        terms = []
        if self.d:
            terms.append("h" if self.d == 1 else "-h" if self.d == -1 else f"{self.d}h")
        for i, m in enumerate(self.coeffs, start=1):
            if m:
                sign = "-" if m > 0 else "+"
                mag = "" if abs(m) == 1 else str(abs(m))
                terms.append(f"{sign}{mag}E{i}")
        s = "".join(terms) or "0"
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class RestrictionImage:
    """The class a^alpha q^beta in Pic^0(C) = G_m; trivial modulo res(C) iff alpha = 0."""

    alpha: int
    beta: int

    @property
    def trivial_mod_c(self) -> bool:
        return self.alpha == 0

    def label(self) -> str:
        return "1" if self.alpha == 0 else "a" if self.alpha == 1 else f"a^{self.alpha}"


def restriction_image(r: RootClass) -> RestrictionImage:
    """E_i restricts to z_i and h to 3[z_0] = 1, so r maps to prod z_i^(-m_i) = a^(m9-m8) q^(-m9)."""
    m8, m9 = r.coeffs[7], r.coeffs[8]
    return RestrictionImage(m9 - m8, -m9)


def class_of_c() -> RootClass:
    return RootClass(3, (1,) * 9)


def enumerate_roots() -> list[tuple[RootClass, RestrictionImage]]:
    """The 240 roots as +-(E_i - E_j) and +-(h - E_i - E_j - E_k), with their images."""
    roots = []
    for i in range(9):
        for j in range(9):
            if i != j:
                m = [0] * 9
                m[i], m[j] = -1, 1
                roots.append(RootClass(0, tuple(m)))
    for trio in combinations(range(9), 3):
        for sign in (1, -1):
            m = [0] * 9
            for i in trio:
                m[i] = sign
            roots.append(RootClass(sign, tuple(m)))
    return [(r, restriction_image(r)) for r in roots]


# simple roots of the E7 inside the kernel: E1-E2, ..., E6-E7, h-E1-E2-E3
E7_SIMPLE_ROOTS = tuple(
    RootClass(0, tuple(-1 if k == i else 1 if k == i + 1 else 0 for k in range(9))) for i in range(6)
) + (RootClass(1, (1, 1, 1, 0, 0, 0, 0, 0, 0)),)


def e7_coordinates(r: RootClass) -> list[int] | None:
    """Integer n with r = sum n_k s_k + n_7 C over the E7 simple roots s_k, else None."""
    cols = [s.vector for s in E7_SIMPLE_ROOTS] + [class_of_c().vector]
    sol = solve_exact(cols, r.vector)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return [int(x) for x in sol]


@dataclass(frozen=True)
class RootCensus:
    total: int
    kernel: int
    images: dict[str, int]
    kernel_in_e7_span: bool
    simple_roots_in_kernel: bool
    res_c: RestrictionImage

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "kernel": self.kernel,
            "images": dict(sorted(self.images.items())),
            "kernel_in_e7_span": self.kernel_in_e7_span,
            "simple_roots_in_kernel": self.simple_roots_in_kernel,
            "res_C": f"q^{self.res_c.beta}",
        }


def root_census() -> RootCensus:
    roots = enumerate_roots()
    images: dict[str, int] = {}
    kernel = [r for r, img in roots if img.trivial_mod_c]
    for _, img in roots:
        if not img.trivial_mod_c:
            images[img.label()] = images.get(img.label(), 0) + 1
    span_ok = all(e7_coordinates(r) is not None for r in kernel)
    # non-kernel roots must fall outside the span
    span_exact = span_ok and all(e7_coordinates(r) is None for r, img in roots if not img.trivial_mod_c)
    return RootCensus(
        total=len(roots),
        kernel=len(kernel),
        images=images,
        kernel_in_e7_span=span_exact,
        simple_roots_in_kernel=all(restriction_image(s).trivial_mod_c for s in E7_SIMPLE_ROOTS),
        res_c=restriction_image(class_of_c()),
    )


# --- arithmetic modulo p ----------------------------------------------------


def reduce_mod(x, p: int) -> int:
    """Image of a p-integral rational in F_p."""
    x = _as_fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral at {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def order_mod(x: int, p: int, spf=None, check_prime: bool = True) -> int:
    """Multiplicative order of ``x`` in F_p^*, descending through the prime factors of p - 1."""
    if check_prime and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x %= p
    if x == 0:
        raise ValueError("zero has no multiplicative order")
    n = p - 1
    for ell in prime_factors(p - 1, spf):
        while n % ell == 0 and pow(x, n // ell, p) == 1:
            n //= ell
    return n


def in_subgroup(a_res: int, q_res: int, p: int) -> bool:
    """Whether a lies in <q> inside F_p^* (cyclic, so iff o(a) divides o(q))."""
    return order_mod(q_res, p) % order_mod(a_res, p) == 0


def good_reduction(a: Fraction, q: Fraction, p: int) -> bool:
    if p in (2, 3):
        return False
    if any(n % p == 0 for n in (a.numerator, a.denominator, q.numerator, q.denominator)):
        return False
    abar = reduce_mod(a, p)
    z9 = reduce_mod(q / a, p)
    return abar not in (0, 1) and z9 not in (0, 1) and abar != z9


@lru_cache(maxsize=None)
def _root_images() -> tuple[RestrictionImage, ...]:
    """Images of the 114 roots with alpha != 0."""
    return tuple(img for _, img in enumerate_roots() if not img.trivial_mod_c)


def polyhedral_by_roots(abar: int, qbar: int, p: int) -> bool:
    """Some root with alpha != 0 whose image a^alpha q^beta lies in <q mod p>."""
    oq = order_mod(qbar, p, check_prime=False)
    for img in _root_images():
        x = pow(abar, img.alpha, p) * pow(qbar, img.beta, p) % p
        if oq % order_mod(x, p, check_prime=False) == 0:
            return True
    return False


def polyhedrality_test(a, q, p: int) -> Outcome:
    """Polyhedral iff a^2 lies in <q> mod p; cross-checked against the root images."""
    a, q = _as_fraction(a), _as_fraction(q)
    if not multiplicatively_independent(a, q):
        raise ValueError(f"{a} and {q} are multiplicatively dependent")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not good_reduction(a, q, p):
        return "outside_U"
    abar, qbar = reduce_mod(a, p), reduce_mod(q, p)
    direct = in_subgroup(abar * abar % p, qbar, p)
    if direct != polyhedral_by_roots(abar, qbar, p):
        raise InconsistencyError(f"criterion mismatch at p = {p}")
    return "polyhedral" if direct else "non_polyhedral"


# --- density scans ----------------------------------------------------------


@dataclass(frozen=True)
class LFilter:
    l: int
    count: int
    density: Fraction


@dataclass(frozen=True)
class DensityReport:
    """Counts over primes p <= limit; ``density`` is hits (polyhedral) over good primes."""

    a: Fraction
    q: Fraction
    limit: int
    primes_scanned: int
    hits: int
    non_polyhedral: int
    outside_u: int
    membership: int
    mismatches: int
    per_l: tuple[LFilter, ...] = ()
    rows: tuple[tuple, ...] = field(default=(), compare=False, repr=False)

    @property
    def density(self) -> Fraction:
        return Fraction(self.hits, self.primes_scanned) if self.primes_scanned else Fraction(0)

    @property
    def non_polyhedral_density(self) -> Fraction:
        return Fraction(self.non_polyhedral, self.primes_scanned) if self.primes_scanned else Fraction(0)

    @property
    def membership_density(self) -> Fraction:
        """Density of S(a, q) = {p : a in <q> mod p} among good primes."""
        return Fraction(self.membership, self.primes_scanned) if self.primes_scanned else Fraction(0)

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "q": str(self.q),
            "limit": self.limit,
            "primes_scanned": self.primes_scanned,
            "hits": self.hits,
            "density": float(self.density),
            "non_polyhedral": self.non_polyhedral,
            "non_polyhedral_density": float(self.non_polyhedral_density),
            "outside_U": self.outside_u,
            "membership": self.membership,
            "membership_density": float(self.membership_density),
            "criterion_mismatches": self.mismatches,
            "per_l": [{"l": f.l, "count": f.count, "density": float(f.density)} for f in self.per_l],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "polyhedral", "ord_a", "ord_q"] + [f"l{f.l}" for f in self.per_l])
        w.writerows(self.rows)
        return buf.getvalue()


def _scan_segment(args) -> dict:
    a, q, lo, hi, ls, spf_limit, keep_rows = args
    spf = spf_table(spf_limit)
    root_alphas = sorted({img.alpha for img in _root_images()})
    counts = {"scanned": 0, "hits": 0, "non": 0, "outside": 0, "member": 0, "mismatch": 0}
    lcounts = {l: 0 for l in ls}
    rows = []
    for p in primes_in_range(lo, hi):
        p = int(p)
        if not good_reduction(a, q, p):
            counts["outside"] += 1
            if keep_rows:
                rows.append((p, "U", "", "") + ("",) * len(ls))
            continue
        counts["scanned"] += 1
        abar, qbar = reduce_mod(a, p), reduce_mod(q, p)
        oa = order_mod(abar, p, spf, check_prime=False)
        oq = order_mod(qbar, p, spf, check_prime=False)
        oa2 = oa // gcd(oa, 2)
        direct = oq % oa2 == 0
        # roots route: q^beta already lies in <q>, so only a^alpha matters
        by_roots = any(oq % (oa // gcd(oa, abs(al))) == 0 for al in root_alphas)
        counts["mismatch"] += direct != by_roots
        counts["hits" if direct else "non"] += 1
        counts["member"] += oq % oa == 0
        flags = []
        for l in ls:
            ok = (p - 1) % l == 0 and pow(qbar, (p - 1) // l, p) == 1 and pow(abar, (p - 1) // l, p) != 1
            lcounts[l] += ok
            flags.append(int(ok))
        if keep_rows:
            rows.append((p, int(direct), oa, oq, *flags))
    return {"counts": counts, "l": lcounts, "rows": rows}


def density_scan(
    a,
    q,
    limit: int,
    l_filters: Iterable[int] = (),
    jobs: int = 1,
    keep_rows: bool = False,
    segments: int | None = None,
) -> DensityReport:
    """Scan primes up to ``limit``; segments are processed in parallel and merged in order."""
    a, q = _as_fraction(a), _as_fraction(q)
    if not multiplicatively_independent(a, q):
        raise ValueError(f"{a} and {q} are multiplicatively dependent")
    if limit < 100:
        raise ValueError("limit must be at least 100")
    ls = tuple(sorted(set(int(l) for l in l_filters)))
    if any(not is_prime(l) for l in ls):
        raise ValueError("l filters must be primes")
    jobs = max(1, int(jobs))
    nseg = segments or max(8, 2 * jobs)
    bounds = [2 + (limit - 1) * k // nseg for k in range(nseg + 1)]
    bounds[-1] = limit + 1
    tasks = [(a, q, bounds[k], bounds[k + 1], ls, limit, keep_rows) for k in range(nseg)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_segment, tasks))
    else:
        parts = [_scan_segment(t) for t in tasks]
    total = {k: sum(part["counts"][k] for part in parts) for k in parts[0]["counts"]}
    per_l = tuple(
        LFilter(l, c := sum(part["l"][l] for part in parts), Fraction(c, total["scanned"]) if total["scanned"] else Fraction(0))
        for l in ls
    )
    rows = tuple(r for part in parts for r in part["rows"])
    return DensityReport(
        a=a,
        q=q,
        limit=limit,
        primes_scanned=total["scanned"],
        hits=total["hits"],
        non_polyhedral=total["non"],
        outside_u=total["outside"],
        membership=total["member"],
        mismatches=total["mismatch"],
        per_l=per_l,
        rows=rows,
    )


def heath_brown_triple(a, limit: int, jobs: int = 1) -> dict[int, DensityReport]:
    """Density reports for the surfaces with q = 2, 3, 5."""
    if limit < 100:
        raise ValueError("limit must be at least 100")
    a = _as_fraction(a)
    for q in (2, 3, 5):
        if not multiplicatively_independent(a, q):
            raise ValueError(f"{a} and {q} are multiplicatively dependent")
    return {q: density_scan(a, q, limit, jobs=jobs) for q in (2, 3, 5)}


def stephens_constant(bound: int = 10**6) -> float:
    """Truncated product over primes p <= bound of 1 - p/(p^3 - 1)."""
    ps = primes_upto(bound).astype(float)
    return float(prod((1.0 - ps / (ps**3 - 1.0)).tolist()))


def filter_expectation(l: int) -> Fraction:
    """Expected density of the order filter at the prime l, which is 1/l^2."""
    return Fraction(1, l * l)
