from fractions import Fraction
from math import gcd

import pytest

from ellpairs.classify import (
    Case2Candidate,
    brute_oracle,
    case3_triples,
    classify_all,
    divisors,
    solve_case1,
    solve_case2,
    solve_case3,
)
from ellpairs.lattice import LatticeTriangle, candidate_check, normalize

EXPECTED_KEYS = [normalize(LatticeTriangle.from_abc(*abc)).key for abc in ((2, 5, 8), (5, 12, 20), (5, 18, 45))]


def brute_case1(mode, s_max=400, strict=False, cap_degenerate=True):
    """Direct search of 2e(s+x)^2 = k(esx+p) over s, independent of the divisor trick."""
    found = set()
    for x in range(1, 5):
        for e in range(1, 18):
            if mode == "listing" and e >= 18 // (x * x):
                break
            if mode == "exact" and e * x * x >= 18:
                break
            top = e * x * x if mode == "listing" else e * x * x + 1
            for p in range(top):
                for s in range(1, s_max):
                    lhs = 2 * e * (s + x) ** 2
                    den = e * s * x + p
                    if lhs % den or (lhs // den) % 2 == 0 or den % 2:
                        continue
                    k = lhs // den
                    a, d = e * s * s, den // 2
                    ratio = Fraction(s - x, s) if mode == "listing" else Fraction(s, s + x)
                    if p == e * x * x and cap_degenerate and s > 2 * x * x + x:
                        continue
                    m = e * s * (s + x)
                    if strict and m - a - d != gcd(2 * d + a, e * (s + x) ** 2):
                        continue
                    if gcd(a, d) == 1 and ratio > Fraction(2, 3):
                        found.add((e, x, p, s, k))
    return found


def test_divisors():
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert divisors(1) == [1]


def test_case1_strict_is_empty():
    assert solve_case1(strict=True) == []
    assert solve_case1(strict=True, mode="exact") == []


def test_case1_non_strict_count():
    assert len(solve_case1(strict=False)) == 5


@pytest.mark.parametrize("mode", ["listing", "exact"])
def test_case1_matches_direct_search(mode):
    got = {(s.e, s.x, s.p, s.s, s.k) for s in solve_case1(strict=False, mode=mode)}
    assert got == brute_case1(mode)


def test_case1_degenerate_family_has_no_strict_members():
    # the p = ex^2 family is infinite; the strict filter kills it well below the proven bound
    assert brute_case1("exact", s_max=400, strict=True, cap_degenerate=False) == set()


def test_case1_solutions_satisfy_equation():
    for sol in solve_case1(strict=False, mode="exact"):
        assert 2 * sol.e * (sol.s + sol.x) ** 2 == sol.k * (sol.e * sol.s * sol.x + sol.p)
        assert sol.a * sol.c == sol.m**2


def test_case2_intermediates():
    cands = {(c.k, c.a, c.x, c.m) for c in solve_case2()}
    assert (5, 9, 1, 15) in cands
    assert (5, 45, 5, 75) in cands
    for k, a, x, m in cands:
        assert m * m == k * a * (m - a - x)


def test_case2_expansion_parity_rules():
    c = Case2Candidate(5, 9, 1, 15)
    branches = [b for b, _ in c.triangles()]
    assert branches == ["2d", "3d"]
    assert all(b == "2d" for b, _ in Case2Candidate(9, 4, 1, 6).triangles())


def test_case3_triples():
    triples = case3_triples()
    assert triples == {(5, 12, 20): 10, (2, 3, 8): 4, (2, 5, 8): 4, (1, 5, 9): 3, (3, 5, 12): 6}
    for cand in solve_case3():
        m = cand.m
        assert (cand.c0 - 4) * m * m - 2 * cand.c0 * cand.x * m - cand.c0 * cand.y * (cand.y - 2 * cand.x) == 0


def test_case3_eliminations():
    assert candidate_check(LatticeTriangle.from_abc(1, 5, 9)).width == 2
    assert candidate_check(LatticeTriangle.from_abc(2, 3, 8)).width == 3
    assert candidate_check(LatticeTriangle.from_abc(3, 5, 12)).width == 5


def test_classify_all():
    res = classify_all()
    assert [ct.key for ct in res] == sorted(EXPECTED_KEYS)
    assert sorted(ct.m for ct in res) == [4, 10, 15]
    for ct in res:
        js = ct.to_json()
        assert js["primitive"] and js["volume"] == js["m"] ** 2 and js["width"] >= js["m"]


def test_oracle_small_box():
    prim, imprim = brute_oracle(10, 50)
    assert [ct.key for ct in prim] == sorted(EXPECTED_KEYS)
    assert all(not ct.normal_form.primitive for ct in imprim)


def test_oracle_parallel_matches_serial():
    assert brute_oracle(8, 40, jobs=2) == brute_oracle(8, 40, jobs=1)
