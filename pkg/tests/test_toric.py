import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import DELTA1, DELTA2, DELTA3
from reference import REF_ADJSYS, REF_DIAG, REF_RAYS, cyclic_rotation, ref_imat
from ellpairs.lattice import LatticeTriangle
from ellpairs.linsys import LatticePolygon, linear_system, parse_laurent
from ellpairs.toric import (
    CurveConfiguration,
    boundary_class,
    contract_to_minimal,
    curve_class,
    divisor_class,
    dynkin_type,
    exceptional_class,
    fibration_for_triangle,
    intersection_matrix,
    kodaira_classify,
    noether_defect,
    pair,
    resolve_cone,
    resolved_fan,
)

P = parse_laurent


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def hj_resolution(u1, u2):
    """Hirzebruch-Jung: the next ray p has det(u1, p) = 1 and 0 < det(p, u2) < det(u1, u2)."""
    out = []
    while det(u1, u2) > 1:
        d = det(u1, u2)
        # p0 with det(u1, p0) = 1, then shift along u1
        g, a, b = _egcd(u1[0], u1[1])
        p0 = (-b, a)
        k = det(p0, u2)
        t = -((k - 1) // d)
        p = (p0[0] + t * u1[0], p0[1] + t * u1[1])
        assert det(u1, p) == 1 and 0 < det(p, u2) < d
        out.append(p)
        u1 = p
    return out


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def test_delta1_fan_matches_reference():
    s = resolved_fan(DELTA1)
    assert set(s.rays) == set(REF_RAYS)
    k = cyclic_rotation(s.rays, REF_RAYS)
    assert k is not None
    assert list(s.self_intersections[k:] + s.self_intersections[:k]) == REF_DIAG
    assert s.rays[0] == min(s.rays)


def test_delta1_intersection_matrix_matches_printed_matrix():
    s = resolved_fan(DELTA1)
    k = cyclic_rotation(s.rays, REF_RAYS)
    n = s.n
    perm = [(i + k) % n for i in range(n)] + [n]
    ours = intersection_matrix(s)
    assert [[ours[i][j] for j in perm] for i in perm] == ref_imat()


def test_printed_adjsys_rows_give_diag():
    mat = ref_imat()
    rows = REF_ADJSYS
    gram = [[sum(a[i] * mat[i][j] * b[j] for i in range(14) for j in range(14)) for b in rows] for a in rows]
    assert gram == [[0, 0, 0], [0, -1, 0], [0, 0, -1]]


def test_small_fans():
    p2 = resolved_fan(LatticeTriangle.from_abc(1, 0, 1))
    assert p2.n == 3 and p2.self_intersections == (1, 1, 1)
    mat = intersection_matrix(p2)
    assert [mat[i][i] for i in range(4)] == [1, 1, 1, -1]
    assert all(mat[i][j] == 1 for i in range(3) for j in range(3) if i != j)
    sq = resolved_fan(LatticePolygon.hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert sq.n == 4 and sq.self_intersections == (0, 0, 0, 0)


@pytest.mark.parametrize("t", [DELTA1, DELTA2, DELTA3], ids=["delta1", "delta2", "delta3"])
def test_fan_smooth_and_noether(t):
    s = resolved_fan(t)
    for i in range(s.n):
        prev, cur, nxt = s.rays[i - 1], s.rays[i], s.rays[(i + 1) % s.n]
        assert abs(det(cur, nxt)) == 1
        a = -s.self_intersections[i]
        assert (prev[0] + nxt[0], prev[1] + nxt[1]) == (a * cur[0], a * cur[1])
    assert noether_defect(s) == 0
    mat = intersection_matrix(s)
    for i in range(s.n):
        assert sum(1 for j in range(s.n) if j != i and mat[i][j] == 1) == 2


coords = st.integers(-9, 9)


@settings(max_examples=100, deadline=None)
@given(st.tuples(coords, coords), st.tuples(coords, coords), st.tuples(coords, coords))
def test_resolution_matches_continued_fractions(p, q, r):
    assume(det((q[0] - p[0], q[1] - p[1]), (r[0] - p[0], r[1] - p[1])) != 0)
    s = resolved_fan(LatticeTriangle(p, q, r))
    assert noether_defect(s) == 0
    poly = LatticePolygon.hull([p, q, r])
    normals = poly.inner_normals()
    for u in normals:
        assert u in s.rays
    # between consecutive edge normals the rays must be the continued-fraction rays
    n = s.n
    idx = sorted(s.rays.index(u) for u in normals)
    for a, b in zip(idx, idx[1:] + [idx[0] + n]):
        between = [s.rays[k % n] for k in range(a + 1, b)]
        assert between == hj_resolution(s.rays[a], s.rays[b % n]) == resolve_cone(s.rays[a], s.rays[b % n])


def _delta1_classes():
    s = resolved_fan(DELTA1)
    general = linear_system(DELTA1, 4).generic_member()
    return s, [
        curve_class(s, general, 4, "C"),
        curve_class(s, P("x*y^2 - 1"), None, "g"),
        curve_class(s, P("x^2*y^3 - 3*x*y + x + 1"), None, "h"),
    ]


def test_delta1_gram_matches_reference():
    s, (c, g, h) = _delta1_classes()
    assert (g.mult_e, h.mult_e) == (1, 2)
    gram = [[pair(s, a, b) for b in (c, g, h)] for a in (c, g, h)]
    assert gram == [[0, 0, 0], [0, -1, 0], [0, 0, -1]]


def test_general_curve_meets_sides_by_lattice_length():
    s, (c, _, _) = _delta1_classes()
    sides = {(0, 1): 2, (-8, 3): 1, (8, -5): 1}
    for ray, length in sides.items():
        assert pair(s, c, boundary_class(s, s.index_of(ray))) == length


def test_g_meets_width_direction_divisors():
    s, (_, g, _) = _delta1_classes()
    hits = {s.rays[i] for i in range(s.n) if pair(s, g, boundary_class(s, i))}
    assert hits == {(2, -1), (-2, 1)}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=26, max_size=26), st.integers(-3, 3), st.integers(-3, 3))
def test_pairing_symmetric(coeffs, m1, m2):
    s = resolved_fan(DELTA1)
    a = divisor_class(s, "a", coeffs[:13], m1)
    b = divisor_class(s, "b", coeffs[13:], m2)
    assert pair(s, a, b) == pair(s, b, a)
    assert pair(s, exceptional_class(s), exceptional_class(s)) == -1


@pytest.mark.parametrize(
    "t,m,fibers,label",
    [
        (DELTA1, 4, ("I1*", "I4", "I1"), "X141"),
        (DELTA2, 10, ("II*", "I1", "I1"), "X211"),
        (DELTA3, 15, ("II*", "I1", "I1"), "X211"),
    ],
    ids=["delta1", "delta2", "delta3"],
)
def test_fibrations(t, m, fibers, label):
    an = fibration_for_triangle(t, m)
    assert an.named_gram() == [[0, 0, 0], [0, -1, 0], [0, 0, -1]]
    rep = an.report
    assert rep.fibers == fibers
    assert rep.euler_total == 12 and rep.mw_rank == 0 and rep.extremal
    assert rep.surface_label == label
    # Picard rank: n - 2 boundary classes plus E, minus the blow-downs, lands at 10
    assert an.surface.n - 2 + 1 - len(an.log) == 10
    assert all(selfint == -1 for _, selfint in an.log)
    assert an.log[0][0] in ("g", "h")
    rev = fibration_for_triangle(t, m, reverse_order=True)
    assert sorted(rev.report.fibers) == sorted(fibers)


def test_delta1_diagrams():
    rep = fibration_for_triangle(DELTA1, 4).report
    assert rep.diagrams == ("D5~", "A3~")


def test_contract_order_random_permutations():
    an = fibration_for_triangle(DELTA1, 4)
    rng = random.Random(7)
    for _ in range(100):
        names = an.configuration.names[:]
        rng.shuffle(names)
        cfg, _ = contract_to_minimal(an.configuration.reordered(names), "C")
        assert sorted(kodaira_classify(cfg, "C").fibers) == sorted(an.report.fibers)


def test_no_contractible_curve_is_noop():
    cfg = CurveConfiguration(["F", "A"], [[0, 1], [1, -2]])
    out, log = contract_to_minimal(cfg, "F")
    assert log == [] and out.gram == cfg.gram


def test_blowdown_update_rule():
    # B meets F, so it stays even after becoming a (-1)-curve
    cfg = CurveConfiguration(["F", "X", "A", "B"], [[0, 0, 0, 1], [0, -1, 1, 1], [0, 1, -3, 0], [1, 1, 0, -2]])
    out, log = contract_to_minimal(cfg, "F")
    assert log == [("X", -1)]
    assert out.names == ["F", "A", "B"]
    assert out.gram == [[0, 0, 1], [0, -2, 1], [1, 1, -1]]


def _chain(n, cycle=False):
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        g[i][i + 1] = g[i + 1][i] = 1
    if cycle:
        g[0][n - 1] = g[n - 1][0] = 1
    return g


def _tree(legs):
    n = 1 + sum(legs)
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    nxt = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            g[prev][nxt] = g[nxt][prev] = 1
            prev, nxt = nxt, nxt + 1
    return g


def test_dynkin_types():
    assert dynkin_type(_chain(1)) == ("A", 1, False)
    assert dynkin_type(_chain(4)) == ("A", 4, False)
    assert dynkin_type(_chain(4, cycle=True)) == ("A", 3, True)
    assert dynkin_type([[-2, 2], [2, -2]]) == ("A", 1, True)
    assert dynkin_type(_tree([1, 1, 2])) == ("D", 5, False)
    assert dynkin_type(_tree([1, 2, 2])) == ("E", 6, False)
    assert dynkin_type(_tree([1, 2, 3])) == ("E", 7, False)
    assert dynkin_type(_tree([1, 2, 4])) == ("E", 8, False)
    assert dynkin_type(_tree([1, 2, 5])) == ("E", 8, True)
    assert dynkin_type(_tree([1, 1, 1, 1])) == ("D", 4, True)
    with pytest.raises(ValueError):
        dynkin_type(_tree([2, 2, 3]))
    with pytest.raises(ValueError):
        dynkin_type([[-2, 3], [3, -2]])


def test_kodaira_fills_with_i1():
    names = ["F"] + [f"R{i}" for i in range(8)]
    g = _tree([1, 2, 4])
    gram = [[0] * 9] + [[0] + row for row in g]
    rep = kodaira_classify(CurveConfiguration(names, gram), "F")
    assert rep.fibers == ("II*", "I1", "I1")
    assert rep.surface_label == "X211"
