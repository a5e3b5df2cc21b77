from itertools import combinations

import pytest

from matsuo.fischer import (
    GeometryError,
    PartialTripleSystem,
    build_p2_dual,
    build_p3,
    gamma_of_group,
    gamma_of_rootsystem,
    is_fischer,
    pts_isomorphic,
    root_system_from_name,
    roots_of,
    space_from_json_dict,
    space_from_text,
    space_to_json_dict,
    space_to_text,
    subspace_closure,
    validate_pts,
)
from matsuo.groups import build_3sq2, build_sym


def test_single_line_valid():
    sp = PartialTripleSystem(3, [(0, 1, 2)])
    assert validate_pts(sp).ok
    assert sp.wedge(0, 1) == 2


def test_two_lines_sharing_two_points_invalid():
    sp = PartialTripleSystem(4, [(0, 1, 2), (0, 1, 3)])
    res = validate_pts(sp)
    assert not res.ok
    assert "share" in res.error


def test_p3_counts_and_degrees():
    p3 = build_p3()
    assert validate_pts(p3).ok
    assert p3.n_points == 9
    assert len(p3.lines) == 12
    for x in range(9):
        assert len(p3.lines_through(x)) == 4


def test_p3_wedges_match_the_line_list():
    p3 = build_p3()
    # 1-based: 1^2 = 3 and 1^5 = 9
    assert p3.wedge(0, 1) == 2
    assert p3.wedge(0, 4) == 8


def test_p2_dual_counts():
    p2 = build_p2_dual()
    assert p2.n_points == 6
    assert len(p2.lines) == 4
    for x in range(6):
        assert len(p2.lines_through(x)) == 2


def test_closure_of_point_and_line():
    p3 = build_p3()
    assert subspace_closure(p3, {0}) == {0}
    assert subspace_closure(p3, {0, 1}) == {0, 1, 2}


def test_closure_of_two_intersecting_lines_is_whole_plane():
    p3 = build_p3()
    assert subspace_closure(p3, {0, 1, 2, 3, 6}) == set(range(9))


def test_is_fischer_on_canonical_planes():
    r2 = is_fischer(build_p2_dual())
    assert r2.is_fischer and r2.symplectic
    r3 = is_fischer(build_p3())
    assert r3.is_fischer and not r3.symplectic


def test_is_fischer_counterexample():
    # a triple system that is not a Fischer space: two intersecting lines
    # whose closure is just those two lines (5 points, no wedge closure)
    sp = PartialTripleSystem(5, [(0, 1, 2), (0, 3, 4)])
    res = is_fischer(sp)
    assert not res.is_fischer
    assert res.offending is not None


def test_partition_into_self_neighbours_rest():
    for sp in (build_p2_dual(), build_p3()):
        for x in range(sp.n_points):
            nbrs = set(sp.neighbours(x))
            rest = set(range(sp.n_points)) - nbrs - {x}
            assert {x} | nbrs | rest == set(range(sp.n_points))
            assert not ({x} & nbrs) and not (nbrs & rest)


def test_wedge_involution():
    for sp in (build_p2_dual(), build_p3()):
        for x in range(sp.n_points):
            for y in sp.neighbours(x):
                z = sp.wedge(x, y)
                assert sp.wedge(z, y) == x


def test_roots_of_a2_matches_fixed_realization():
    rs = root_system_from_name("A2")
    assert set(rs.positive) == {(1, -1, 0), (0, 1, -1), (1, 0, -1)}


def test_roots_of_g2_contains_printed_roots():
    rs = root_system_from_name("G2")
    assert (1, -1, 0) in rs.positive
    assert (-1, 2, -1) in rs.positive
    assert (0, 1, -1) in rs.positive
    assert len(rs.positive) == 6


def test_positive_root_counts():
    assert len(roots_of("A", 4).positive) == 10
    assert len(roots_of("D", 4).positive) == 12
    assert len(roots_of("D", 5).positive) == 20
    assert len(root_system_from_name("E6").positive) == 36
    assert len(root_system_from_name("E7").positive) == 63
    assert len(root_system_from_name("E8").positive) == 120


def test_roots_come_in_plus_minus_pairs():
    for name in ("A3", "D4", "E6"):
        rs = root_system_from_name(name)
        pos = set(rs.positive)
        for r in pos:
            assert tuple(-a for a in r) not in pos


def test_gamma_a2_single_line():
    gam = gamma_of_rootsystem(root_system_from_name("A2"))
    assert gam.n_points == 3
    assert gam.lines == [(0, 1, 2)]


def test_gamma_a3_is_p2_dual():
    gam = gamma_of_rootsystem(root_system_from_name("A3"))
    assert gam.n_points == 6 and len(gam.lines) == 4
    assert pts_isomorphic(gam, build_p2_dual()) is not None


def brute_force_a2_subsystems(rs):
    """Oracle: count coplanar, pairwise non-orthogonal triples where some
    signing makes the three roots sum to zero."""
    count = 0
    for trip in combinations(rs.positive, 3):
        r, s, t = trip
        if any(rs.form(u, v) == 0 for u, v in combinations(trip, 2)):
            continue
        found = False
        for su in (1, -1):
            for sv in (1, -1):
                vec = [su * a + sv * b for a, b in zip(r, s)]
                if tuple(vec) == t or tuple(-x for x in vec) == t:
                    found = True
        if found:
            count += 1
    return count


def test_gamma_a4_has_ten_points_ten_lines():
    rs = root_system_from_name("A4")
    gam = gamma_of_rootsystem(rs)
    assert gam.n_points == 10
    assert len(gam.lines) == 10
    assert len(gam.lines) == brute_force_a2_subsystems(rs)


def test_gamma_d4_line_count_matches_oracle():
    rs = root_system_from_name("D4")
    gam = gamma_of_rootsystem(rs)
    assert len(gam.lines) == brute_force_a2_subsystems(rs)


def test_gamma_rejects_non_simply_laced():
    with pytest.raises(GeometryError):
        gamma_of_rootsystem(root_system_from_name("B2"))


def test_gamma_of_sym4_is_p2_dual():
    gam = gamma_of_group(build_sym(4))
    assert pts_isomorphic(gam, build_p2_dual()) is not None


def test_gamma_of_group_rejects_large_product_orders():
    g = build_sym(4)
    # (12) against (13)(24): both involutions, product of order 4
    fake = g.with_involutions([(1, 0, 2, 3), (2, 3, 0, 1)])
    with pytest.raises(GeometryError):
        gamma_of_group(fake)


def test_is_fischer_flags_isolated_points():
    sp = PartialTripleSystem(4, [(0, 1, 2)])
    res = is_fischer(sp)
    assert res.is_fischer
    assert not res.nondegenerate


def test_every_3transposition_realization_yields_a_fischer_space(su32_group):
    from matsuo.groups import build_wk_affine_a, is_3transposition
    realizations = [
        build_sym(4),
        build_sym(5),
        build_3sq2(),
        build_wk_affine_a(2, 3),
        build_wk_affine_a(3, 3),
    ]
    for g in realizations:
        assert is_3transposition(g).ok
        res = is_fischer(gamma_of_group(g))
        assert res.is_fischer and res.nondegenerate
    # the presented rank-4 quotient: 36 involutions, every product order <= 3
    gam = gamma_of_group(su32_group)
    res = is_fischer(gam)
    assert res.is_fischer and res.nondegenerate
    assert not res.symplectic


def test_gamma_of_3sq2_is_p3():
    gam = gamma_of_group(build_3sq2())
    assert pts_isomorphic(gam, build_p3()) is not None


def test_gamma_of_sym_n_is_gamma_of_type_a():
    for n in (4, 5):
        gam_g = gamma_of_group(build_sym(n))
        gam_r = gamma_of_rootsystem(root_system_from_name("A%d" % (n - 1)))
        assert pts_isomorphic(gam_g, gam_r) is not None


def test_isomorphism_identity_and_distinct_sizes():
    p3 = build_p3()
    m = pts_isomorphic(p3, p3)
    assert m is not None
    assert pts_isomorphic(build_p2_dual(), p3) is None


def test_non_isomorphic_same_size():
    # six points: one line versus four lines
    sp = PartialTripleSystem(6, [(0, 1, 2)])
    assert pts_isomorphic(sp, build_p2_dual()) is None


def test_intersecting_line_pairs_generate_expected_closures():
    # in the order-3 plane every intersecting pair generates all nine points;
    # in a type-A triple system it generates a six-point subplane
    p3 = build_p3()
    for i, l1 in enumerate(p3.lines):
        for l2 in p3.lines[i + 1:]:
            if set(l1) & set(l2):
                assert len(subspace_closure(p3, set(l1) | set(l2))) == 9
    gam = gamma_of_rootsystem(root_system_from_name("A4"))
    for i, l1 in enumerate(gam.lines):
        for l2 in gam.lines[i + 1:]:
            if set(l1) & set(l2):
                assert len(subspace_closure(gam, set(l1) | set(l2))) == 6


def test_space_text_round_trip():
    p3 = build_p3()
    text = space_to_text(p3)
    back = space_from_text(text)
    assert back.n_points == 9 and back.lines == p3.lines
    data = space_to_json_dict(p3)
    again = space_from_json_dict(data)
    assert again.lines == p3.lines and again.labels == p3.labels
