from fractions import Fraction

import pytest

from matsuo.fields import PrimeField, Rationals
from matsuo.linalg import Matrix, Subspace, unit_vector
from matsuo.fischer import (
    build_p3,
    gamma_of_group,
    gamma_of_rootsystem,
    root_system_from_name,
    P3_PARALLEL_CLASSES,
)
from matsuo.groups import build_wk_affine_a
from matsuo.algebra import (
    AlgebraError,
    eigen_decomposition,
    is_multiplicative,
    iso_check,
    jordan_check,
)
from matsuo import constructions as cons

Q = Rationals()
F3 = PrimeField(3)
F5 = PrimeField(5)
HALF = Q.parse("1/2")


# --- Matsuo builder -----------------------------------------------------------

def test_matsuo_rejects_degenerate_alpha():
    for alpha in (Q.zero, Q.one):
        with pytest.raises(AlgebraError):
            cons.matsuo_algebra(build_p3(), alpha, Q)


def test_matsuo_dims():
    assert cons.matsuo_algebra(build_p3(), HALF, Q).dim == 9
    for n in (3, 4, 5):
        gam = gamma_of_rootsystem(root_system_from_name("A%d" % (n - 1)))
        assert cons.matsuo_algebra(gam, HALF, Q).dim == n * (n - 1) // 2


def test_isolated_point_gives_one_dim_factor():
    from matsuo.fischer import PartialTripleSystem
    sp = PartialTripleSystem(4, [(0, 1, 2)])
    A = cons.matsuo_algebra(sp, HALF, Q)
    e3 = unit_vector(Q, 4, 3)
    assert A.mul(e3, e3) == e3
    for i in range(3):
        assert A.mul(e3, unit_vector(Q, 4, i)) == [Q.zero] * 4


def test_matsuo_eigenbasis_formulas():
    sp = build_p3()
    A = cons.matsuo_algebra(sp, HALF, Q)
    basis = cons.matsuo_eigenbasis(sp, HALF, Q, 0)
    count = 0
    for lam, vecs in basis.items():
        for v in vecs:
            count += 1
            scaled = [Q.mul(lam, c) for c in v]
            assert A.mul(unit_vector(Q, 9, 0), v) == scaled
    assert count == 9
    # cross-validates the kernel computation
    dec = eigen_decomposition(A, unit_vector(Q, 9, 0), candidates=[Q.one, Q.zero, HALF])
    assert dec.dims() == (
        len(basis[Q.one]), len(basis[Q.zero]), len(basis[HALF])
    )


def test_matsuo_eigenbasis_isolated_point():
    from matsuo.fischer import PartialTripleSystem
    sp = PartialTripleSystem(4, [(1, 2, 3)])
    basis = cons.matsuo_eigenbasis(sp, HALF, Q, 0)
    assert len(basis[Q.one]) == 1
    assert len(basis[Q.zero]) == 3
    assert basis[HALF] == []


# --- root projections -----------------------------------------------------------

def test_proj_matrices_for_the_triangle_system():
    half = Q.parse("1/2")
    neg = Q.neg(half)
    zero = Q.zero
    m_a = cons.proj_matrix(Q, (1, -1, 0))
    assert m_a.rows == [[half, neg, zero], [neg, half, zero], [zero, zero, zero]]
    m_b = cons.proj_matrix(Q, (0, 1, -1))
    assert m_b.rows == [[zero, zero, zero], [zero, half, neg], [zero, neg, half]]
    m_ab = cons.proj_matrix(Q, (1, 0, -1))
    assert m_ab.rows == [[half, zero, neg], [zero, zero, zero], [neg, zero, half]]
    quarter = Q.parse("1/4")
    assert cons._jordan_product(m_a, m_b, Q) == (m_a + m_b - m_ab).scale(quarter)


def test_proj_matrices_match_printed_rank_two_cases():
    b2 = root_system_from_name("B2")
    m_a = cons.proj_matrix(Q, (1, 0))
    assert m_a == Matrix.from_int_rows(Q, [[1, 0], [0, 0]])
    m_ab = cons.proj_matrix(Q, (0, 1))
    assert m_ab == Matrix.from_int_rows(Q, [[0, 0], [0, 1]])
    half = Q.parse("1/2")
    m_b = cons.proj_matrix(Q, (-1, 1))
    assert m_b.rows == [[half, Q.neg(half)], [Q.neg(half), half]]
    # the half-weighted formula for the mixed pair
    quarter = Q.parse("1/4")
    direct = cons._jordan_product(m_a, m_b, Q)
    formula = (m_a + m_b.scale(Q.from_int(2)) - m_ab).scale(quarter)
    assert direct == formula


def test_projection_case_formula_all_rank_two_systems():
    expected_ks = {"A2": [1], "B2": [2], "G2": [1, 3]}
    for name, ks in expected_ks.items():
        cases = cons.verify_projection_products(Q, root_system_from_name(name))
        assert all(c.ok for c in cases)
        assert sorted({c.k for c in cases if c.kind == "span"}) == ks


def test_projection_formula_over_f5():
    cases = cons.verify_projection_products(F5, root_system_from_name("A2"))
    assert all(c.ok for c in cases)


def test_g2_projections_rejected_in_characteristic_three():
    with pytest.raises(AlgebraError):
        cons.jordan_from_roots(F3, root_system_from_name("G2"))


def test_jr_dimensions():
    for name, n in (("A1", 1), ("A2", 2), ("A3", 3), ("A4", 4), ("A5", 5),
                    ("D4", 4), ("D5", 5), ("E6", 6)):
        rs = root_system_from_name(name)
        assert cons.jr_dimension(Q, rs) == n * (n + 1) // 2


def test_jr_dimensions_remaining_irreducible_systems():
    for name, n in (("B2", 2), ("G2", 2), ("E7", 7), ("E8", 8)):
        rs = root_system_from_name(name)
        assert cons.jr_dimension(Q, rs) == n * (n + 1) // 2


def test_large_matsuo_tables_build():
    # the big exceptional systems are supported as in-memory tables
    for name, points in (("E6", 36), ("E7", 63)):
        gam = gamma_of_rootsystem(root_system_from_name(name))
        A = cons.matsuo_algebra(gam, HALF, Q)
        assert A.dim == points


def test_jordan_from_roots_is_jordan():
    for name in ("A2", "B2", "G2", "D4"):
        proj = cons.jordan_from_roots(Q, root_system_from_name(name))
        assert jordan_check(proj.algebra)


def test_matsuo_to_projection_quotient_for_d4():
    rs = root_system_from_name("D4")
    proj, m = cons.matsuo_to_projection_map(Q, rs)
    gam = gamma_of_rootsystem(rs)
    A = cons.matsuo_algebra(gam, HALF, Q)
    assert (A.dim, proj.algebra.dim) == (12, 10)
    assert is_multiplicative(A, proj.algebra, m)
    from matsuo.linalg import rref
    assert rref(m)[1] == 10


def test_matsuo_to_projection_bijective_for_a_types():
    for name in ("A2", "A3"):
        rs = root_system_from_name(name)
        proj, m = cons.matsuo_to_projection_map(Q, rs)
        gam = gamma_of_rootsystem(rs)
        A = cons.matsuo_algebra(gam, HALF, Q)
        assert iso_check(A, proj.algebra, m)


# --- zero-sum symmetric matrices -------------------------------------------------

def test_zero_sum_basis_matrices_are_symmetric_zero_sum():
    zs = cons.zero_sum_sym_algebra(Q, 4)
    for m in zs.basis_matrices:
        assert m == m.transpose()
        for row in m.rows:
            acc = Q.zero
            for a in row:
                acc = Q.add(acc, a)
            assert acc == Q.zero


def test_zero_sum_unit_for_n3():
    zs = cons.zero_sum_sym_algebra(Q, 3)
    two_thirds, neg_third = Q.parse("2/3"), Q.parse("-1/3")
    assert zs.unit_matrix.rows[0] == [two_thirds, neg_third, neg_third]
    # the unit acts as identity on the basis
    for i in range(zs.algebra.dim):
        e = unit_vector(Q, zs.algebra.dim, i)
        assert zs.algebra.mul(zs.unit, e) == e


def test_zero_sum_non_unital_when_n_vanishes():
    assert cons.zero_sum_sym_algebra(F3, 3).unit is None
    assert cons.zero_sum_sym_algebra(F5, 5).unit is None


def test_an_isomorphism_small():
    rs, zs, iso = cons.an_isomorphism(Q, 3)
    gam = gamma_of_rootsystem(rs)
    A = cons.matsuo_algebra(gam, HALF, Q)
    assert A.dim == zs.algebra.dim == 3
    assert iso_check(A, zs.algebra, iso)


# --- plane of order three ---------------------------------------------------------

def test_p3_unit_rejected_in_char_three():
    with pytest.raises(AlgebraError):
        cons.p3_unit(F3)
    with pytest.raises(AlgebraError):
        cons.line_idempotents(F3, (0, 1, 2))


def test_line_idempotent_pair_sums_to_unit():
    e, fl = cons.line_idempotents(Q, (0, 1, 2))
    u = cons.p3_unit(Q)
    assert [Q.add(a, b) for a, b in zip(e, fl)] == u


def test_p3_peirce_rejects_non_parallel_lines():
    with pytest.raises(AlgebraError):
        cons.p3_peirce(Q, ((0, 1, 2), (0, 3, 6), (6, 7, 8)))


def test_p3_peirce_explicit_piece():
    pd = cons.p3_peirce(Q, P3_PARALLEL_CLASSES[0])
    # the (1,2) piece is supported on the third line {7,8,9} with zero sum
    spc = pd.off_diagonal[(0, 1)]
    vecs = []
    for lam, mu in ((1, 0), (0, 1)):
        v = [Q.zero] * 9
        v[6], v[7], v[8] = Q.from_int(lam), Q.from_int(mu), Q.from_int(-(lam + mu))
        vecs.append(v)
    assert spc == Subspace.from_vectors(Q, 9, vecs)
    assert pd.direct_sum_ok


# --- hermitian 3x3 model ----------------------------------------------------------

def test_h3_rules_hold_in_both_models():
    assert cons.h3_rule_check(Q)
    assert cons.h3_rule_check(Q, cons.beta_model(Q))
    assert cons.h3_rule_check(F5)


def test_h3_rejects_characteristic_three():
    with pytest.raises(AlgebraError):
        cons.h3_algebra(F3)


def test_h3_one_twelve_times_one_twentythree():
    H = cons.h3_algebra(Q)
    idx = {l: i for i, l in enumerate(H.labels)}
    u12 = unit_vector(Q, 9, idx["1[12]"])
    u23 = unit_vector(Q, 9, idx["1[23]"])
    prod = H.mul(u12, u23)
    doubled = [Q.mul(Q.from_int(2), c) for c in prod]
    assert doubled == unit_vector(Q, 9, idx["1[13]"])


def test_eta_sends_line_idempotents_to_diagonal_units():
    eta = cons.eta_matrix(Q)
    H = cons.h3_algebra(Q)
    idx = {l: i for i, l in enumerate(H.labels)}
    for t, line in enumerate(P3_PARALLEL_CLASSES[0]):
        e, _ = cons.line_idempotents(Q, line)
        img = eta.matvec(e)
        assert img == unit_vector(Q, 9, idx["e%d%d" % (t + 1, t + 1)])


def test_eta_difference_of_points_hits_half_zeta():
    # p1 - p2 has (lam, mu) = (1, -1): the image is (1/2) of the generator slot
    eta = cons.eta_matrix(Q)
    H = cons.h3_algebra(Q)
    idx = {l: i for i, l in enumerate(H.labels)}
    v = [Q.zero] * 9
    v[0], v[1] = Q.one, Q.neg(Q.one)
    img = eta.matvec(v)
    expected = [Q.zero] * 9
    expected[idx["z[23]"]] = HALF
    assert img == expected


def test_eta_is_isomorphism_and_involutive_composition():
    A = cons.matsuo_algebra(build_p3(), HALF, Q)
    H = cons.h3_algebra(Q)
    eta = cons.eta_matrix(Q)
    assert iso_check(A, H, eta)
    assert eta * eta.inverse() == Matrix.identity(Q, 9)


def test_eta_over_f5():
    f = F5
    A = cons.matsuo_algebra(build_p3(), f.div(f.one, f.from_int(2)), f)
    H = cons.h3_algebra(f)
    assert iso_check(A, H, cons.eta_matrix(f))
    assert jordan_check(H)


def test_beta_model_translation_and_printed_factor_two():
    H = cons.h3_algebra(Q)
    Hb = cons.h3_algebra(Q, cons.beta_model(Q))
    theta = cons.model_translation(Q)
    assert iso_check(H, Hb, theta)
    A = cons.matsuo_algebra(build_p3(), HALF, Q)
    eta_b = theta * cons.eta_matrix(Q)
    assert iso_check(A, Hb, eta_b)
    # the literal sixth-root transcription doubles the translated coefficient
    for lam, mu in ((1, 0), (0, 1), (2, -1)):
        printed = cons.eta_beta_printed_coefficient(
            Q, Q.from_int(lam), Q.from_int(mu))
        u = Q.mul(Q.parse("3/4"), Q.from_int(lam + mu))
        v = Q.mul(Q.parse("1/4"), Q.from_int(lam - mu))
        translated = (Q.add(u, v), Q.mul(Q.from_int(2), v))
        assert printed == (Q.mul(Q.from_int(2), translated[0]),
                           Q.mul(Q.from_int(2), translated[1]))


# --- characteristic three chain ----------------------------------------------------

def test_char3_chain_full_report():
    ch = cons.p3_char3_chain(F3)
    assert ch.all_ok()
    assert ch.dims == (1, 6, 8)


def test_char3_chain_dim_t_is_six_despite_twelve_lines():
    ch = cons.p3_char3_chain(F3)
    assert len(build_p3().lines) == 12
    assert ch.t_space.dim == 6


def test_char3_line_sum_annihilates_parallel_differences():
    f = F3
    A = cons.matsuo_algebra(build_p3(), f.div(f.one, f.from_int(2)), f)
    plane = build_p3()
    def line_sum(line):
        v = [f.zero] * 9
        for p in line:
            v[p] = f.one
        return v
    for cls in P3_PARALLEL_CLASSES:
        l, lp, lpp = cls
        diff = [f.sub(a, b) for a, b in zip(line_sum(lp), line_sum(lpp))]
        for m in plane.lines:
            assert A.mul(line_sum(m), diff) == [f.zero] * 9


def test_char3_chain_wrong_characteristic():
    with pytest.raises(AlgebraError):
        cons.p3_char3_chain(Q)


# --- rank-4 coefficients --------------------------------------------------------------

def dense_rank4_coefficients(group):
    """Oracle: the same two coefficients through the full structure-constant
    table instead of the sparse point walk."""
    gam = gamma_of_group(group)
    A = cons.matsuo_algebra(gam, HALF, Q)
    f = A.field
    x = [f.zero] * A.dim
    for i in range(3):
        x[i] = f.one
    d = unit_vector(f, A.dim, 3)
    xx = A.mul(x, x)
    left = A.mul(A.mul(xx, d), x)
    right = A.mul(xx, A.mul(d, x))
    return left[0], right[0]


def test_rank4_w2a3():
    grp = build_wk_affine_a(2, 3)
    rep = cons.rank4_check(grp)
    assert rep.coeff_a_left == Fraction(3, 8)
    assert rep.coeff_a_right == Fraction(7, 16)
    assert rep.jordan_violated()
    assert dense_rank4_coefficients(grp) == (Fraction(3, 8), Fraction(7, 16))


def test_rank4_w3a3():
    grp = build_wk_affine_a(3, 3)
    rep = cons.rank4_check(grp)
    assert rep.coeff_a_left == Fraction(13, 32)
    assert rep.coeff_a_right == Fraction(7, 16)
    assert dense_rank4_coefficients(grp) == (Fraction(13, 32), Fraction(7, 16))


def test_rank4_su32(su32_group):
    rep = cons.rank4_check(su32_group)
    assert rep.coeff_acdb_left == Fraction(-1, 32)
    assert rep.coeff_acdb_right == 0
    assert rep.jordan_violated()


def test_rank4_su32_dense_cross_check(su32_group):
    # independent route: build the full 36-point table and read the same
    # coefficients densely
    g = su32_group
    gam = gamma_of_group(g)
    assert gam.n_points == 36
    A = cons.matsuo_algebra(gam, HALF, Q)
    a, b, c, d = g.generators
    index = {p: i for i, p in enumerate(g.D)}
    x = [Q.zero] * 36
    for gen in (a, b, c):
        x[index[gen]] = Q.one
    dvec = unit_vector(Q, 36, index[d])
    xx = A.mul(x, x)
    left = A.mul(A.mul(xx, dvec), x)
    right = A.mul(xx, A.mul(dvec, x))
    w = g.mul(g.mul(c, d), b)
    acdb = index[g.mul(g.mul(g.inv(w), a), w)]
    assert left[acdb] == Q.parse("-1/32")
    assert right[acdb] == Q.zero
    assert left[index[a]] == right[index[a]] == Q.parse("15/16")


def test_rank4_hall(hall_group):
    rep = cons.rank4_check(hall_group)
    assert rep.coeff_acdb_left == Fraction(-1, 32)
    assert rep.coeff_acdb_right == 0
    assert rep.jordan_violated()


def test_rank4_rejects_degenerate_generators():
    grp = build_wk_affine_a(2, 3)
    broken = type(grp)(
        grp.name, grp.identity, grp.mul, grp.inv,
        [grp.generators[0]] * 4, ["a", "b", "c", "d"],
    )
    with pytest.raises(AlgebraError):
        cons.rank4_check(broken)


# --- embeddings ------------------------------------------------------------------------

def test_embedding_reports():
    rep2 = cons.embedding_check(2, 5)
    assert rep2.ok()
    assert not rep2.exact_bijection      # central kernel of order 2
    assert rep2.kernel_size == 2
    rep3 = cons.embedding_check(3, 5)
    assert rep3.ok()
    assert rep3.exact_bijection
    assert rep3.embedded_rank4.coeff_a_left == Fraction(13, 32)
    assert rep2.embedded_rank4.coeff_a_left == Fraction(3, 8)
    assert rep2.embedded_rank4.coeff_a_right == Fraction(7, 16)


# --- name-based builders -----------------------------------------------------------------

def test_space_and_group_names():
    assert cons.space_from_name("P3").n_points == 9
    assert cons.space_from_name("P2dual").n_points == 6
    assert cons.group_from_name("sym:4").order() == 24
    assert cons.group_from_name("3sq2").order() == 18
    assert cons.group_from_name("W2A3").order() == 96
    with pytest.raises(AlgebraError):
        cons.space_from_name("P4")
    with pytest.raises(AlgebraError):
        cons.triple_system_from_cli("P3", "sym:4", None)
    gam = cons.triple_system_from_cli(None, None, "A3")
    assert gam.n_points == 6
