import random

import pytest

from matsuo.fields import PrimeField, Rationals
from matsuo.linalg import Matrix, Subspace, kernel, rref, unit_vector

Q = Rationals()
F3 = PrimeField(3)


def _m(field, rows):
    return Matrix.from_int_rows(field, rows)


def test_rref_identity_fixed_point():
    m = Matrix.identity(Q, 2)
    red, rank = rref(m)
    assert red == m and rank == 2


def test_rref_dependent_rows_over_q():
    red, rank = rref(_m(Q, [[1, 2], [2, 4]]))
    assert rank == 1
    assert red == _m(Q, [[1, 2], [0, 0]])


def test_rref_dependent_rows_mod_3():
    # by hand: over F3 the second row is 2x the first, so it eliminates
    red, rank = rref(_m(F3, [[1, 2], [2, 4]]))
    assert rank == 1
    assert red == _m(F3, [[1, 2], [0, 0]])


def test_rref_idempotent_random():
    rng = random.Random(7)
    for _ in range(50):
        rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
        m = _m(Q, rows)
        red, _ = rref(m)
        red2, _ = rref(red)
        assert red == red2


def test_kernel_zero_and_identity():
    z = Matrix.zeros(Q, 3, 3)
    assert kernel(z).dim == 3
    assert kernel(Matrix.identity(Q, 3)).dim == 0


def test_rank_nullity_random():
    rng = random.Random(11)
    for _ in range(50):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = _m(Q, [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)])
        _, rank = rref(m)
        assert rank + kernel(m).dim == nc


def test_matrix_inverse():
    m = _m(Q, [[2, 1], [1, 1]])
    assert m * m.inverse() == Matrix.identity(Q, 2)
    with pytest.raises(ValueError):
        _m(Q, [[1, 2], [2, 4]]).inverse()


def test_subspace_self_intersection():
    s = Subspace.from_vectors(Q, 3, [[Q.from_int(1), Q.from_int(2), Q.from_int(0)]])
    assert s.intersect(s) == s
    assert s.add(s) == s


def test_subspace_contains_and_coordinates():
    v1 = [Q.from_int(1), Q.from_int(0), Q.from_int(1)]
    v2 = [Q.from_int(0), Q.from_int(1), Q.from_int(1)]
    s = Subspace.from_vectors(Q, 3, [v1, v2])
    w = [Q.from_int(2), Q.from_int(3), Q.from_int(5)]
    assert s.contains(w)
    assert not s.contains(unit_vector(Q, 3, 0))
    coords = s.coordinates(w)
    assert coords is not None
    rebuilt = [Q.zero] * 3
    for c, row in zip(coords, s.rows):
        for i, a in enumerate(row):
            rebuilt[i] = Q.add(rebuilt[i], Q.mul(c, a))
    assert rebuilt == w


def test_subspace_modular_dimension_law():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 5)
        def rand_space():
            k = rng.randint(0, n)
            return Subspace.from_vectors(
                Q, n,
                [[Q.from_int(rng.randint(-2, 2)) for _ in range(n)]
                 for _ in range(k)],
            )
        s, t = rand_space(), rand_space()
        assert s.dim + t.dim == s.add(t).dim + s.intersect(t).dim


def test_subspace_field_mismatch():
    s = Subspace.from_vectors(Q, 2, [[Q.one, Q.zero]])
    t = Subspace.from_vectors(F3, 2, [[F3.one, F3.zero]])
    with pytest.raises(ValueError):
        s.add(t)


def test_matrix_serialization_strings():
    m = _m(Q, [[1, -2]])
    assert m.to_strings() == [["1/1", "-2/1"]]
    m3 = _m(F3, [[1, 2]])
    assert m3.to_strings() == [["1 mod 3", "2 mod 3"]]
