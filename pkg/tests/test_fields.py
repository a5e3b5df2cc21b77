from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matsuo.fields import PrimeField, Rationals, field_from_name, scalar_from_string


def test_characteristic_two_rejected():
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        field_from_name("F2")


def test_non_prime_rejected():
    for n in (1, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(n)


def test_field_names_and_parse():
    assert field_from_name("Q") == Rationals()
    assert field_from_name("F5") == PrimeField(5)
    q = Rationals()
    assert q.parse("3/4") == Fraction(3, 4)
    assert q.fmt(Fraction(-3, 4)) == "-3/4"
    assert q.fmt(Fraction(2)) == "2/1"
    f5 = PrimeField(5)
    assert f5.fmt(7) == "2 mod 5"
    assert f5.parse("2 mod 5") == 2
    assert f5.parse("7") == 2
    assert scalar_from_string(f5, "1/2") == 3  # 2 * 3 = 6 = 1 mod 5


def test_rational_canonical_form():
    q = Rationals()
    assert q.div(q.from_int(2), q.from_int(-4)) == Fraction(-1, 2)
    x = q.parse("6/4")
    assert (x.numerator, x.denominator) == (3, 2)


@given(a=st.integers(-50, 50), b=st.integers(-50, 50), c=st.integers(-50, 50))
@settings(max_examples=200)
def test_rational_axioms(a, b, c):
    q = Rationals()
    x, y, z = map(q.from_int, (a, b, c))
    assert q.add(q.add(x, y), z) == q.add(x, q.add(y, z))
    assert q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z))
    assert q.mul(x, q.add(y, z)) == q.add(q.mul(x, y), q.mul(x, z))
    if x != q.zero:
        assert q.mul(x, q.inv(x)) == q.one


@given(a=st.integers(0, 100), b=st.integers(0, 100), c=st.integers(0, 100),
       p=st.sampled_from([3, 5, 7, 11]))
@settings(max_examples=200)
def test_prime_field_axioms(a, b, c, p):
    f = PrimeField(p)
    x, y, z = (v % p for v in (a, b, c))
    assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    if x != 0:
        assert f.mul(x, f.inv(x)) == 1
    assert f.sub(x, x) == 0


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Rationals().inv(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)
