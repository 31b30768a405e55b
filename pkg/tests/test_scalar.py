from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zornlie.scalar import I, ONE, SQRT2, SQRT3, SQRT6, ZERO, ExactScalar

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.lists(small, min_size=8, max_size=8).map(ExactScalar)
nonzero = scalars.filter(bool)


def approx(a: ExactScalar, z: complex) -> bool:
    return abs(complex(a) - z) < 1e-9 * (1 + abs(z))


def test_radical_relations():
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    assert SQRT2 * SQRT3 == SQRT6
    assert SQRT6 * SQRT6 == 6
    assert I * I == -1
    assert I * SQRT6 * I == -SQRT6


def test_inverse_of_one_plus_sqrt2():
    x = ONE + SQRT2
    inv = x.inverse()
    assert inv == SQRT2 - 1
    assert x * inv == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_canonical_equality():
    assert ExactScalar([Fraction(2, 4)]) == ExactScalar([Fraction(1, 2), 0, 0])
    assert ExactScalar.from_json(["0/1"] * 8) == ZERO
    assert hash(ExactScalar([Fraction(2, 4)])) == hash(ExactScalar([Fraction(1, 2)]))


def test_parse_and_str():
    assert ExactScalar.parse("1/2*sqrt2") == SQRT2 / 2
    assert ExactScalar.parse("3 - i*sqrt6") == 3 - I * SQRT6
    assert ExactScalar.parse("sqrt2*sqrt3") == SQRT6
    assert ExactScalar.parse("i*i") == -1
    assert str(SQRT2 / 2) == "1/2*sqrt2"
    assert str(ZERO) == "0"
    with pytest.raises(ValueError):
        ExactScalar.parse("")
    with pytest.raises(ValueError):
        ExactScalar.parse("sqrt5")


def test_json_rejects_wrong_length():
    with pytest.raises(ValueError):
        ExactScalar.from_json(["1/1"] * 7)


def test_is_rational():
    assert ExactScalar((3,)).to_fraction() == 3
    with pytest.raises(ValueError):
        SQRT2.to_fraction()


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(nonzero)
def test_inverse_property(a):
    assert a * a.inverse() == ONE
    assert (a / a) == ONE


@given(scalars, scalars)
def test_float_oracle(a, b):
    # the complex value is a ring homomorphism
    assert approx(a * b, complex(a) * complex(b))
    assert approx(a + b, complex(a) + complex(b))


@given(scalars, scalars)
def test_conj_is_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert approx(a.conj(), complex(a).conjugate())


@given(scalars)
def test_json_and_text_roundtrip(a):
    assert ExactScalar.from_json(a.to_json()) == a
    assert ExactScalar.parse(str(a)) == a
