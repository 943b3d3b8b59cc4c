from fractions import Fraction

import pytest

from equijet.scalars import (
    FieldElement,
    NumberField,
    scalar_nth_root,
    scalar_to_text,
)


@pytest.fixture
def sqrt2():
    return NumberField([-2, 0, 1])  # alpha^2 - 2


def test_generator_squares_to_two(sqrt2):
    a = sqrt2.generator()
    assert a * a == Fraction(2)


def test_rational_results_demote(sqrt2):
    a = sqrt2.generator()
    assert isinstance(a * a, Fraction)
    assert isinstance(a + (-a), Fraction)
    b = a + 1
    assert isinstance(b, FieldElement)
    assert (b - a) == Fraction(1)


def test_inverse(sqrt2):
    a = sqrt2.generator()
    b = a + 3  # 3 + sqrt2
    assert b * b.inverse() == Fraction(1)
    assert (1 / b) * b == Fraction(1)


def test_division_and_powers(sqrt2):
    a = sqrt2.generator()
    assert a ** 4 == Fraction(4)
    assert (a ** 3) / a == Fraction(2)


def test_mixed_field_arithmetic_rejected(sqrt2):
    other = NumberField([-3, 0, 1])
    with pytest.raises(ValueError):
        sqrt2.generator() + other.generator()


def test_cubic_field_reduction():
    fld = NumberField([-2, 0, 0, 1], name="c")  # c^3 = 2
    c = fld.generator()
    assert c ** 3 == Fraction(2)
    assert scalar_to_text(c ** 2) == "c^2"
    assert (c ** 2) * c == Fraction(2)


def test_minpoly_validation():
    with pytest.raises(ValueError):
        NumberField([1, 1])  # degree 1
    with pytest.raises(ValueError):
        NumberField([-2, 0, 2])  # not monic


def test_nth_root_rational():
    assert scalar_nth_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert scalar_nth_root(Fraction(-8), 3) == Fraction(-2)
    assert scalar_nth_root(Fraction(-4), 2) is None
    assert scalar_nth_root(Fraction(5), 2) is None
    assert scalar_nth_root(Fraction(49, 4), 2) == Fraction(7, 2)


def test_nth_root_extension_unsupported(sqrt2):
    assert scalar_nth_root(sqrt2.generator() + 1, 3) is None
