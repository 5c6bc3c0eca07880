from fractions import Fraction

import pytest

from core.numbers import I, ONE, ZERO, ComplexRational


def test_arithmetic_is_exact():
    a = ComplexRational(Fraction(1, 3), 2)
    b = ComplexRational(-1, Fraction(1, 2))
    assert a + b == ComplexRational(Fraction(-2, 3), Fraction(5, 2))
    assert a * b == ComplexRational(Fraction(-1, 3) - 1, Fraction(1, 6) - 2)
    assert (a / b) * b == a
    assert I * I == -1


def test_integer_powers():
    z = ComplexRational(1, 1)
    assert z ** 2 == ComplexRational(0, 2)
    assert z ** -1 == ComplexRational(Fraction(1, 2), Fraction(-1, 2))
    assert z ** 0 == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_coerce_rejects_floats():
    assert ComplexRational.coerce(3) == 3
    with pytest.raises(TypeError):
        ComplexRational.coerce(0.5)


def test_real_values_hash_like_fractions():
    assert hash(ComplexRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert ComplexRational(2).to_number() == 2.0
    assert ComplexRational(0, 1).to_number() == 1j


def test_str():
    assert str(ComplexRational(Fraction(1, 2))) == '1/2'
    assert str(ComplexRational(1, -2)) == '1-2*i'
    assert str(I) == '1*i'
