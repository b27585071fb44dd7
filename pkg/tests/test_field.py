from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totcomp.errors import DivisionByZero, NotInField, NotPrime, ParseError
from totcomp.field import GF, QQ, PrimeField, field_from_json, field_from_text

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def test_gf2_add():
    F = GF(2)
    assert F.add(F.one, F.one) == F.zero


def test_rational_inverse():
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_gf3_inverse_definition():
    # 2 * 2 = 4 = 1 mod 3, so inv(2) must be 2
    F = GF(3)
    inv = F.inv(2)
    assert F.mul(2, inv) == F.one
    assert inv == 2


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        QQ.inv(QQ.zero)
    with pytest.raises(DivisionByZero):
        GF(5).inv(0)


def test_parse_unicode_minus_gf5():
    assert GF(5).parse("−1") == 4


def test_parse_reduces_rationals():
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.format(QQ.parse("3/6")) == "1/2"


def test_parse_fraction_needs_invertible_denominator():
    with pytest.raises(NotInField):
        GF(2).parse("1/2")
    assert GF(3).parse("1/2") == 2  # 2 is its own inverse mod 3
    with pytest.raises(NotInField):
        QQ.parse("1/0")


def test_parse_rejects_garbage():
    for bad in ["", "a", "1/2/3", "1.5", "--2", "2/-3"]:
        with pytest.raises(ParseError):
            QQ.parse(bad)
        with pytest.raises(ParseError):
            GF(5).parse(bad)


def test_prime_validation():
    with pytest.raises(NotPrime):
        PrimeField(4)
    with pytest.raises(NotPrime):
        PrimeField(1)
    with pytest.raises(NotPrime):
        PrimeField(2**31 + 11)
    assert PrimeField(2_147_483_647).p == 2_147_483_647  # largest allowed prime


def test_field_json_round_trip():
    for F in FIELDS:
        assert field_from_json(F.to_json()) == F
    with pytest.raises(ParseError):
        field_from_json({"field": "R"})
    with pytest.raises(ParseError):
        field_from_json({"field": "GF"})


def test_field_from_text():
    assert field_from_text("Q") == QQ
    assert field_from_text("GF2") == GF(2)
    assert field_from_text("GF(3)") == GF(3)
    assert field_from_text("GF:5") == GF(5)
    with pytest.raises(ParseError):
        field_from_text("GF")


@settings(max_examples=200, derandomize=True, deadline=None)
@given(
    st.sampled_from(FIELDS),
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(-50, 50),
)
def test_field_axioms(F, a, b, c):
    x, y, z = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.add(x, y) == F.add(y, x)
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == F.zero
    assert F.add(x, F.zero) == x
    assert F.mul(x, F.one) == x
    if x != F.zero:
        assert F.mul(x, F.inv(x)) == F.one


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_parse_format_round_trip(F, num, den):
    if F is QQ:
        scalar = Fraction(num, den)
    else:
        scalar = F.div(F.coerce(num), F.coerce(den)) if den % F.p else F.coerce(num)
    assert F.parse(F.format(scalar)) == scalar
