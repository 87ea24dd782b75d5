from fractions import Fraction

import pytest

from superjordan.errors import FieldError
from superjordan.exactfield import (
    CHAR3_BANNER,
    RATIONALS,
    PrimeField,
    QuadraticField,
    Rational,
    characteristic_warning,
    field_from_spec,
    field_sqrt,
    field_to_spec,
    make_field,
)


def test_rational_arithmetic_is_exact():
    a = RATIONALS.parse("1/3")
    b = RATIONALS.parse("-2/3")
    assert a + b == RATIONALS.parse("-1/3")
    assert a * b == Rational(Fraction(-2, 9))
    assert str(RATIONALS.half()) == "1/2"
    assert (a / b) == RATIONALS.parse("-1/2")
    assert a.inverse() == 3


def test_rational_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        RATIONALS.zero.inverse()


def test_prime_field_rejects_two_and_composites():
    with pytest.raises(FieldError):
        PrimeField(2)
    with pytest.raises(FieldError):
        PrimeField(9)


def test_prime_field_reduces_fractions(gf5):
    assert gf5.half() == 3
    assert gf5.coerce(Fraction(1, 3)) == 2
    assert gf5.parse("-1") == 4
    with pytest.raises(FieldError):
        gf5.coerce(Fraction(1, 5))


def test_finite_field_elements_hash_like_the_ints_they_equal(gf5, gf25):
    three = gf5.from_int(3)
    assert three == 3
    assert hash(three) == hash(3)
    assert 3 in {three}
    assert {3: "x"}[gf5.half()] == "x"
    assert len({x for x in gf5.elements()} | set(range(5))) == 5
    assert {gf25.from_int(2): "y"}[2] == "y"


def test_prime_field_elements_in_canonical_order(gf5):
    assert [str(x) for x in gf5.elements()] == ["0", "1", "2", "3", "4"]
    assert gf5.order == 5
    assert gf5.characteristic == 5


def test_quadratic_field_has_square_roots_of_nonresidues(gf25):
    assert gf25.order == 25
    assert len(gf25.elements()) == 25
    two = gf25.from_int(2)
    assert field_sqrt(PrimeField(5).from_int(2)) is None
    root = field_sqrt(two)
    assert root is not None and root * root == two
    # the prime subfield comes first
    assert all(x.b == 0 for x in gf25.elements()[:5])


def test_quadratic_field_parse_and_print(gf25):
    s = gf25.generator
    assert s * s == gf25.d
    x = gf25.parse("1+2*s")
    assert str(x) == "1+2*s"
    assert x * x.inverse() == 1
    with pytest.raises(FieldError):
        gf25.parse("1+*")


def test_minus_one_is_a_square_in_gf5(gf5):
    r = field_sqrt(gf5.from_int(-1))
    assert r is not None and r * r == -1


def test_field_specs_round_trip_known_descriptors():
    assert field_from_spec("rational") == RATIONALS
    assert field_from_spec({"prime": 7}) == PrimeField(7)
    assert field_from_spec({"prime": 7, "ext": True}) == QuadraticField(7)
    assert field_to_spec(QuadraticField(7)) == {"prime": 7, "ext": True}
    with pytest.raises(FieldError):
        field_from_spec({"modulus": 7})


def test_mixing_fields_is_an_error(gf5):
    with pytest.raises(FieldError):
        gf5.one + PrimeField(7).one


def test_characteristic_three_banner():
    assert characteristic_warning(PrimeField(3)) == CHAR3_BANNER
    assert characteristic_warning(PrimeField(5)) is None
    assert characteristic_warning(RATIONALS) is None


def test_make_field():
    assert make_field() == RATIONALS
    assert make_field(5) == PrimeField(5)
    assert make_field(5, ext=True) == QuadraticField(5)
    with pytest.raises(FieldError):
        make_field(None, ext=True)
