"""
Exact scalars over the rationals, odd prime fields GF(p) and their
quadratic extensions GF(p^2).

Every scalar is immutable and knows its field descriptor. Field descriptors
compare by value, so two ``PrimeField(5)`` instances are interchangeable.
"""

import re
from functools import cached_property
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from sympy import isprime
from sympy.ntheory import is_quad_residue

from .errors import FieldError
from .logger import get_logger

logger = get_logger(__name__)

CHAR3_BANNER = (
    "WARNING: working in characteristic 3; the equivalence between the Jordan "
    "identity and its linearization is not guaranteed here"
)


class FieldScalar:
    """Common arithmetic for all exact scalars."""

    __slots__ = ()

    field: "Field"

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field} scalars")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._add(o._neg())

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o._add(self._neg())

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._mul(o.inverse())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o._mul(self.inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result._mul(base)
            base = base._mul(base)
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.coerce(other)
            except FieldError:
                return False
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.field == other.field and self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.field, self._key()))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def is_zero(self) -> bool:
        return self == self.field.zero

    def is_one(self) -> bool:
        return self == self.field.one

    def sort_key(self):
        """Key of the canonical order used for enumeration and tie breaking."""
        return self._key()


class Rational(FieldScalar):
    __slots__ = ("value",)

    def __init__(self, value: Union[int, Fraction, "Rational"] = 0):
        if isinstance(value, Rational):
            value = value.value
        self.value = Fraction(value)

    @property
    def field(self) -> "RationalField":
        return RATIONALS

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _key(self):
        return self.value

    def _add(self, other):
        return Rational(self.value + other.value)

    def _mul(self, other):
        return Rational(self.value * other.value)

    def _neg(self):
        return Rational(-self.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0")
        return Rational(1 / self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


class PrimeFieldElement(FieldScalar):
    __slots__ = ("value", "_field")

    def __init__(self, value: int, field: "PrimeField"):
        self._field = field
        self.value = value % field.p

    @property
    def field(self) -> "PrimeField":
        return self._field

    @property
    def modulus(self) -> int:
        return self._field.p

    def _key(self):
        return self.value

    def _add(self, other):
        return PrimeFieldElement(self.value + other.value, self._field)

    def _mul(self, other):
        return PrimeFieldElement(self.value * other.value, self._field)

    def _neg(self):
        return PrimeFieldElement(-self.value, self._field)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0")
        return PrimeFieldElement(pow(self.value, -1, self._field.p), self._field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __hash__(self):
        # equal ints in 0..p-1 must land in the same bucket
        return hash(self.value)

    def __str__(self):
        return str(self.value)


class QuadExtElement(FieldScalar):
    """a + b*s with s^2 = d, d the least quadratic nonresidue mod p."""

    __slots__ = ("_a", "_b", "_field")

    def __init__(self, a: int, b: int, field: "QuadraticField"):
        self._field = field
        self._a = a % field.p
        self._b = b % field.p

    @property
    def field(self) -> "QuadraticField":
        return self._field

    @property
    def modulus(self) -> int:
        return self._field.p

    @property
    def nonresidue(self) -> int:
        return self._field.d

    @property
    def a(self) -> PrimeFieldElement:
        return PrimeFieldElement(self._a, self._field.base)

    @property
    def b(self) -> PrimeFieldElement:
        return PrimeFieldElement(self._b, self._field.base)

    def _key(self):
        return (self._b, self._a)

    def _add(self, other):
        return QuadExtElement(self._a + other._a, self._b + other._b, self._field)

    def _mul(self, other):
        a, b, c, e = self._a, self._b, other._a, other._b
        return QuadExtElement(a * c + b * e * self._field.d, a * e + b * c, self._field)

    def _neg(self):
        return QuadExtElement(-self._a, -self._b, self._field)

    def inverse(self):
        p = self._field.p
        norm = (self._a * self._a - self._field.d * self._b * self._b) % p
        if norm == 0:
            raise ZeroDivisionError("inverse of 0")
        n_inv = pow(norm, -1, p)
        return QuadExtElement(self._a * n_inv, -self._b * n_inv, self._field)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._field, self._key()))

    def __str__(self):
        if self._b == 0:
            return str(self._a)
        return f"{self._a}+{self._b}*s"


class Field:
    """Field descriptor base."""

    characteristic: int = 0
    is_finite: bool = False

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return str(self)

    @cached_property
    def zero(self) -> FieldScalar:
        return self.coerce(0)

    @cached_property
    def one(self) -> FieldScalar:
        return self.coerce(1)

    def from_int(self, k: int) -> FieldScalar:
        return self.coerce(k)

    def half(self) -> FieldScalar:
        return self.coerce(Fraction(1, 2))

    def __call__(self, value) -> FieldScalar:
        if isinstance(value, str):
            return self.parse(value)
        return self.coerce(value)

    def coerce(self, value) -> FieldScalar:
        raise NotImplementedError

    def parse(self, text: str) -> FieldScalar:
        raise NotImplementedError

    def elements(self) -> List[FieldScalar]:
        raise FieldError(f"{self} is infinite; no element enumeration")

    @property
    def order(self) -> Optional[int]:
        return None


def _parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise FieldError(f"malformed scalar {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise FieldError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


class RationalField(Field):
    characteristic = 0
    is_finite = False

    def _key(self):
        return 0

    def __str__(self):
        return "Q"

    def coerce(self, value) -> Rational:
        if isinstance(value, Rational):
            return value
        if isinstance(value, (int, Fraction)):
            return Rational(value)
        raise FieldError(f"cannot coerce {value!r} into Q")

    def parse(self, text: str) -> Rational:
        return Rational(_parse_fraction(text))


RATIONALS = RationalField()


class PrimeField(Field):
    is_finite = True

    def __init__(self, p: int):
        if p == 2 or not isprime(p):
            raise FieldError(f"GF({p}) is not allowed: the modulus must be an odd prime")
        self.p = p
        self.characteristic = p
        self._elements: Optional[List[PrimeFieldElement]] = None

    def _key(self):
        return self.p

    def __str__(self):
        return f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p

    def coerce(self, value) -> PrimeFieldElement:
        if isinstance(value, PrimeFieldElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} scalar into {self}")
            return value
        if isinstance(value, Rational):
            value = value.value
        if isinstance(value, int):
            return PrimeFieldElement(value, self)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} is not reducible mod {self.p}")
            return PrimeFieldElement(value.numerator * pow(value.denominator, -1, self.p), self)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def parse(self, text: str) -> PrimeFieldElement:
        return self.coerce(_parse_fraction(text))

    def elements(self) -> List[PrimeFieldElement]:
        if self._elements is None:
            self._elements = [PrimeFieldElement(v, self) for v in range(self.p)]
        return list(self._elements)

    def extension(self) -> "QuadraticField":
        return QuadraticField(self.p)


def least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if not is_quad_residue(a, p):
            return a
    raise FieldError(f"no quadratic nonresidue mod {p}")


_EXT_TERM = re.compile(r"([+-]?)([^+-]+)")


class QuadraticField(Field):
    is_finite = True

    def __init__(self, p: int):
        self.base = PrimeField(p)
        self.p = p
        self.characteristic = p
        self.d = least_nonresidue(p)
        self._elements: Optional[List[QuadExtElement]] = None

    def _key(self):
        return self.p

    def __str__(self):
        return f"GF({self.p}^2)"

    @property
    def order(self) -> int:
        return self.p * self.p

    @property
    def generator(self) -> QuadExtElement:
        """The adjoined square root s of d."""
        return QuadExtElement(0, 1, self)

    def coerce(self, value) -> QuadExtElement:
        if isinstance(value, QuadExtElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} scalar into {self}")
            return value
        if isinstance(value, PrimeFieldElement):
            if value.field != self.base:
                raise FieldError(f"cannot coerce {value.field} scalar into {self}")
            return QuadExtElement(value.value, 0, self)
        return QuadExtElement(self.base.coerce(value).value, 0, self)

    def parse(self, text: str) -> QuadExtElement:
        compact = text.replace(" ", "")
        if not compact:
            raise FieldError("empty scalar")
        a = Fraction(0)
        b = Fraction(0)
        consumed = 0
        for match in _EXT_TERM.finditer(compact):
            if match.start() != consumed:
                raise FieldError(f"malformed scalar {text!r}")
            consumed = match.end()
            sign = -1 if match.group(1) == "-" else 1
            body = match.group(2)
            if body.endswith("s"):
                coeff = body[:-1].rstrip("*")
                b += sign * (_parse_fraction(coeff) if coeff else Fraction(1))
            else:
                a += sign * _parse_fraction(body)
        if consumed != len(compact):
            raise FieldError(f"malformed scalar {text!r}")
        return self.coerce(a) + self.coerce(b) * self.generator

    def elements(self) -> List[QuadExtElement]:
        if self._elements is None:
            self._elements = [QuadExtElement(a, b, self) for b in range(self.p) for a in range(self.p)]
        return list(self._elements)

    def extension(self) -> "QuadraticField":
        return self


def field_sqrt(x: FieldScalar) -> Optional[FieldScalar]:
    """
    Least square root of a finite-field scalar.

    Args:
        x (FieldScalar): element of GF(p) or GF(p^2).

    Returns:
        Optional[FieldScalar]: the first r in canonical order with r*r == x, or None.
    """
    if not x.field.is_finite:
        raise FieldError("square roots are only computed over finite fields")
    for r in x.field.elements():
        if r * r == x:
            return r
    return None


def half(field: Field) -> FieldScalar:
    return field.half()


def characteristic_warning(field: Field) -> Optional[str]:
    if field.characteristic == 3:
        return CHAR3_BANNER
    return None


def warn_characteristic(field: Field) -> Optional[str]:
    banner = characteristic_warning(field)
    if banner:
        logger.warning(banner)
    return banner


def field_from_spec(spec: Any) -> Field:
    """
    Build a field descriptor from its ".sca" form: "rational",
    {"prime": p} or {"prime": p, "ext": true}.
    """
    if spec == "rational":
        return RATIONALS
    if isinstance(spec, dict) and "prime" in spec:
        if spec.get("ext"):
            return QuadraticField(int(spec["prime"]))
        return PrimeField(int(spec["prime"]))
    raise FieldError(f"unknown field specification {spec!r}")


def field_to_spec(field: Field) -> Union[str, Dict[str, Any]]:
    if isinstance(field, RationalField):
        return "rational"
    if isinstance(field, QuadraticField):
        return {"prime": field.p, "ext": True}
    return {"prime": field.p}


def make_field(prime: Optional[int] = None, ext: bool = False) -> Field:
    if prime is None:
        if ext:
            raise FieldError("--ext needs a prime")
        return RATIONALS
    return QuadraticField(prime) if ext else PrimeField(prime)
