"""Exact coefficient fields: arbitrary-precision rationals and odd prime fields.

Every value is a FieldElement tagged with the field it lives in.  Rational
values are backed by fractions.Fraction, so they are always reduced (gcd of
numerator and denominator is 1, denominator positive).  Prime-field values are
least residues in [0, p).  Elements of distinct fields never combine: any
attempt raises FieldMismatchError.  All operations are pure and elements are
immutable, so they can be shared freely.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Union

__all__ = [
    "Field",
    "FieldElement",
    "FieldMismatchError",
    "GF",
    "PrimeField",
    "QQ",
    "RationalField",
]

Scalar = Union["FieldElement", int, Fraction]

# p must fit in a machine word: the 1 1/2 logarithm sums p - 1 terms and the
# char-p series caps live at precision p, so huge primes are useless here.
_WORD_SIZE_LIMIT = 1 << 63

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldMismatchError(ValueError):
    """An operation mixed elements of two distinct fields."""


class Field:
    """Common interface of the two coefficient fields."""

    characteristic: int

    def element(self, value: Scalar) -> FieldElement:
        raise NotImplementedError

    @property
    def zero(self) -> FieldElement:
        return self._zero

    @property
    def one(self) -> FieldElement:
        return self._one

    def random_element(self, rng: random.Random, height_bound: int = 10) -> FieldElement:
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers; use the module-level singleton QQ."""

    characteristic = 0

    def __init__(self) -> None:
        self._zero = FieldElement(self, Fraction(0))
        self._one = FieldElement(self, Fraction(1))

    def element(self, value: Scalar) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError(f"cannot reinterpret {value!r} as rational")
            return value
        return FieldElement(self, Fraction(value))

    def random_element(self, rng: random.Random, height_bound: int = 10) -> FieldElement:
        """Numerator uniform in [-height_bound, height_bound], denominator in [1, height_bound]."""
        if height_bound < 1:
            raise ValueError("height_bound must be >= 1")
        num = rng.randint(-height_bound, height_bound)
        den = rng.randint(1, height_bound)
        return FieldElement(self, Fraction(num, den))

    def __repr__(self) -> str:
        return "QQ"


class PrimeField(Field):
    """The prime field of odd characteristic p; use GF(p) to construct."""

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or p < 3:
            raise ValueError(f"prime field characteristic must be an odd prime >= 3, got {p}")
        if p % 2 == 0:
            raise ValueError("characteristic 2 is not supported")
        if p >= _WORD_SIZE_LIMIT:
            raise ValueError(f"characteristic must fit in a machine word, got {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero = FieldElement(self, 0)
        self._one = FieldElement(self, 1)

    def element(self, value: Scalar) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError(f"cannot reinterpret {value!r} in GF({self.p})")
            return value
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes in GF({self.p})")
            num = value.numerator % self.p
            return FieldElement(self, num * pow(den, self.p - 2, self.p) % self.p)
        return FieldElement(self, value % self.p)

    def random_element(self, rng: random.Random, height_bound: int = 10) -> FieldElement:
        """Uniform least residue; height_bound is accepted for interface parity."""
        return FieldElement(self, rng.randrange(self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class FieldElement:
    """An immutable element of QQ or GF(p), in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value) -> None:
        self.field = field
        self.value = value

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"cannot combine element of {self.field!r} with element of {other.field!r}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.element(other)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.field.characteristic == 0:
            return FieldElement(self.field, self.value + rhs.value)
        return FieldElement(self.field, (self.value + rhs.value) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.field.characteristic == 0:
            return FieldElement(self.field, self.value - rhs.value)
        return FieldElement(self.field, (self.value - rhs.value) % self.field.p)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs - self

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.field.characteristic == 0:
            return FieldElement(self.field, self.value * rhs.value)
        return FieldElement(self.field, self.value * rhs.value % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs * self.inverse()

    def __neg__(self):
        if self.field.characteristic == 0:
            return FieldElement(self.field, -self.value)
        return FieldElement(self.field, -self.value % self.field.p)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.field.characteristic == 0:
            return FieldElement(self.field, self.value ** exponent)
        return FieldElement(self.field, pow(self.value, exponent, self.field.p))

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError(f"0 has no inverse in {self.field!r}")
        if self.field.characteristic == 0:
            return FieldElement(self.field, 1 / self.value)
        p = self.field.p
        return FieldElement(self.field, pow(self.value, p - 2, p))

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            rhs = self._coerce(other)
        except FieldMismatchError:
            return False
        if rhs is None:
            return NotImplemented
        return self.value == rhs.value

    def __hash__(self) -> int:
        return hash((self.field.characteristic, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"{self.value} in {self.field!r}"


QQ = RationalField()

_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements, p an odd prime."""
    field = _PRIME_FIELDS.get(p)
    if field is None:
        field = PrimeField(p)
        _PRIME_FIELDS[p] = field
    return field
