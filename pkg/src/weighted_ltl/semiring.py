"""Exact weights in the Boolean semiring and the extended nonnegative rationals.

Two value types are provided, :class:`Bool` and :class:`ExtRat`.  Both support
``+`` (semiring addition) and ``*`` (semiring multiplication); mixing the two
kinds in one expression raises :class:`SemiringMismatch`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union


class SemiringMismatch(TypeError):
    """Raised when Boolean and rational weights meet in one operation."""


@dataclass(frozen=True)
class Bool:
    truth: bool

    def __add__(self, other: "SemiringValue") -> "Bool":
        if not isinstance(other, Bool):
            raise SemiringMismatch(f"cannot add {self!s} and {other!s}")
        return Bool(self.truth or other.truth)

    def __mul__(self, other: "SemiringValue") -> "Bool":
        if not isinstance(other, Bool):
            raise SemiringMismatch(f"cannot multiply {self!s} and {other!s}")
        return Bool(self.truth and other.truth)

    def __bool__(self) -> bool:
        return self.truth

    @property
    def semiring(self) -> "Semiring":
        return Semiring.BOOLEAN

    def is_zero(self) -> bool:
        return not self.truth

    def __str__(self) -> str:
        return "true" if self.truth else "false"


@dataclass(frozen=True)
class ExtRat:
    """A nonnegative rational, or positive infinity when ``infinite`` is set."""

    value: Fraction = Fraction(0)
    infinite: bool = False

    def __post_init__(self):
        value = Fraction(self.value)
        if value < 0:
            raise ValueError(f"negative weight {value}")
        if self.infinite:
            value = Fraction(0)
        object.__setattr__(self, "value", value)

    @classmethod
    def inf(cls) -> "ExtRat":
        return cls(Fraction(0), True)

    def __add__(self, other: "SemiringValue") -> "ExtRat":
        if not isinstance(other, ExtRat):
            raise SemiringMismatch(f"cannot add {self!s} and {other!s}")
        if self.infinite or other.infinite:
            return ExtRat.inf()
        return ExtRat(self.value + other.value)

    def __mul__(self, other: "SemiringValue") -> "ExtRat":
        if not isinstance(other, ExtRat):
            raise SemiringMismatch(f"cannot multiply {self!s} and {other!s}")
        # 0 annihilates, including against infinity
        if self.is_zero() or other.is_zero():
            return ExtRat(0)
        if self.infinite or other.infinite:
            return ExtRat.inf()
        return ExtRat(self.value * other.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _key(self, other) -> tuple:
        if isinstance(other, ExtRat):
            return (self.infinite, self.value), (other.infinite, other.value)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (self.infinite, self.value), (False, Fraction(other))
        raise TypeError(f"cannot compare {self!s} with {other!r}")

    def __lt__(self, other) -> bool:
        a, b = self._key(other)
        return a < b

    def __le__(self, other) -> bool:
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other) -> bool:
        a, b = self._key(other)
        return a > b

    def __ge__(self, other) -> bool:
        a, b = self._key(other)
        return a >= b

    @property
    def semiring(self) -> "Semiring":
        return Semiring.REAL

    def is_zero(self) -> bool:
        return not self.infinite and self.value == 0

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


SemiringValue = Union[Bool, ExtRat]


class Semiring(enum.Enum):
    BOOLEAN = "bool"
    REAL = "real"

    @property
    def zero(self) -> SemiringValue:
        return Bool(False) if self is Semiring.BOOLEAN else ExtRat(0)

    @property
    def one(self) -> SemiringValue:
        return Bool(True) if self is Semiring.BOOLEAN else ExtRat(1)

    def coerce(self, x) -> SemiringValue:
        """Turn a Python bool/int/Fraction/str into a weight of this semiring."""
        if isinstance(x, (Bool, ExtRat)):
            if x.semiring is not self:
                raise SemiringMismatch(f"{x!s} is not a {self.value} weight")
            return x
        if isinstance(x, str):
            return self.coerce(parse_weight(x))
        if self is Semiring.BOOLEAN:
            if isinstance(x, bool) or x in (0, 1):
                return Bool(bool(x))
            raise SemiringMismatch(f"{x!r} is not a Boolean weight")
        if isinstance(x, bool):
            return ExtRat(int(x))
        return ExtRat(Fraction(x))

    def indicator(self, condition: bool) -> SemiringValue:
        return self.one if condition else self.zero

    def sum(self, values: Iterable[SemiringValue]) -> SemiringValue:
        return reduce(add, values, self.zero)

    def product(self, values: Iterable[SemiringValue]) -> SemiringValue:
        return reduce(mul, values, self.one)

    @classmethod
    def of(cls, tag: str) -> "Semiring":
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown semiring tag {tag!r} (expected 'bool' or 'real')") from None


def add(x: SemiringValue, y: SemiringValue) -> SemiringValue:
    return x + y


def mul(x: SemiringValue, y: SemiringValue) -> SemiringValue:
    return x * y


_WEIGHT_RE = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_weight(text: str) -> SemiringValue:
    """Parse ``INT ("/" INT)? | "inf" | "true" | "false"``."""
    t = text.strip()
    if t == "true":
        return Bool(True)
    if t == "false":
        return Bool(False)
    if t == "inf":
        return ExtRat.inf()
    m = _WEIGHT_RE.match(t)
    if not m:
        raise ValueError(f"malformed weight literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in weight literal {text!r}")
    return ExtRat(Fraction(num, den))


def format_weight(x: SemiringValue) -> str:
    return str(x)
