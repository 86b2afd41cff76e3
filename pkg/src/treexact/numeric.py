"""Numeric policy layer: exact rationals or epsilon-tolerant floats.

Every matrix and tree carries one policy, and all comparisons inside a
computation go through it. The default exact policy keeps values as
`fractions.Fraction`, so equalities between pair sums are decided without
rounding and decimal input strings survive a parse/serialize round trip
unchanged. The float policy is meant for measured data; its equality is
``|x - y| <= epsilon * max(1, |x|, |y|)``.

Mixing objects built under different policies in one computation raises
`PolicyMismatch`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union

from .errors import PolicyMismatch

Scalar = Union[Fraction, float]

__all__ = [
    "Scalar",
    "Policy",
    "ExactPolicy",
    "FloatPolicy",
    "EXACT",
    "ensure_same_policy",
]


def _fraction_to_text(value: Fraction) -> str:
    """Render a rational losslessly: decimal when terminating, 'p/q' otherwise."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    twos = fives = 0
    rest = den
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{num}/{den}"
    places = max(twos, fives)
    scaled = abs(num) * 10**places // den
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if num < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True)
class ExactPolicy:
    """Exact rational arithmetic; equality and order are literal."""

    name: ClassVar[str] = "exact"

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, float):
            # Read the decimal literal, not the binary expansion.
            return Fraction(str(value))
        raise TypeError(f"cannot interpret {value!r} as an exact rational")

    def eq(self, x, y) -> bool:
        return x == y

    def lt(self, x, y) -> bool:
        return x < y

    def le(self, x, y) -> bool:
        return x <= y

    def is_positive(self, x) -> bool:
        return x > 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def format(self, value) -> str:
        return _fraction_to_text(value)

    # json.loads hook receiving the raw float literal text
    json_parse_float = Fraction


@dataclass(frozen=True)
class FloatPolicy:
    """IEEE floats with a combined relative/absolute equality tolerance."""

    epsilon: float = 1e-9

    name: ClassVar[str] = "float"

    def __post_init__(self):
        if not (isinstance(self.epsilon, (int, float)) and self.epsilon > 0):
            raise ValueError(f"epsilon must be a positive real, got {self.epsilon!r}")

    def parse(self, text: str) -> float:
        value = float(text)
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {text!r}")
        return value

    def coerce(self, value) -> float:
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"non-finite value {value!r}")
        return out

    def eq(self, x, y) -> bool:
        return abs(x - y) <= self.epsilon * max(1.0, abs(x), abs(y))

    def lt(self, x, y) -> bool:
        return x < y and not self.eq(x, y)

    def le(self, x, y) -> bool:
        return x < y or self.eq(x, y)

    def is_positive(self, x) -> bool:
        return self.lt(0.0, x)

    def zero(self) -> float:
        return 0.0

    def format(self, value) -> str:
        return repr(float(value))

    json_parse_float = staticmethod(float)


Policy = Union[ExactPolicy, FloatPolicy]

EXACT = ExactPolicy()


def ensure_same_policy(*objects) -> Policy:
    """Return the common policy of the given carriers or raise PolicyMismatch."""
    policy = objects[0].policy
    for obj in objects[1:]:
        if obj.policy != policy:
            raise PolicyMismatch(
                f"cannot mix numeric policies {policy.name!r} and {obj.policy.name!r} "
                "in one computation"
            )
    return policy
