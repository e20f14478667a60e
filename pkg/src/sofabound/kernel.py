"""Exact scalars, rational angles, points and rotations."""

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import NamedTuple, Optional

from ._backend import Q, as_q

CCW = "ccw"
CW = "cw"


class Point(NamedTuple):
    x: object
    y: object

    @classmethod
    def of(cls, x, y):
        return cls(as_q(x), as_q(y))


class TrigRatios(NamedTuple):
    sin: object
    cos: object
    tan: Optional[object]
    sec: Optional[object]
    csc: Optional[object]


@total_ordering
@dataclass(frozen=True)
class PythagoreanAngle:
    """Angle in (0, 90] degrees whose sine and cosine are rational.

    Stored as ``(sin_num, cos_num, denom)``, the order used in profile files,
    so ``PythagoreanAngle(33, 56, 65)`` has sine 33/65.
    """

    sin_num: int
    cos_num: int
    denom: int

    def __post_init__(self):
        a, b, c = self.sin_num, self.cos_num, self.denom
        if c <= 0 or a < 0 or b < 0:
            raise ValueError(f"triple ({a}, {b}, {c}) must have a >= 0, b >= 0, c > 0")
        if a * a + b * b != c * c:
            raise ValueError(f"triple ({a}, {b}, {c}) is not Pythagorean: {a}^2 + {b}^2 != {c}^2")
        if a == 0:
            raise ValueError("angle 0 is outside the admissible range (0, 90] degrees")
        if math.gcd(math.gcd(a, b), c) != 1:
            raise ValueError(f"triple ({a}, {b}, {c}) is not canonical; use angle_from_triple")

    @property
    def triple(self):
        return (self.sin_num, self.cos_num, self.denom)

    @property
    def sin(self):
        return Q(self.sin_num, self.denom)

    @property
    def cos(self):
        return Q(self.cos_num, self.denom)

    @property
    def is_right(self):
        return self.cos_num == 0

    def degrees(self):
        """Floating approximation, for display only."""
        return math.degrees(math.atan2(self.sin_num, self.cos_num))

    def complement(self):
        """The angle 90 degrees minus this one (swaps sine and cosine)."""
        return PythagoreanAngle(self.cos_num, self.sin_num, self.denom)

    def __lt__(self, other):
        if not isinstance(other, PythagoreanAngle):
            return NotImplemented
        # sine is strictly increasing on (0, 90]
        return self.sin_num * other.denom < other.sin_num * self.denom

    def __str__(self):
        return f"{self.sin_num} {self.cos_num} {self.denom}"


def angle_from_triple(a, b, c):
    """Build the canonical angle with sin = a/c and cos = b/c."""
    a, b, c = int(a), int(b), int(c)
    if c <= 0 or a < 0 or b < 0:
        raise ValueError(f"triple ({a}, {b}, {c}) must have a >= 0, b >= 0, c > 0")
    if a * a + b * b != c * c:
        raise ValueError(f"triple ({a}, {b}, {c}) is not Pythagorean: {a}^2 + {b}^2 != {c}^2")
    if a == 0:
        raise ValueError("angle 0 is outside the admissible range (0, 90] degrees")
    g = math.gcd(math.gcd(a, b), c)
    return PythagoreanAngle(a // g, b // g, c // g)


RIGHT_ANGLE = PythagoreanAngle(1, 0, 1)


def trig_ratios(theta):
    """All five ratios of ``theta``; tan/sec are None at 90 degrees."""
    a, b, c = theta.triple
    tan = Q(a, b) if b else None
    sec = Q(c, b) if b else None
    csc = Q(c, a) if a else None
    return TrigRatios(Q(a, c), Q(b, c), tan, sec, csc)


def rotate(p, theta, sense=CCW):
    """Exact rotation of ``p`` about the origin."""
    s, c = theta.sin, theta.cos
    if sense == CW:
        s = -s
    elif sense != CCW:
        raise ValueError(f"sense must be {CCW!r} or {CW!r}")
    x, y = p
    return Point(x * c - y * s, x * s + y * c)
