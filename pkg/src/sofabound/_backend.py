"""Selection of the exact rational type used everywhere in the package.

``SOFABOUND_RATIONAL=gmpy2`` (default when importable) uses ``gmpy2.mpq``;
``SOFABOUND_RATIONAL=fraction`` forces the pure-Python ``fractions.Fraction``.
Both are exact; the choice only affects speed.
"""

import os
from fractions import Fraction

_requested = os.environ.get("SOFABOUND_RATIONAL", "auto").strip().lower()

if _requested not in ("auto", "gmpy2", "fraction"):
    raise ImportError(f"SOFABOUND_RATIONAL must be auto, gmpy2 or fraction, got {_requested!r}")

BACKEND = "fraction"
Q = Fraction

if _requested in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as _mpq
    except ImportError:
        if _requested == "gmpy2":
            raise
    else:
        Q = _mpq
        BACKEND = "gmpy2"

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def as_q(value):
    """Coerce an int, Fraction, mpq or decimal/fraction string to the backend type."""
    if isinstance(value, str):
        return Q(Fraction(value.strip()))
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(value, Fraction) and Q is not Fraction:
        return Q(value.numerator, value.denominator)
    return Q(value)


def to_fraction(value):
    """Backend rational -> ``fractions.Fraction`` (for hashing, printing, serialisation)."""
    return Fraction(int(value.numerator), int(value.denominator))
