"""Saved run profiles: a small ``key: value`` text format.

Example::

    corridors: 3
    slope 1: 33 56 65
    slope 2: 119 120 169
    slope 3: 56 33 65
    min_final_slope: 1 0 1
    max_final_slope: 1 0 1
    report_granularity: 1/100
    target_upper: 5/2

A slope ``a b c`` is the angle with sine ``a/c`` and cosine ``b/c``. Blank
lines and lines starting with ``#`` are ignored; any other unknown key is an
error. :func:`serialize` writes the canonical form, which parses back to an
equal profile.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Tuple

from .bnb import PRIORITY_MODES, SPLIT_RULES, EngineConfig, ProblemSpec
from .kernel import PythagoreanAngle


class ProfileError(ValueError):
    """A profile problem; ``code`` names the kind, ``line`` is 1-based or None."""

    def __init__(self, code, message, line=None):
        self.code = code
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


Triple = Tuple[int, int, int]

OPTIONAL_KEYS = ("target_upper", "max_iterations", "max_time_seconds", "priority_mode", "split_rule", "gap")


@dataclass(frozen=True)
class Profile:
    corridor_triples: Tuple[Triple, ...]
    min_final_triple: Triple = (1, 0, 1)
    max_final_triple: Triple = (1, 0, 1)
    report_granularity: Fraction = Fraction(1, 100)
    target_upper: Optional[Fraction] = None
    max_iterations: Optional[int] = None
    max_time_seconds: Optional[Fraction] = None
    priority_mode: Optional[str] = None
    split_rule: Optional[str] = None
    gap: Optional[Fraction] = None

    def angles(self):
        return tuple(PythagoreanAngle(*t) for t in self.corridor_triples)

    def spec(self):
        return ProblemSpec(self.angles(), PythagoreanAngle(*self.min_final_triple), PythagoreanAngle(*self.max_final_triple))

    def config(self, **overrides):
        kw = dict(report_granularity=self.report_granularity, target_upper=self.target_upper,
                  max_iterations=self.max_iterations, gap=self.gap)
        if self.max_time_seconds is not None:
            kw["max_time"] = float(self.max_time_seconds)
        if self.priority_mode is not None:
            kw["priority_mode"] = self.priority_mode
        if self.split_rule is not None:
            kw["split_rule"] = self.split_rule
        kw.update(overrides)
        return EngineConfig(**kw)

    @property
    def has_stop(self):
        return any(v is not None for v in (self.target_upper, self.max_iterations, self.max_time_seconds, self.gap))


def _triple(text, lineno):
    parts = text.split()
    if len(parts) != 3:
        raise ProfileError("malformed_triple", f"expected three integers 'a b c', got {text!r}", lineno)
    try:
        a, b, c = (int(p) for p in parts)
    except ValueError:
        raise ProfileError("malformed_triple", f"triple {text!r} has a non-integer entry", lineno) from None
    if a < 0 or b < 0 or c <= 0:
        raise ProfileError("malformed_triple", f"triple {text!r} needs a, b >= 0 and c > 0", lineno)
    if a * a + b * b != c * c:
        raise ProfileError("not_pythagorean", f"{a} {b} {c} is not Pythagorean ({a}^2 + {b}^2 != {c}^2)", lineno)
    if a == 0:
        raise ProfileError("bad_angle", f"{a} {b} {c} is angle 0, outside (0, 90] degrees", lineno)
    if math.gcd(math.gcd(a, b), c) != 1:
        raise ProfileError("not_reduced", f"{a} {b} {c} is not in lowest terms", lineno)
    return (a, b, c)


def _rational(text, key, lineno, positive=True):
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ProfileError("bad_value", f"{key} must be a rational like 1/100 or 2.5, got {text!r}", lineno) from None
    if positive and value <= 0:
        raise ProfileError("bad_value", f"{key} must be positive", lineno)
    return value


def _sin_less(t1, t2):
    return t1[0] * t2[2] < t2[0] * t1[2]


def parse_profile(text):
    seen = {}
    slopes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ProfileError("syntax", f"expected 'key: value', got {line!r}", lineno)
        key = " ".join(key.lower().split())
        value = value.strip()
        if key.startswith("slope "):
            idx = key[6:]
            if not idx.isdigit() or int(idx) < 1:
                raise ProfileError("unknown_key", f"bad slope index in {key!r}", lineno)
            if int(idx) in slopes:
                raise ProfileError("duplicate_key", f"{key!r} given twice", lineno)
            slopes[int(idx)] = (_triple(value, lineno), lineno)
            continue
        if key in seen:
            raise ProfileError("duplicate_key", f"{key!r} given twice", lineno)
        if key not in ("corridors", "min_final_slope", "max_final_slope", "report_granularity") + OPTIONAL_KEYS:
            raise ProfileError("unknown_key", f"unknown key {key!r}", lineno)
        seen[key] = (value, lineno)

    if "corridors" not in seen:
        raise ProfileError("missing_key", "missing 'corridors'")
    value, lineno = seen["corridors"]
    if not value.isdigit() or int(value) < 1:
        raise ProfileError("bad_value", f"corridors must be a positive integer, got {value!r}", lineno)
    k = int(value)
    if sorted(slopes) != list(range(1, k + 1)):
        raise ProfileError("corridor_count", f"expected slopes 1..{k}, got {sorted(slopes) or 'none'}")
    triples = tuple(slopes[i][0] for i in range(1, k + 1))
    for i in range(1, k):
        if not _sin_less(triples[i - 1], triples[i]):
            raise ProfileError("unordered_corridors", f"slope {i + 1} must be a larger angle than slope {i}", slopes[i + 1][1])
    if triples[-1][1] == 0:
        raise ProfileError("bad_angle", "corridor angles must be below 90 degrees", slopes[k][1])

    kw = {}
    for key in ("min_final_slope", "max_final_slope"):
        if key not in seen:
            raise ProfileError("missing_key", f"missing {key!r}")
        kw[key] = _triple(*seen[key])
    lo, hi = kw.pop("min_final_slope"), kw.pop("max_final_slope")
    if _sin_less(hi, lo):
        raise ProfileError("final_reversed", "min_final_slope exceeds max_final_slope", seen["max_final_slope"][1])
    if not _sin_less(triples[-1], lo):
        raise ProfileError("final_too_small", "min_final_slope must exceed the last corridor angle", seen["min_final_slope"][1])

    if "report_granularity" not in seen:
        raise ProfileError("missing_key", "missing 'report_granularity'")
    gran = _rational(seen["report_granularity"][0], "report_granularity", seen["report_granularity"][1])

    for key in ("target_upper", "gap", "max_time_seconds"):
        if key in seen:
            kw[key] = _rational(seen[key][0], key, seen[key][1])
    if "max_iterations" in seen:
        value, lineno = seen["max_iterations"]
        if not value.isdigit() or int(value) < 1:
            raise ProfileError("bad_value", f"max_iterations must be a positive integer, got {value!r}", lineno)
        kw["max_iterations"] = int(value)
    for key, allowed in (("priority_mode", PRIORITY_MODES), ("split_rule", SPLIT_RULES)):
        if key in seen:
            value, lineno = seen[key]
            if value not in allowed:
                raise ProfileError("bad_value", f"{key} must be one of {', '.join(allowed)}", lineno)
            kw[key] = value
    return Profile(triples, lo, hi, gran, **kw)


def _t(triple):
    return " ".join(map(str, triple))


def serialize(profile):
    lines = [f"corridors: {len(profile.corridor_triples)}"]
    lines += [f"slope {i}: {_t(t)}" for i, t in enumerate(profile.corridor_triples, 1)]
    lines.append(f"min_final_slope: {_t(profile.min_final_triple)}")
    lines.append(f"max_final_slope: {_t(profile.max_final_triple)}")
    lines.append(f"report_granularity: {profile.report_granularity}")
    for key in OPTIONAL_KEYS:
        value = getattr(profile, key)
        if value is not None:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# -- bundled profiles --------------------------------------------------------

BUNDLED = ("example-30-45-60", "thm9-bound1", "thm9-bound2", "thm9-bound3", "thm9-bound4")


def bundled_text(name):
    name = name[:-4] if name.endswith(".txt") else name
    if name not in BUNDLED:
        raise KeyError(f"no bundled profile named {name!r}")
    return resources.files(__package__).joinpath("data", f"{name}.txt").read_text(encoding="utf-8")


def load_profile(path_or_name):
    """Read a profile from a file, falling back to the bundled profile of that name."""
    path = Path(path_or_name)
    if path.is_file():
        return parse_profile(path.read_text(encoding="utf-8"))
    try:
        return parse_profile(bundled_text(str(path_or_name)))
    except KeyError:
        raise FileNotFoundError(f"no profile file {str(path_or_name)!r}") from None
