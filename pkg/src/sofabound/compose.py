"""Turning certified bounds over angle ranges into statements about the sofa.

A :class:`RangeBound` says that for every final rotation angle ``beta`` in
``[beta_lo, beta_hi]`` the largest sofa area ``mu_*(beta)`` is at most
``bound``. A lower end of ``None`` stands for angle 0, which has no
rational triple with a positive sine.

The sofa constant is the sup of ``mu_*`` over ``[beta0, 90]`` where
``sec beta0 = mu_G``; since ``beta0`` is irrational, covers are checked
against the rational enclosure of ``mu_G`` instead.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from ._backend import Q, as_q, to_fraction
from .bnb import BoundCertificate
from .kernel import RIGHT_ANGLE, PythagoreanAngle
from .oracle import MU_G

BNB_CERTIFICATE = "bnb_certificate"
SECANT = "secant"
PROVENANCES = (BNB_CERTIFICATE, SECANT)

AREA_BOUND = "area_bound"
ROTATION_BOUND = "rotation_bound"


def _sec(beta):
    return Q(beta.denom, beta.cos_num)


@dataclass(frozen=True)
class RangeBound:
    beta_lo: Optional[PythagoreanAngle]
    beta_hi: PythagoreanAngle
    bound: object
    provenance: str
    reference: str = ""
    certificate: Optional[BoundCertificate] = None

    def __post_init__(self):
        object.__setattr__(self, "bound", as_q(self.bound))
        if self.beta_lo is not None and self.beta_hi < self.beta_lo:
            raise ValueError("range bound has beta_lo > beta_hi")

    @classmethod
    def from_certificate(cls, cert, reference=""):
        """The angle range a finished run speaks for, with its certified upper bound.

        A run with final angles ``[b1, b2]`` bounds ``mu_*`` on that range; with
        both final angles at 90 degrees it bounds every ``beta`` from the last
        corridor angle up to 90.
        """
        spec = cert.spec
        lo = spec.angles[-1] if spec.beta1.is_right else spec.beta1
        return cls(lo, spec.beta2, cert.upper, BNB_CERTIFICATE, reference, cert)

    def problem(self):
        """Why this bound cannot be used, or "" if it checks out."""
        if self.provenance == SECANT:
            if self.beta_lo is not None:
                return "a secant bound covers [0, beta] and must start at 0"
            if self.beta_hi.is_right:
                return "secant of 90 degrees is undefined"
            if self.bound < _sec(self.beta_hi):
                return f"secant bound {self.bound} is below sec = {_sec(self.beta_hi)}"
            return ""
        if self.provenance == BNB_CERTIFICATE:
            cert = self.certificate
            if cert is None:
                return "" if self.reference else "branch-and-bound bound has no certificate or reference"
            if cert.upper > self.bound:
                return f"certificate only proves {cert.upper}, not {self.bound}"
            backed = RangeBound.from_certificate(cert)
            if self.beta_lo is None or self.beta_lo < backed.beta_lo or backed.beta_hi < self.beta_hi:
                return "angle range is wider than the certificate covers"
            return ""
        return f"unknown provenance {self.provenance!r}"


def sec_bound(beta):
    """``mu_*(beta') <= sec beta`` for all ``beta' <= beta``."""
    if beta.is_right:
        raise ValueError("secant of 90 degrees is undefined")
    return RangeBound(None, beta, _sec(beta), SECANT, f"sec of {beta}")


@dataclass(frozen=True)
class TheoremResult:
    kind: str
    value: object
    inputs: Tuple[RangeBound, ...]


def _check(pieces):
    pieces = list(pieces)
    if not pieces:
        raise ValueError("no range bounds given")
    for p in pieces:
        why = p.problem()
        if why:
            raise ValueError(f"unverified piece [{_angle_text(p.beta_lo)} .. {p.beta_hi}]: {why}")
    return pieces


def _starts_by_beta0(piece, enclosure):
    # beta_lo <= beta0 is implied by sec(beta_lo) <= lo <= mu_G = sec(beta0)
    return piece.beta_lo is None or (
        not piece.beta_lo.is_right and _sec(piece.beta_lo) <= enclosure.lo
    )


def _below_beta0(piece, enclosure):
    return not piece.beta_hi.is_right and _sec(piece.beta_hi) < enclosure.lo


def _sweep(pieces, frontier):
    """Extend a covered prefix ending at ``frontier`` as far as the pieces reach."""
    used = []
    remaining = list(pieces)
    progress = True
    while progress:
        progress = False
        for p in list(remaining):
            if p.beta_lo is None or not frontier < p.beta_lo:
                remaining.remove(p)
                used.append(p)
                if frontier < p.beta_hi:
                    frontier = p.beta_hi
                progress = True
    return frontier, used


def compose_area_bound(pieces, mu_g=MU_G):
    """Bound the sofa constant by the pieces covering ``[beta0, 90]``."""
    pieces = _check(pieces)
    starts = [p for p in pieces if _starts_by_beta0(p, mu_g)]
    if not starts:
        raise ValueError("no piece starts at or below beta0 (sec of start must be <= mu_G lower end)")
    frontier = max(p.beta_hi for p in starts)
    frontier, _ = _sweep([p for p in pieces if p not in starts], frontier)
    if not frontier.is_right:
        raise ValueError(f"pieces leave a gap above {frontier}; cover must reach 90 degrees")
    relevant = tuple(p for p in pieces if not _below_beta0(p, mu_g))
    value = max(p.bound for p in relevant)
    return TheoremResult(AREA_BOUND, value, relevant)


def compose_rotation_bound(pieces, sofa_lower=None):
    """A maximal sofa rotates at least as far as the pieces cover from 0.

    Every piece must bound ``mu_*`` strictly below a known lower bound on
    the sofa constant, so no angle in the covered range can be optimal.
    """
    pieces = _check(pieces)
    if sofa_lower is None:
        sofa_lower = MU_G.lo
    for p in pieces:
        if p.bound >= sofa_lower:
            raise ValueError(f"piece bound {p.bound} is not below the sofa lower bound {sofa_lower}")
    starts = [p for p in pieces if p.beta_lo is None]
    if not starts:
        raise ValueError("no piece starts at angle 0")
    frontier = max(p.beta_hi for p in starts)
    frontier, used = _sweep([p for p in pieces if p not in starts], frontier)
    if len(used) + len(starts) != len(pieces):
        raise ValueError(f"pieces leave a gap above {frontier}")
    return TheoremResult(ROTATION_BOUND, frontier, tuple(pieces))


# -- proof ledger ------------------------------------------------------------


def _angle_text(beta):
    return "0 1 1" if beta is None else str(beta)


def _rational_text(q):
    f = to_fraction(q)
    return f"{f.numerator}/{f.denominator}"


def to_ledger(result):
    """Plain-text proof ledger: one line per piece, then the conclusion."""
    lines = []
    for p in sorted(result.inputs, key=lambda p: (p.beta_lo is not None, p.beta_lo or RIGHT_ANGLE)):
        ref = f" ({p.reference})" if p.reference else ""
        lines.append(
            f"piece [{_angle_text(p.beta_lo)} .. {p.beta_hi}] bound {_rational_text(p.bound)} {p.provenance}{ref}"
        )
    if result.kind == AREA_BOUND:
        lines.append(f"conclusion: mu_MS <= {_rational_text(result.value)}")
    else:
        lines.append(f"conclusion: maximal sofa rotates by at least asin({result.value.sin_num}/{result.value.denom})")
    return "\n".join(lines) + "\n"
