"""Constructors for the strips, hallways, butterfly sets and their thickenings.

Two layers live here. The public constructors return :class:`Region` values.
The ``*_pieces`` helpers return the same sets as tuples of convex pieces with
pairwise disjoint interiors (raw half-plane triples), which is what the
branch-and-bound engine feeds to the clipping kernel.

Coordinates rotated by an angle ``theta`` are ``s = x cos + y sin`` (along the
rotated horizontal) and ``t = -x sin + y cos`` (along the rotated vertical).
"""

from dataclasses import dataclass

from ._backend import ONE, ZERO, as_q
from .kernel import Point
from .region import ConvexCell, HalfPlane, Region, difference

FIRST = "first"
SECOND = "second"


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval [{self.lo}, {self.hi}] is reversed")

    @classmethod
    def of(cls, lo, hi=None):
        lo = as_q(lo)
        return cls(lo, lo if hi is None else as_q(hi))

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def degenerate(self):
        return self.lo == self.hi

    def contains(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


# -- half-plane helpers in rotated coordinates --------------------------------


def _s_le(th, h):
    return (th.cos, th.sin, h)


def _s_ge(th, lo):
    return (-th.cos, -th.sin, -lo)


def _t_le(th, h):
    return (-th.sin, th.cos, h)


def _t_ge(th, lo):
    return (th.sin, -th.cos, -lo)


def _region(pieces, disjoint=True):
    cells = tuple(ConvexCell(tuple(HalfPlane(*hp) for hp in piece)) for piece in pieces)
    return Region(cells, None, disjoint)


def corridor_pieces(theta, s_lo, s_hi, t_lo, t_hi):
    """Disjoint pieces of ``{s_lo<=s<=s_hi, t<=t_hi} | {s<=s_hi, t_lo<=t<=t_hi}``.

    The vertical arm is cut at ``t <= min(t_lo, t_hi)`` so the two pieces only
    share boundary.
    """
    pieces = []
    if s_lo <= s_hi:
        pieces.append((_s_ge(theta, s_lo), _s_le(theta, s_hi), _t_le(theta, min(t_lo, t_hi))))
    if t_lo <= t_hi:
        pieces.append((_s_le(theta, s_hi), _t_ge(theta, t_lo), _t_le(theta, t_hi)))
    return tuple(pieces)


def hat_params(I, J):
    """Corridor bounds ``(s_lo, s_hi, t_lo, t_hi)`` of the thickened hallway."""
    return (I.lo, I.hi + 1, J.lo, J.hi + 1)


def tight_params(I, J, coord):
    """Bounds of the intersection over one coordinate of the thickened hallways.

    For ``coord=FIRST`` this is the set of points lying in the thickened
    hallway for every first coordinate in ``I``: the band ``u <= s <= u+1``
    tightens to ``I.hi <= s <= I.lo + 1`` and the arm end to ``s <= I.lo + 1``.
    ``SECOND`` does the same across the corridor.
    """
    if coord == FIRST:
        return (I.hi, I.lo + 1, J.lo, J.hi + 1)
    if coord == SECOND:
        return (I.lo, I.hi + 1, J.hi, J.lo + 1)
    raise ValueError(f"coord must be {FIRST!r} or {SECOND!r}")


def hat_pieces(theta, I, J):
    return corridor_pieces(theta, *hat_params(I, J))


def tight_pieces(theta, I, J, coord):
    return corridor_pieces(theta, *tight_params(I, J, coord))


def butterfly_pieces(beta1, beta2):
    """Disjoint pieces of the butterfly set, or None when it contains all of H."""
    if beta2.is_right:
        return None
    if beta1 == beta2:
        return ((_s_ge(beta1, ZERO), _s_le(beta1, ONE)),)
    return (
        (_s_ge(beta1, ZERO), _s_le(beta2, ONE)),
        (_s_le(beta1, ZERO), _s_ge(beta2, ZERO)),
        (_s_ge(beta1, ZERO), _s_le(beta1, ONE), _s_ge(beta2, ONE)),
    )


def corridor_x_range(theta, s_lo, s_hi, t_lo, t_hi):
    """Closed x-range containing ``H`` intersected with a corridor, or None if empty."""
    sin, cos = theta.sin, theta.cos
    spans = []
    if s_lo <= s_hi:
        # s_lo <= x cos + y sin <= s_hi with 0 <= y <= 1
        spans.append(((s_lo - sin) / cos, s_hi / cos))
    if t_lo <= t_hi:
        # t_lo <= -x sin + y cos <= t_hi, and x cos + y sin <= s_hi
        spans.append((-t_hi / sin, min((cos - t_lo) / sin, s_hi / cos)))
    spans = [sp for sp in spans if sp[0] <= sp[1]]
    if not spans:
        return None
    return min(sp[0] for sp in spans), max(sp[1] for sp in spans)


def butterfly_x_range(beta2):
    """``H`` meets the butterfly set only inside ``[-tan b2, sec b2] x [0, 1]``."""
    return -beta2.sin / beta2.cos, 1 / beta2.cos


# -- public Region constructors ----------------------------------------------


def make_strips():
    """The five basic sets: H, V, L_horiz, L_vert and their union L0."""
    x_le_1 = HalfPlane(ONE, ZERO, ONE)
    x_ge_0 = HalfPlane(-ONE, ZERO, ZERO)
    y_le_1 = HalfPlane(ZERO, ONE, ONE)
    y_ge_0 = HalfPlane(ZERO, -ONE, ZERO)
    H = Region((ConvexCell((y_ge_0, y_le_1)),), None, True)
    V = Region((ConvexCell((x_ge_0, x_le_1)),), None, True)
    horiz = ConvexCell((x_le_1, y_ge_0, y_le_1))
    vert = ConvexCell((x_ge_0, x_le_1, y_le_1))
    L0 = Region((horiz, vert), None, False)
    return H, V, Region((horiz,), None, True), Region((vert,), None, True), L0


def make_L(theta, u):
    """The hallway L0 translated by ``u`` and rotated by ``theta``."""
    if theta.is_right:
        raise ValueError("hallway angle must be strictly below 90 degrees")
    u = Point.of(*u)
    leg = (_s_ge(theta, u.x), _s_le(theta, u.x + 1), _t_le(theta, u.y + 1))
    arm = (_s_le(theta, u.x + 1), _t_ge(theta, u.y), _t_le(theta, u.y + 1))
    return _region((leg, arm), disjoint=False)


def make_butterfly(beta1, beta2):
    if beta2 < beta1:
        raise ValueError("butterfly needs beta1 <= beta2")
    first = (_s_ge(beta1, ZERO), _s_le(beta2, ONE))
    second = (_s_le(beta1, ONE), _s_ge(beta2, ZERO))
    return _region((first, second), disjoint=False)


def make_hat_L(theta, I, J):
    """Union of ``make_L(theta, (u, v))`` over ``u`` in ``I`` and ``v`` in ``J``."""
    if theta.is_right:
        raise ValueError("hallway angle must be strictly below 90 degrees")
    return _region(hat_pieces(theta, I, J))


def make_split_diff(theta, I, J, coord):
    """Thickened hallway minus its intersection over one coordinate's range."""
    if theta.is_right:
        raise ValueError("hallway angle must be strictly below 90 degrees")
    return difference(make_hat_L(theta, I, J), _region(tight_pieces(theta, I, J, coord)))
