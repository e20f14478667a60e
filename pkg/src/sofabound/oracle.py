"""Independent reference values: the one-corridor closed form, named constants,
and a brute-force lower bound from sampling ``g`` on nested dyadic grids."""

from dataclasses import dataclass

from ._backend import Q
from .bnb import ELL0_RIGHT, BoxE, SceneEvaluator, initial_box
from .scene import Interval


@dataclass(frozen=True)
class ConstantEnclosure:
    """The real number called ``name`` lies in ``[lo, hi]``."""

    name: str
    lo: object
    hi: object

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"enclosure for {self.name} is reversed")

    def contains(self, value):
        return self.lo <= value <= self.hi


def closed_form_single_angle(alpha):
    """``sec a + csc a``: the exact value of the one-corridor problem."""
    if alpha.is_right or alpha.cos_num == alpha.denom:
        raise ValueError("closed form needs 0 < alpha < 90 degrees")
    return Q(alpha.denom, alpha.cos_num) + Q(alpha.denom, alpha.sin_num)


MU_G = ConstantEnclosure("mu_G", Q(22195, 10000), Q(22196, 10000))
ELL0 = ConstantEnclosure("ell0", ELL0_RIGHT, ELL0_RIGHT)
TWO_SQRT2 = ConstantEnclosure("2*sqrt(2)", Q(28284, 10000), Q(28285, 10000))


def constants():
    """Gerver's constant, the starting lower bound and Hammersley's bound."""
    return [MU_G, ELL0, TWO_SQRT2]


def _halves(box, i):
    iv = box.intervals[i]
    m = iv.mid
    ivs = box.intervals
    return (
        BoxE(ivs[:i] + (Interval(iv.lo, m),) + ivs[i + 1 :]),
        BoxE(ivs[:i] + (Interval(m, iv.hi),) + ivs[i + 1 :]),
    )


def grid_points(spec, depth):
    """Sample translations: midpoints of every cell of a round-robin bisection tree.

    Level 0 is the midpoint of the initial box; level ``d`` bisects every
    level ``d-1`` cell across the next free coordinate in cyclic order. The
    point set at depth ``d`` contains the set at depth ``d-1``.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    root = initial_box(spec)
    free = [i for i, iv in enumerate(root.intervals) if not iv.degenerate]
    level = [root]
    points = [root.midpoint()]
    for d in range(depth):
        if not free:
            break
        i = free[d % len(free)]
        level = [half for box in level for half in _halves(box, i)]
        points.extend(box.midpoint() for box in level)
    return points


def grid_lower_bound(spec, depth):
    """Max of ``g`` over :func:`grid_points`; a certified lower bound on ``G``."""
    ev = SceneEvaluator(spec)
    best = None
    for u in grid_points(spec, depth):
        v = ev.largest_component(BoxE.at(u))
        if best is None or v > best:
            best = v
    return best
