"""Geometric branch and bound over boxes of hallway translations.

For angles ``a_1 < ... < a_k`` and ``b1 <= b2`` the engine bounds the
maximum, over translations ``u_1..u_k``, of the largest connected area of
``H & L_{a_1}(u_1) & ... & L_{a_k}(u_k) & B(b1, b2)``. Boxes of
translations are scored with the same scene built from thickened hallways,
kept in a max-priority queue, and bisected one coordinate at a time.
"""

import heapq
import time
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Tuple

from . import _clip
from ._backend import ONE, ZERO, Q, as_q
from .kernel import RIGHT_ANGLE, Point, PythagoreanAngle, trig_ratios
from .scene import (
    FIRST,
    SECOND,
    Interval,
    butterfly_pieces,
    butterfly_x_range,
    corridor_pieces,
    corridor_x_range,
    hat_params,
    tight_params,
)

TOTAL_AREA = "total_area"
LARGEST_COMPONENT = "largest_component"
D_AREA = "d_area"
LONGEST_DIM = "longest_dim"

PRIORITY_MODES = (TOTAL_AREA, LARGEST_COMPONENT)
SPLIT_RULES = (D_AREA, LONGEST_DIM)

#: lower bound used when b2 = 90 degrees: Gerver's sofa area exceeds 11/5
ELL0_RIGHT = Q(11, 5)


@dataclass(frozen=True)
class ProblemSpec:
    angles: Tuple[PythagoreanAngle, ...]
    beta1: PythagoreanAngle = RIGHT_ANGLE
    beta2: PythagoreanAngle = RIGHT_ANGLE

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(self.angles))
        if not self.angles:
            raise ValueError("at least one corridor angle is required")
        for a in self.angles:
            if a.is_right:
                raise ValueError("corridor angles must be below 90 degrees")
        for a, b in zip(self.angles, self.angles[1:]):
            if not a < b:
                raise ValueError(f"corridor angles must be strictly increasing ({a} then {b})")
        if not self.angles[-1] < self.beta1:
            raise ValueError("the minimum final angle must exceed the last corridor angle")
        if self.beta2 < self.beta1:
            raise ValueError("minimum final angle exceeds maximum final angle")

    @property
    def k(self):
        return len(self.angles)

    @property
    def right_final(self):
        return self.beta2.is_right

    def ell0(self):
        return ELL0_RIGHT if self.right_final else ZERO


@dataclass(frozen=True)
class BoxE:
    """Product of ``2k`` intervals ordered ``I_1, J_1, ..., I_k, J_k``."""

    intervals: Tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if len(self.intervals) % 2:
            raise ValueError("a box needs an even number of intervals")

    @property
    def dim(self):
        return len(self.intervals)

    def corridor(self, j):
        return self.intervals[2 * j], self.intervals[2 * j + 1]

    def midpoint(self):
        mids = [iv.mid for iv in self.intervals]
        return [Point(mids[2 * j], mids[2 * j + 1]) for j in range(self.dim // 2)]

    def volume(self):
        v = ONE
        for iv in self.intervals:
            v *= iv.width
        return v

    @property
    def degenerate(self):
        return all(iv.degenerate for iv in self.intervals)

    @classmethod
    def at(cls, points):
        """Degenerate box at a single translation vector."""
        ivs = []
        for p in points:
            p = Point.of(*p)
            ivs += [Interval(p.x, p.x), Interval(p.y, p.y)]
        return cls(tuple(ivs))


@dataclass(frozen=True)
class EngineConfig:
    priority_mode: str = TOTAL_AREA
    split_rule: str = D_AREA
    target_upper: Optional[object] = None
    max_iterations: Optional[int] = None
    max_time: Optional[float] = None
    gap: Optional[object] = None
    report_granularity: object = Q(1, 100)

    def __post_init__(self):
        if self.priority_mode not in PRIORITY_MODES:
            raise ValueError(f"priority_mode must be one of {PRIORITY_MODES}")
        if self.split_rule not in SPLIT_RULES:
            raise ValueError(f"split_rule must be one of {SPLIT_RULES}")
        for name in ("target_upper", "gap", "report_granularity"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_q(value))

    @property
    def has_stop(self):
        return any(
            v is not None for v in (self.target_upper, self.max_iterations, self.max_time, self.gap)
        )


class Report(NamedTuple):
    iteration: int
    upper: object
    lower: object
    elapsed: float


@dataclass(frozen=True)
class BoundCertificate:
    """Proven bracket ``lower <= G <= upper`` for ``spec``."""

    spec: ProblemSpec
    upper: object
    lower: object
    iterations: int
    config: EngineConfig
    exhausted: bool
    stop_reason: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("certificate lower bound exceeds its upper bound")


@dataclass(order=False)
class QueueEntry:
    box: BoxE
    priority: object
    sequence: int

    def __lt__(self, other):
        # max-heap on priority, FIFO among equal priorities
        if self.priority != other.priority:
            return self.priority > other.priority
        return self.sequence < other.sequence


# -- initial box ---------------------------------------------------------------


def _slice_intervals(alpha, x1, x2):
    """Translation ranges that matter for a hallway seen through ``[x1, x2] x [0, 1]``.

    Outside them the hallway's trace on the slab is empty or repeats one
    attained inside.
    """
    s, c = alpha.sin, alpha.cos
    return Interval(x1 * c - 1, x2 * c + s), Interval(-x2 * s - 1, -x1 * s + c)


def initial_box(spec):
    """A box of translations guaranteed to contain a maximiser."""
    if not spec.right_final:
        x1, x2 = butterfly_x_range(spec.beta2)
        ivs = []
        for alpha in spec.angles:
            ivs.extend(_slice_intervals(alpha, x1, x2))
        return BoxE(tuple(ivs))
    # b2 = 90: the objective is invariant under a common horizontal shift, so
    # the first hallway is pinned at u_1 = (0, v) with v in [-tan - 1, sec];
    # beyond that range its trace on H is empty or splits into two rhombi.
    a1 = trig_ratios(spec.angles[0])
    I1 = Interval(ZERO, ZERO)
    J1 = Interval(-a1.tan - 1, a1.sec)
    # every hallway position in that slice keeps H & L_{a_1} inside this x-range
    x1, x2 = corridor_x_range(spec.angles[0], *hat_params(I1, J1))
    ivs = [I1, J1]
    for alpha in spec.angles[1:]:
        ivs.extend(_slice_intervals(alpha, x1, x2))
    return BoxE(tuple(ivs))


# -- scene evaluation ------------------------------------------------------------


class SceneEvaluator:
    """Evaluates scene areas for boxes of one problem instance."""

    def __init__(self, spec):
        self.spec = spec
        self._butterfly = butterfly_pieces(spec.beta1, spec.beta2)
        self._bx = None if self._butterfly is None else butterfly_x_range(spec.beta2)

    def _params(self, box):
        return [hat_params(*box.corridor(j)) for j in range(self.spec.k)]

    def _root(self, params):
        x_lo, x_hi = (None, None) if self._bx is None else self._bx
        for alpha, p in zip(self.spec.angles, params):
            rng = corridor_x_range(alpha, *p)
            if rng is None:
                return None
            x_lo = rng[0] if x_lo is None else max(x_lo, rng[0])
            x_hi = rng[1] if x_hi is None else min(x_hi, rng[1])
            if x_lo > x_hi:
                return None
        return [(_clip.rect(x_lo, x_hi, ZERO, ONE), ())]

    def cells(self, box, skip=None):
        """Expanded scene cells, omitting corridor ``skip`` if given.

        The root frame always accounts for every corridor, so the result may
        be re-expanded with any subset of the skipped corridor's set.
        """
        params = self._params(box)
        cells = self._root(params)
        if cells is None:
            return []
        if self._butterfly is not None:
            cells = _clip.expand(cells, self._butterfly)
        for j, (alpha, p) in enumerate(zip(self.spec.angles, params)):
            if j == skip:
                continue
            cells = _clip.expand(cells, corridor_pieces(alpha, *p))
            if not cells:
                break
        return cells

    def total_area(self, box):
        return _clip.cells_area(self.cells(box))

    def largest_component(self, box):
        return _clip.cells_largest_component(self.cells(box))[0]

    def priority_from(self, base, j, box, mode):
        """Priority of ``box`` given cells for every corridor except ``j``."""
        pieces = corridor_pieces(self.spec.angles[j], *hat_params(*box.corridor(j)))
        if mode == TOTAL_AREA:
            return _clip.expand_area(base, pieces)
        return _clip.cells_largest_component(_clip.expand(base, pieces))[0]

    def d_areas(self, box, bases):
        """Areas of the split-difference sets within the scene, per coordinate.

        ``bases[j]`` holds the leave-one-out cells for corridor ``j``. A set
        minus its own subset has area difference of the two, so each term is
        the scene area minus the area with corridor ``j`` tightened.
        """
        out = []
        total = None
        for i, iv in enumerate(box.intervals):
            if iv.degenerate:
                out.append(None)
                continue
            j = i // 2
            alpha = self.spec.angles[j]
            I, J = box.corridor(j)
            if total is None:
                total = _clip.expand_area(bases[j], corridor_pieces(alpha, *hat_params(I, J)))
            tight = corridor_pieces(alpha, *tight_params(I, J, FIRST if i % 2 == 0 else SECOND))
            out.append(total - _clip.expand_area(bases[j], tight))
        return out


def _check_dims(spec, box):
    if box.dim != 2 * spec.k:
        raise ValueError(f"box has {box.dim} coordinates, problem needs {2 * spec.k}")


def g_eval(spec, u):
    """Largest connected area of the scene at the translations ``u``."""
    if len(u) != spec.k:
        raise ValueError(f"expected {spec.k} translation vectors, got {len(u)}")
    return SceneEvaluator(spec).largest_component(BoxE.at(u))


def gamma_eval(spec, box):
    """Upper bound for ``g`` valid uniformly on ``box``."""
    _check_dims(spec, box)
    return SceneEvaluator(spec).largest_component(box)


def pi_eval(spec, box, mode=TOTAL_AREA):
    _check_dims(spec, box)
    ev = SceneEvaluator(spec)
    if mode == TOTAL_AREA:
        return ev.total_area(box)
    if mode == LARGEST_COMPONENT:
        return ev.largest_component(box)
    raise ValueError(f"unknown priority mode {mode!r}")


def _longest(box):
    best, best_w = None, None
    for i, iv in enumerate(box.intervals):
        if iv.degenerate:
            continue
        if best_w is None or iv.width > best_w:
            best, best_w = i, iv.width
    return best


def _choose_index(box, rule, d_areas):
    if box.degenerate:
        raise ValueError("cannot split a box whose intervals are all degenerate")
    if rule == LONGEST_DIM:
        return _longest(box)
    best, best_a = None, None
    for i, a in enumerate(d_areas):
        if a is not None and (best_a is None or a > best_a):
            best, best_a = i, a
    # no coordinate moves the scene at all: fall back to the longest side
    if best_a is None or best_a == 0:
        return _longest(box)
    return best


def splitting_index(spec, box, rule=D_AREA):
    """Coordinate (1-based, as in ``I_1, J_1, ...``) to bisect; ties go low."""
    _check_dims(spec, box)
    if rule not in SPLIT_RULES:
        raise ValueError(f"unknown split rule {rule!r}")
    if box.degenerate:
        raise ValueError("cannot split a box whose intervals are all degenerate")
    d = None
    if rule == D_AREA:
        ev = SceneEvaluator(spec)
        d = ev.d_areas(box, [ev.cells(box, skip=j) for j in range(spec.k)])
    return _choose_index(box, rule, d) + 1


def split_box(box, i):
    """Bisect coordinate ``i`` (1-based) at its exact midpoint."""
    if not 1 <= i <= box.dim:
        raise ValueError(f"coordinate {i} out of range 1..{box.dim}")
    return _bisect(box, i - 1)


def _bisect(box, i):
    iv = box.intervals[i]
    if iv.degenerate:
        raise ValueError(f"coordinate {i + 1} is degenerate and cannot be split")
    m = iv.mid
    left = box.intervals[:i] + (Interval(iv.lo, m),) + box.intervals[i + 1 :]
    right = box.intervals[:i] + (Interval(m, iv.hi),) + box.intervals[i + 1 :]
    return BoxE(left), BoxE(right)


# -- the main loop ---------------------------------------------------------------


class Engine:
    """Stepwise branch and bound; :func:`run` drives it to a stop criterion.

    With ``keep_discarded`` the boxes rejected by the lower bound are kept in
    :attr:`discarded`, for coverage checks.
    """

    def __init__(self, spec, config=EngineConfig(), keep_discarded=False):
        self.spec = spec
        self.config = config
        self.evaluator = SceneEvaluator(spec)
        self.keep_discarded = keep_discarded
        self.discarded: List[BoxE] = []
        self.initial = initial_box(spec)
        self.queue: List[QueueEntry] = []
        self._seq = 0
        self.best_lower = spec.ell0()
        self.best_upper = None
        self.iterations = 0
        self._t0 = time.monotonic()
        self._push(self.initial, self._priority(self.initial))

    def _priority(self, box):
        if self.config.priority_mode == TOTAL_AREA:
            return self.evaluator.total_area(box)
        return self.evaluator.largest_component(box)

    def _push(self, box, priority):
        heapq.heappush(self.queue, QueueEntry(box, priority, self._seq))
        self._seq += 1

    @property
    def exhausted(self):
        return not self.queue

    def elapsed(self):
        return time.monotonic() - self._t0

    def step(self):
        entry = heapq.heappop(self.queue)
        box = entry.box
        self.iterations += 1
        self.best_upper = entry.priority
        g_mid = self.evaluator.largest_component(BoxE.at(box.midpoint()))
        if g_mid > self.best_lower:
            self.best_lower = g_mid

        ev = self.evaluator
        if self.config.split_rule == D_AREA:
            bases = [ev.cells(box, skip=j) for j in range(self.spec.k)]
            i = _choose_index(box, D_AREA, ev.d_areas(box, bases))
            base = bases[i // 2]
        else:
            i = _choose_index(box, LONGEST_DIM, None)
            base = ev.cells(box, skip=i // 2)
        for child in _bisect(box, i):
            p = ev.priority_from(base, i // 2, child, self.config.priority_mode)
            if p >= self.best_lower:
                self._push(child, p)
            elif self.keep_discarded:
                self.discarded.append(child)
        return Report(self.iterations, self.best_upper, self.best_lower, self.elapsed())

    def stop_reason(self):
        cfg = self.config
        if self.exhausted:
            return "exhausted"
        if cfg.target_upper is not None and self.best_upper is not None and self.best_upper <= cfg.target_upper:
            return "target"
        if cfg.gap is not None and self.best_upper is not None and self.best_upper - self.best_lower <= cfg.gap:
            return "gap"
        if cfg.max_iterations is not None and self.iterations >= cfg.max_iterations:
            return "iterations"
        if cfg.max_time is not None and self.elapsed() >= cfg.max_time:
            return "time"
        return ""

    def certificate(self, reason=""):
        if self.exhausted:
            # every box left had a uniform bound below best_lower <= G
            upper = self.best_lower
        else:
            upper = self.best_upper if self.best_upper is not None else self.queue[0].priority
        return BoundCertificate(
            self.spec, upper, self.best_lower, self.iterations, self.config, self.exhausted, reason
        )


def iter_run(spec, config):
    """Yield a :class:`Report` per iteration, then the :class:`BoundCertificate`."""
    if not config.has_stop:
        raise ValueError("at least one stop criterion is required")
    engine = Engine(spec, config)
    reason = ""
    while not reason:
        yield engine.step()
        reason = engine.stop_reason()
    yield engine.certificate(reason)


def run(spec, config, sink: Optional[Callable[[Report], None]] = None):
    """Run to a stop criterion, feeding each report to ``sink``."""
    cert = None
    for item in iter_run(spec, config):
        if isinstance(item, BoundCertificate):
            cert = item
        elif sink is not None:
            sink(item)
    return cert
