"""Exact planar polygonal sets built from half-planes.

A :class:`Region` is a finite union of convex cells (each an intersection of
closed half-planes, possibly unbounded), optionally cut down by an
axis-aligned frame rectangle. Only framed regions are bounded, and only
bounded regions have an area.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from . import _clip
from ._backend import ONE, ZERO, Q, as_q, to_fraction
from .kernel import CCW, Point, rotate

INTERSECT = "intersect"
UNION = "union"
DIFFERENCE = "difference"


@dataclass(frozen=True)
class HalfPlane:
    """The closed half-plane ``a*x + b*y <= c``."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("half-plane normal must be nonzero")

    @classmethod
    def of(cls, a, b, c):
        return cls(as_q(a), as_q(b), as_q(c))

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def flipped(self):
        """Closure of the complement."""
        return HalfPlane(-self.a, -self.b, -self.c)

    def contains(self, p):
        return self.a * p[0] + self.b * p[1] <= self.c


@dataclass(frozen=True)
class ConvexCell:
    """Intersection of its constraints; no constraints means the whole plane."""

    constraints: Tuple[HalfPlane, ...] = ()

    def hps(self):
        return [h.as_tuple() for h in self.constraints]

    def contains(self, p):
        return all(h.contains(p) for h in self.constraints)

    def meet(self, other):
        return ConvexCell(self.constraints + other.constraints)


Frame = Tuple[object, object, object, object]  # x0, x1, y0, y1


def _frame_planes(frame):
    x0, x1, y0, y1 = frame
    return (
        HalfPlane(-ONE, ZERO, -x0),
        HalfPlane(ONE, ZERO, x1),
        HalfPlane(ZERO, -ONE, -y0),
        HalfPlane(ZERO, ONE, y1),
    )


def _witness_frame(constraints):
    """A box meeting every nonempty cell with these constraints near each vertex.

    Holds all pairwise intersections of the boundary lines and the foot of the
    perpendicular from the origin to each line, padded by 1.
    """
    pts = [(ZERO, ZERO)]
    hs = [h.as_tuple() for h in constraints]
    for a, b, c in hs:
        n2 = a * a + b * b
        pts.append((c * a / n2, c * b / n2))
    for i in range(len(hs)):
        a1, b1, c1 = hs[i]
        for j in range(i + 1, len(hs)):
            a2, b2, c2 = hs[j]
            det = a1 * b2 - a2 * b1
            if det != 0:
                pts.append(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)


@dataclass(frozen=True)
class Region:
    """``(union of cells) & frame``; ``disjoint`` records interior-disjoint cells."""

    cells: Tuple[ConvexCell, ...] = ()
    frame: Optional[Frame] = None
    disjoint: bool = field(default=False, compare=False)

    @property
    def bounded(self):
        return self.frame is not None

    @classmethod
    def empty(cls):
        return cls((), None, True)

    @classmethod
    def plane(cls):
        return cls((ConvexCell(()),), None, True)

    @classmethod
    def from_cells(cls, cells, disjoint=False):
        return cls(tuple(cells), None, disjoint)

    @classmethod
    def rectangle(cls, x0, x1, y0, y1):
        x0, x1, y0, y1 = map(as_q, (x0, x1, y0, y1))
        return cls((ConvexCell(_frame_planes((x0, x1, y0, y1))),), (x0, x1, y0, y1), True)

    @classmethod
    def convex_polygon(cls, vertices):
        """Bounded region from the vertices of a convex polygon (CCW, at least 3)."""
        vs = [Point.of(*v) for v in vertices]
        hps = []
        for i, p in enumerate(vs):
            q = vs[(i + 1) % len(vs)]
            a, b = q[1] - p[1], p[0] - q[0]
            hps.append(HalfPlane(a, b, a * p[0] + b * p[1]))
        xs = [v.x for v in vs]
        ys = [v.y for v in vs]
        return cls((ConvexCell(tuple(hps)),), (min(xs), max(xs), min(ys), max(ys)), True)

    @classmethod
    def point(cls, x, y):
        x, y = as_q(x), as_q(y)
        return cls((ConvexCell(_frame_planes((x, x, y, y))),), (x, x, y, y), True)

    def contains(self, p):
        p = Point.of(*p)
        if self.frame is not None:
            x0, x1, y0, y1 = self.frame
            if not (x0 <= p.x <= x1 and y0 <= p.y <= y1):
                return False
        return any(c.contains(p) for c in self.cells)

    def polygons(self):
        """Vertex lists of the nonempty cells (requires a bounded region)."""
        _require_bounded(self)
        root = _clip.rect(*self.frame)
        out = []
        for cell in self.cells:
            poly = _clip.clip_all(root, cell.hps())
            if poly:
                out.append(poly)
        return out

    def __and__(self, other):
        return intersect(self, other)

    def __or__(self, other):
        return union(self, other)

    def __sub__(self, other):
        return difference(self, other)


def _require_bounded(region):
    if region.frame is None:
        raise ValueError("region is unbounded; clip it to a frame first")


def _cell_polygon(cell, frame):
    box = frame if frame is not None else _witness_frame(cell.constraints)
    return _clip.clip_all(_clip.rect(*box), cell.hps())


def _meet_frames(f, g):
    if f is None:
        return g
    if g is None:
        return f
    return (max(f[0], g[0]), min(f[1], g[1]), max(f[2], g[2]), min(f[3], g[3]))


def _baked(region):
    if region.frame is None:
        return list(region.cells)
    planes = _frame_planes(region.frame)
    return [ConvexCell(c.constraints + planes) for c in region.cells]


def intersect(A, B):
    frame = _meet_frames(A.frame, B.frame)
    disjoint = A.disjoint and B.disjoint
    if frame is not None and (frame[0] > frame[1] or frame[2] > frame[3]):
        return Region((), frame, True)
    cells = []
    for a in A.cells:
        for b in B.cells:
            cell = a.meet(b)
            if _cell_polygon(cell, frame):
                cells.append(cell)
    return Region(tuple(cells), frame, disjoint)


def union(A, B):
    if A.frame == B.frame:
        return Region(A.cells + B.cells, A.frame, False)
    if A.frame is None or B.frame is None:
        frame = None
    else:
        frame = (
            min(A.frame[0], B.frame[0]),
            max(A.frame[1], B.frame[1]),
            min(A.frame[2], B.frame[2]),
            max(A.frame[3], B.frame[3]),
        )
    return Region(tuple(_baked(A) + _baked(B)), frame, False)


def _has_interior(cell, frame):
    return _clip.area(_cell_polygon(cell, frame)) > 0


def _subtract_cell(cell, cut, frame):
    """Closures of the full-dimensional pieces of ``cell`` minus ``cut``."""
    pieces = []
    kept = cell.constraints
    for h in cut.constraints:
        piece = ConvexCell(kept + (h.flipped(),))
        if _has_interior(piece, frame):
            pieces.append(piece)
        kept = kept + (h,)
        if not _has_interior(ConvexCell(kept), frame):
            break
    return pieces


def difference(A, B):
    """Regularised difference: closure of the interior of ``A`` minus ``B``."""
    cuts = _baked(B)
    cells = []
    for a in A.cells:
        pieces = [a] if _has_interior(a, A.frame) else []
        for cut in cuts:
            if not cut.constraints:
                pieces = []
                break
            nxt = []
            for p in pieces:
                nxt.extend(_subtract_cell(p, cut, A.frame))
            pieces = nxt
            if not pieces:
                break
        cells.extend(pieces)
    return Region(tuple(cells), A.frame, A.disjoint)


def boolean_op(mode, A, B):
    if mode == INTERSECT:
        return intersect(A, B)
    if mode == UNION:
        return union(A, B)
    if mode == DIFFERENCE:
        return difference(A, B)
    raise ValueError(f"unknown boolean mode {mode!r}")


def clip(A, frame):
    x0, x1, y0, y1 = map(as_q, frame)
    if x0 > x1 or y0 > y1:
        raise ValueError("clip frame is empty")
    return intersect(A, Region((ConvexCell(()),), (x0, x1, y0, y1), True))


def canonicalize(A):
    """Equivalent region whose cells are pairwise interior-disjoint.

    Measure-zero cells are kept unchanged so connectivity is preserved.
    """
    if A.disjoint:
        return A
    full, thin = [], []
    for cell in A.cells:
        if _has_interior(cell, A.frame):
            pieces = [cell]
            for prev in full:
                pieces = [q for p in pieces for q in _subtract_cell(p, prev, A.frame)]
                if not pieces:
                    break
            full.extend(pieces)
        elif _cell_polygon(cell, A.frame):
            thin.append(cell)
    return Region(tuple(full + thin), A.frame, True)


def area(A):
    _require_bounded(A)
    total = ZERO
    for poly in canonicalize(A).polygons():
        total += _clip.area(poly)
    return total


def largest_component_area(A):
    """``(max component area, number of components)`` of a bounded region.

    Components are those of the closed set: cells meeting in a single point
    belong to the same component.
    """
    _require_bounded(A)
    C = canonicalize(A)
    root = _clip.rect(*C.frame)
    polys, hps = [], []
    for cell in C.cells:
        poly = _clip.clip_all(root, cell.hps())
        if poly:
            polys.append(poly)
            hps.append(cell.hps())
    sizes = _clip.component_areas(polys, lambda i, j: bool(_clip.clip_all(polys[i], hps[j])))
    if not sizes:
        return ZERO, 0
    return max(sizes), len(sizes)


def transform(A, theta, sense=CCW, t=(0, 0)):
    """Rotate ``A`` about the origin by ``theta`` and then translate by ``t``."""
    t = Point.of(*t)
    cells = []
    for cell in _baked(A):
        hs = []
        for h in cell.constraints:
            n = rotate((h.a, h.b), theta, sense)
            hs.append(HalfPlane(n.x, n.y, h.c + n.x * t.x + n.y * t.y))
        cells.append(ConvexCell(tuple(hs)))
    frame = None
    if A.frame is not None:
        x0, x1, y0, y1 = A.frame
        corners = [rotate((x, y), theta, sense) for x in (x0, x1) for y in (y0, y1)]
        xs = [c.x + t.x for c in corners]
        ys = [c.y + t.y for c in corners]
        frame = (min(xs), max(xs), min(ys), max(ys))
    return Region(tuple(cells), frame, A.disjoint)


def _fmt(q):
    f = to_fraction(q)
    return f"{f.numerator}/{f.denominator}"


def to_text(A):
    """Debug export: one cell per line, CCW vertices as ``num/den,num/den``."""
    lines = []
    for poly in A.polygons():
        lines.append(" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in poly))
    return "\n".join(lines) + ("\n" if lines else "")


def from_text(text):
    """Inverse of :func:`to_text` for full-dimensional convex cells."""
    region = None
    for line in text.splitlines():
        if not line.strip():
            continue
        vs = [tuple(Q(*map(int, c.split("/"))) for c in pair.split(",")) for pair in line.split()]
        cell = Region.convex_polygon(vs)
        region = cell if region is None else union(region, cell)
    return region if region is not None else Region((), (ZERO, ZERO, ZERO, ZERO), True)
