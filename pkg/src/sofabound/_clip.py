"""Hot exact kernels: closed half-plane clipping, shoelace area, contact tests.

Polygons are lists of ``(x, y)`` rational tuples in counter-clockwise order.
Degenerate polygons (a segment as two vertices, a point as one) are legal
inputs and outputs; they have zero area but still occupy space, which the
connectivity routines rely on. A half-plane is a triple ``(a, b, c)``
meaning ``a*x + b*y <= c``.
"""

from ._backend import ZERO


def rect(x0, x1, y0, y1):
    if x0 == x1 and y0 == y1:
        return [(x0, y0)]
    if x0 == x1 or y0 == y1:
        return [(x0, y0), (x1, y1)]
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def clip(poly, hp):
    """Intersect ``poly`` with the closed half-plane ``hp``."""
    a, b, c = hp
    vals = [a * x + b * y - c for x, y in poly]
    if max(vals) <= 0:
        return poly
    if min(vals) > 0:
        return []
    n = len(poly)
    out = []
    for i in range(n):
        fp = vals[i]
        p = poly[i]
        if fp <= 0:
            out.append(p)
        j = i + 1 if i + 1 < n else 0
        fq = vals[j]
        if (fp < 0 < fq) or (fq < 0 < fp):
            q = poly[j]
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    # vertices exactly on the line can repeat once a polygon degenerates
    if len(out) > 1:
        dedup = [out[0]]
        for v in out[1:]:
            if v != dedup[-1]:
                dedup.append(v)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        out = dedup
    return out


def clip_all(poly, hps):
    for hp in hps:
        if not poly:
            return poly
        poly = clip(poly, hp)
    return poly


def area(poly):
    n = len(poly)
    if n < 3:
        return ZERO
    acc = ZERO
    x0, y0 = poly[-1]
    for x1, y1 in poly:
        acc += x0 * y1 - x1 * y0
        x0, y0 = x1, y1
    if acc < 0:
        acc = -acc
    return acc / 2


def bbox(poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), max(xs), min(ys), max(ys)


def _boxes_meet(b1, b2):
    return b1[0] <= b2[1] and b2[0] <= b1[1] and b1[2] <= b2[3] and b2[2] <= b1[3]


def contains(hps, point):
    x, y = point
    return all(a * x + b * y <= c for a, b, c in hps)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def component_areas(polys, touch):
    """Group cells into closed-set components; return the area of each.

    ``touch(i, j)`` decides whether cells ``i`` and ``j`` share a point.
    Cells must be interior-disjoint for the per-component sums to be areas.
    """
    n = len(polys)
    if n == 0:
        return []
    boxes = [bbox(p) for p in polys]
    dsu = _DSU(n)
    for i in range(n):
        for j in range(i + 1, n):
            if dsu.find(i) == dsu.find(j):
                continue
            if _boxes_meet(boxes[i], boxes[j]) and touch(i, j):
                dsu.union(i, j)
    totals = {}
    for i, poly in enumerate(polys):
        r = dsu.find(i)
        totals[r] = totals.get(r, ZERO) + area(poly)
    return list(totals.values())


# -- scene cells -------------------------------------------------------------
#
# A scene is an intersection of factors; each factor is a tuple of pieces
# (convex, given as tuples of half-planes) whose union is the factor and whose
# interiors are pairwise disjoint. Expanding the factors over a bounded root
# polygon yields interior-disjoint leaf cells ``(poly, path)`` where ``path``
# records the piece chosen from each factor.


def expand(cells, pieces):
    out = []
    for poly, path in cells:
        for piece in pieces:
            r = clip_all(poly, piece)
            if r:
                out.append((r, path + (piece,)))
    return out


def expand_area(cells, pieces):
    """Total area of ``cells`` intersected with one more factor."""
    total = ZERO
    for poly, _ in cells:
        for piece in pieces:
            r = clip_all(poly, piece)
            if len(r) > 2:
                total += area(r)
    return total


def cells_area(cells):
    total = ZERO
    for poly, _ in cells:
        total += area(poly)
    return total


def cells_largest_component(cells):
    """(largest component area, component count) of expanded scene cells."""
    if not cells:
        return ZERO, 0
    polys = [c[0] for c in cells]
    paths = [c[1] for c in cells]

    def touch(i, j):
        poly = polys[i]
        pi, pj = paths[i], paths[j]
        for k in range(len(pj)):
            if pi[k] is not pj[k]:
                poly = clip_all(poly, pj[k])
                if not poly:
                    return False
        return True

    sizes = component_areas(polys, touch)
    return max(sizes), len(sizes)
