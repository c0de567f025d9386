"""Exact rational geometry: directions, closed segments, polyline curves.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this
module touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import (
    DegenerateOverlapError,
    InvalidCurveError,
    InvalidDirectionError,
    PreconditionError,
    UnknownCurveError,
)

Rational = Fraction
Point = Tuple[Fraction, Fraction]
RationalLike = Union[int, str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` / decimal strings and Fractions to a Fraction."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(value)


def point(x: RationalLike, y: RationalLike) -> Point:
    return (rational(x), rational(y))


# ---------------------------------------------------------------------------
# point-level predicates
# ---------------------------------------------------------------------------

def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: 1 left, -1 right, 0 collinear."""
    d = _cross(a[0], a[1], b[0], b[1], c[0], c[1])
    return (d > 0) - (d < 0)


def _in_box(p: Point, q: Point, r: Point) -> bool:
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def closed_segments_meet(p0: Point, p1: Point, q0: Point, q1: Point) -> bool:
    """True iff closed segments [p0, p1] and [q0, q1] share a point.

    Either segment may be degenerate (a single point).
    """
    d1 = orientation(q0, q1, p0)
    d2 = orientation(q0, q1, p1)
    d3 = orientation(p0, p1, q0)
    d4 = orientation(p0, p1, q1)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _in_box(q0, q1, p0):
        return True
    if d2 == 0 and _in_box(q0, q1, p1):
        return True
    if d3 == 0 and _in_box(p0, p1, q0):
        return True
    if d4 == 0 and _in_box(p0, p1, q1):
        return True
    return False


def edge_crossing(p0: Point, p1: Point, q0: Point, q1: Point):
    """The single common point of two non-degenerate closed edges, or None.

    Raises DegenerateOverlapError when the edges overlap in a piece of
    positive length.
    """
    if not closed_segments_meet(p0, p1, q0, q1):
        return None
    rx, ry = p1[0] - p0[0], p1[1] - p0[1]
    sx, sy = q1[0] - q0[0], q1[1] - q0[1]
    denom = rx * sy - ry * sx
    if denom != 0:
        t = ((q0[0] - p0[0]) * sy - (q0[1] - p0[1]) * sx) / denom
        return (p0[0] + t * rx, p0[1] + t * ry)
    # collinear: project on the edge direction
    rr = rx * rx + ry * ry

    def proj(p):
        return ((p[0] - p0[0]) * rx + (p[1] - p0[1]) * ry) / rr

    a, b = sorted((proj(q0), proj(q1)))
    lo, hi = max(a, Fraction(0)), min(b, Fraction(1))
    if lo < hi:
        raise DegenerateOverlapError(
            f"edges {p0}-{p1} and {q0}-{q1} overlap in positive length")
    return (p0[0] + lo * rx, p0[1] + lo * ry)


# ---------------------------------------------------------------------------
# directions and straight segments
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Direction:
    dx: int
    dy: int

    def __post_init__(self):
        if (self.dx, self.dy) == (0, 0):
            raise InvalidDirectionError("direction must be a non-zero vector")
        if math.gcd(self.dx, self.dy) != 1 or not (
                self.dy > 0 or (self.dy == 0 and self.dx > 0)):
            raise InvalidDirectionError(
                f"({self.dx}, {self.dy}) is not canonical; use canonical_direction")

    def __iter__(self):
        return iter((self.dx, self.dy))


def canonical_direction(dx: int, dy: int) -> Direction:
    """Primitive integer representative with dy > 0, or dy == 0 and dx > 0."""
    dx, dy = int(dx), int(dy)
    if dx == 0 and dy == 0:
        raise InvalidDirectionError("zero vector has no direction")
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dy < 0 or (dy == 0 and dx < 0):
        dx, dy = -dx, -dy
    return Direction(dx, dy)


HORIZONTAL = canonical_direction(1, 0)
VERTICAL = canonical_direction(0, 1)


@dataclass(frozen=True)
class Segment:
    """Closed set {anchor + t * direction : t_lo <= t <= t_hi}."""

    anchor: Point
    direction: Direction
    t_lo: Fraction
    t_hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "anchor", point(*self.anchor))
        object.__setattr__(self, "t_lo", rational(self.t_lo))
        object.__setattr__(self, "t_hi", rational(self.t_hi))
        if self.t_lo > self.t_hi:
            raise ValueError(f"t_lo {self.t_lo} exceeds t_hi {self.t_hi}")

    @classmethod
    def between(cls, p, q, direction: Direction | None = None) -> "Segment":
        """Segment with endpoints p and q.

        A degenerate segment (p == q) takes ``direction`` or horizontal.
        """
        p, q = point(*p), point(*q)
        vx, vy = q[0] - p[0], q[1] - p[1]
        if vx == 0 and vy == 0:
            return cls(p, direction or HORIZONTAL, 0, 0)
        scale = math.lcm(vx.denominator, vy.denominator)
        d = canonical_direction(int(vx * scale), int(vy * scale))
        if direction is not None and d != direction:
            raise InvalidDirectionError(f"{p}-{q} does not run in direction {direction}")
        s = vx / d.dx if d.dx else vy / d.dy
        return cls(p, d, min(s, Fraction(0)), max(s, Fraction(0)))

    @classmethod
    def horizontal(cls, x_lo, x_hi, y) -> "Segment":
        return cls((0, y), HORIZONTAL, x_lo, x_hi)

    @classmethod
    def vertical(cls, x, y_lo, y_hi) -> "Segment":
        return cls((x, 0), VERTICAL, y_lo, y_hi)

    def at(self, t) -> Point:
        return (self.anchor[0] + t * self.direction.dx,
                self.anchor[1] + t * self.direction.dy)

    @property
    def start(self) -> Point:
        return self.at(self.t_lo)

    @property
    def end(self) -> Point:
        return self.at(self.t_hi)

    @property
    def is_degenerate(self) -> bool:
        return self.t_lo == self.t_hi

    def line_key(self) -> Fraction:
        """Constant along the supporting line; parallel lines differ."""
        return self._line_key

    def extent(self) -> Tuple[Fraction, Fraction]:
        """Interval covered along the direction, in units of p . direction."""
        return self._extent

    # immutable, so both are computed once per segment
    @cached_property
    def _line_key(self) -> Fraction:
        d = self.direction
        return d.dx * self.anchor[1] - d.dy * self.anchor[0]

    @cached_property
    def _extent(self) -> Tuple[Fraction, Fraction]:
        d = self.direction
        base = self.anchor[0] * d.dx + self.anchor[1] * d.dy
        norm = d.dx * d.dx + d.dy * d.dy
        return base + self.t_lo * norm, base + self.t_hi * norm


def segments_intersect(a: Segment, b: Segment) -> bool:
    """Closed-set intersection test; shared endpoints count."""
    da, db = a.direction, b.direction
    if da == db:
        if a.line_key() != b.line_key():
            return False
        alo, ahi = a.extent()
        blo, bhi = b.extent()
        return alo <= bhi and blo <= ahi
    # a.anchor + u da = b.anchor + v db, solved by Cramer's rule
    det = da.dx * db.dy - da.dy * db.dx
    wx, wy = b.anchor[0] - a.anchor[0], b.anchor[1] - a.anchor[1]
    u = (wx * db.dy - wy * db.dx) / det
    if not a.t_lo <= u <= a.t_hi:
        return False
    v = (wx * da.dy - wy * da.dx) / det
    return b.t_lo <= v <= b.t_hi


# ---------------------------------------------------------------------------
# polyline curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyCurve:
    """Simple polyline parameterized by arc-index t in [0, len(vertices) - 1]."""

    id: str
    vertices: Tuple[Point, ...]
    group: int = 1

    def __post_init__(self):
        verts = tuple(point(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise InvalidCurveError(f"curve {self.id}: needs at least 2 vertices")
        for i in range(len(verts) - 1):
            if verts[i] == verts[i + 1]:
                raise InvalidCurveError(f"curve {self.id}: repeated vertex at index {i}")
        edges = self.edges()
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                if j == i + 1:
                    # adjacent edges may only share their common vertex
                    if _adjacent_overlap(edges[i], edges[j]):
                        raise InvalidCurveError(f"curve {self.id}: edges {i} and {j} fold back")
                elif closed_segments_meet(*edges[i], *edges[j]):
                    raise InvalidCurveError(f"curve {self.id}: edges {i} and {j} intersect")

    @property
    def t_max(self) -> Fraction:
        return Fraction(len(self.vertices) - 1)

    def edges(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    def at(self, t) -> Point:
        t = rational(t)
        if not 0 <= t <= self.t_max:
            raise ValueError(f"parameter {t} outside [0, {self.t_max}] on curve {self.id}")
        j = min(math.floor(t), len(self.vertices) - 2)
        f = t - j
        (x0, y0), (x1, y1) = self.vertices[j], self.vertices[j + 1]
        return (x0 + f * (x1 - x0), y0 + f * (y1 - y0))

    def param_of(self, p: Point):
        """Parameter of point p on the curve, or None if p is not on it."""
        for j, (a, b) in enumerate(self.edges()):
            if orientation(a, b, p) == 0 and _in_box(a, b, p):
                if b[0] != a[0]:
                    f = (p[0] - a[0]) / (b[0] - a[0])
                else:
                    f = (p[1] - a[1]) / (b[1] - a[1])
                return j + f
        return None

    def polyline(self, t_lo, t_hi):
        """Vertices of the sub-curve over [t_lo, t_hi] (a single point if equal)."""
        t_lo, t_hi = rational(t_lo), rational(t_hi)
        pts = [self.at(t_lo)]
        for j in range(math.floor(t_lo) + 1, math.ceil(t_hi)):
            pts.append(self.vertices[j])
        if t_hi != t_lo:
            pts.append(self.at(t_hi))
        return pts

    def reversed(self) -> "PolyCurve":
        return PolyCurve(self.id, tuple(reversed(self.vertices)), self.group)


def _adjacent_overlap(e1, e2) -> bool:
    (a, b), (_, c) = e1, e2
    # e1 = a-b, e2 = b-c: overlap beyond b iff c folds back along a-b
    return orientation(a, b, c) == 0 and (
        (c[0] - b[0]) * (a[0] - b[0]) + (c[1] - b[1]) * (a[1] - b[1]) > 0)


@dataclass(frozen=True)
class CurveSegment:
    curve: str
    t_lo: Fraction
    t_hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t_lo", rational(self.t_lo))
        object.__setattr__(self, "t_hi", rational(self.t_hi))
        if self.t_lo > self.t_hi:
            raise ValueError(f"t_lo {self.t_lo} exceeds t_hi {self.t_hi}")


def _lookup(curves: Mapping[str, PolyCurve], cid: str) -> PolyCurve:
    try:
        return curves[cid]
    except KeyError:
        raise UnknownCurveError(f"unknown curve id {cid!r}") from None


def _pieces(curve: PolyCurve, t_lo, t_hi):
    pts = curve.polyline(t_lo, t_hi)
    if len(pts) == 1:
        return [(pts[0], pts[0])]
    return list(zip(pts, pts[1:]))


def curve_segments_intersect(a: CurveSegment, b: CurveSegment,
                             curves: Mapping[str, PolyCurve]) -> bool:
    ca, cb = _lookup(curves, a.curve), _lookup(curves, b.curve)
    if ca.id == cb.id:
        # a simple curve is injective, so overlap in parameter space is exact
        return a.t_lo <= b.t_hi and b.t_lo <= a.t_hi
    pa, pb = _pieces(ca, a.t_lo, a.t_hi), _pieces(cb, b.t_lo, b.t_hi)
    return any(closed_segments_meet(*e, *f) for e in pa for f in pb)


def curve_pairwise_crossings(c1: PolyCurve, c2: PolyCurve):
    """All common points of two distinct curves, sorted by (x, y)."""
    if c1.id == c2.id:
        raise ValueError("crossings are defined between distinct curves")
    found = set()
    for e in c1.edges():
        for f in c2.edges():
            p = edge_crossing(*e, *f)
            if p is not None:
                found.add(p)
    return sorted(found)


def flatten_disjoint_curves(members: Sequence[CurveSegment],
                            curves: Mapping[str, PolyCurve]):
    """Map segments of pairwise-disjoint curves to horizontal segments.

    The curve of rank i (1-based, ranked by id over the whole table) becomes
    the line y = i and a segment keeps its parameter interval as x-range.
    """
    used = sorted({m.curve for m in members})
    for cid in used:
        _lookup(curves, cid)
    for i, c1 in enumerate(used):
        for c2 in used[i + 1:]:
            try:
                hit = curve_pairwise_crossings(curves[c1], curves[c2])
            except DegenerateOverlapError:
                hit = True
            if hit:
                raise PreconditionError(f"curves {c1} and {c2} intersect")
    rank = {cid: i + 1 for i, cid in enumerate(sorted(curves))}
    return [Segment.horizontal(m.t_lo, m.t_hi, rank[m.curve]) for m in members]


def curves_meet(c1: PolyCurve, c2: PolyCurve) -> bool:
    return any(closed_segments_meet(*e, *f) for e in c1.edges() for f in c2.edges())


def bounding_box(points: Iterable[Point]):
    pts = list(points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)
