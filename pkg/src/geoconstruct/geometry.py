"""Plane geometry kernel: points, lines, circles, intersections, canonical keys.

Lines are kept in a sign-canonical unit normal form (a*x + b*y + c = 0 with
a**2 + b**2 == 1) so that geometrically identical lines carry identical
parameters.  Every type is an immutable value and every function is pure.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Union

# Orientation cutoff: |a| at or below this counts as a horizontal-ish normal
# and the sign rule falls through to b.
SIGN_EPS = 1e-12


class GeometryError(ValueError):
    """Base class for kernel construction errors."""


class DegenerateLine(GeometryError):
    pass


class DegenerateCircle(GeometryError):
    pass


class IdenticalCircles(GeometryError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Identity tolerance; the effective epsilon scales with scene size."""

    epsilon_abs: float = 1e-7
    scene_diameter: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon_abs) and self.epsilon_abs > 0):
            raise ValueError(f"epsilon_abs must be finite and > 0, got {self.epsilon_abs}")
        if not (math.isfinite(self.scene_diameter) and self.scene_diameter > 0):
            raise ValueError(f"scene_diameter must be finite and > 0, got {self.scene_diameter}")

    @property
    def eps(self) -> float:
        return self.epsilon_abs * max(1.0, self.scene_diameter)


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True, order=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def distance(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def close_to(self, other: "Point", eps: float) -> bool:
        return self.distance(other) <= eps


@dataclass(frozen=True)
class Line:
    """Infinite line a*x + b*y + c = 0; construct via ``make_line``/``line_through``."""

    a: float
    b: float
    c: float

    def residual(self, p: Point) -> float:
        return abs(self.a * p.x + self.b * p.y + self.c)

    @property
    def slope(self) -> float | None:
        """Slope dy/dx, or None for vertical lines."""
        if self.b == 0.0:
            return None
        return -self.a / self.b

    @property
    def intercept(self) -> float | None:
        """Y-intercept, or None for vertical lines."""
        if self.b == 0.0:
            return None
        return -self.c / self.b


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DegenerateCircle(f"radius must be finite and > 0, got {self.radius}")

    def residual(self, p: Point) -> float:
        return abs(self.center.distance(p) - self.radius)


Primitive = Union[Line, Circle]


def make_line(a: float, b: float, c: float) -> Line:
    """Normalize arbitrary coefficients into the canonical signed unit form."""
    n = math.hypot(a, b)
    if n <= SIGN_EPS or not math.isfinite(n):
        raise DegenerateLine(f"line normal ({a}, {b}) is degenerate")
    a, b, c = a / n, b / n, c / n
    if a < -SIGN_EPS or (abs(a) <= SIGN_EPS and b < 0):
        a, b, c = -a, -b, -c
    # Snap near-axis normals so axis-parallel lines are bitwise canonical.
    if abs(a) <= SIGN_EPS:
        a, b = 0.0, 1.0
    elif abs(b) <= SIGN_EPS:
        a, b = 1.0, 0.0
    return Line(a + 0.0, b + 0.0, c + 0.0)


def line_through(p: Point, q: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> Line:
    """The unique line through two distinct points."""
    if p.distance(q) <= tol.eps:
        raise DegenerateLine(f"points {p} and {q} coincide within tolerance")
    a = q.y - p.y
    b = p.x - q.x
    # Cross-product form; exact negation under argument swap keeps
    # line_through(p, q) == line_through(q, p) bitwise after canonicalization.
    c = q.x * p.y - p.x * q.y
    return make_line(a, b, c)


def circle_from(center: Point, through: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> Circle:
    """The circle centered at ``center`` passing through ``through``."""
    r = center.distance(through)
    if r <= tol.eps:
        raise DegenerateCircle(f"zero radius: center {center} coincides with {through}")
    return Circle(center, r)


def intersect_line_line(l1: Line, l2: Line, tol: Tolerance = DEFAULT_TOLERANCE) -> list[Point]:
    """0 or 1 intersection points; parallel within tolerance yields none."""
    det = l1.a * l2.b - l1.b * l2.a
    if abs(det) <= tol.eps:
        return []
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return [Point(x, y)]


def intersect_line_circle(l: Line, c: Circle, tol: Tolerance = DEFAULT_TOLERANCE) -> list[Point]:
    """0, 1 (tangent) or 2 intersection points."""
    s = l.a * c.center.x + l.b * c.center.y + l.c
    foot = Point(c.center.x - l.a * s, c.center.y - l.b * s)
    d = abs(s)
    if abs(d - c.radius) <= tol.eps:
        return [foot]
    if d > c.radius:
        return []
    h = math.sqrt(c.radius * c.radius - s * s)
    dx, dy = -l.b, l.a
    return [
        Point(foot.x - h * dx, foot.y - h * dy),
        Point(foot.x + h * dx, foot.y + h * dy),
    ]


def intersect_circle_circle(c1: Circle, c2: Circle, tol: Tolerance = DEFAULT_TOLERANCE) -> list[Point]:
    """0, 1 (tangent) or 2 intersection points; identical circles are an error."""
    d = c1.center.distance(c2.center)
    if d <= tol.eps:
        if abs(c1.radius - c2.radius) <= tol.eps:
            raise IdenticalCircles(f"circles {c1} and {c2} coincide within tolerance")
        return []
    ux = (c2.center.x - c1.center.x) / d
    uy = (c2.center.y - c1.center.y) / d
    a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d)
    mid = Point(c1.center.x + a * ux, c1.center.y + a * uy)
    if abs(d - (c1.radius + c2.radius)) <= tol.eps or abs(d - abs(c1.radius - c2.radius)) <= tol.eps:
        return [mid]
    if d > c1.radius + c2.radius or d < abs(c1.radius - c2.radius):
        return []
    h = math.sqrt(max(c1.radius * c1.radius - a * a, 0.0))
    px, py = -uy, ux
    return [
        Point(mid.x + h * px, mid.y + h * py),
        Point(mid.x - h * px, mid.y - h * py),
    ]


def _sort_key(prim: Primitive) -> tuple:
    if isinstance(prim, Line):
        return (0, prim.a, prim.b, prim.c)
    return (1, prim.center.x, prim.center.y, prim.radius)


def intersect(p1: Primitive, p2: Primitive, tol: Tolerance = DEFAULT_TOLERANCE) -> list[Point]:
    """Intersection points of any primitive pair; exactly symmetric in its arguments."""
    if _sort_key(p1) > _sort_key(p2):
        p1, p2 = p2, p1
    if isinstance(p1, Line) and isinstance(p2, Line):
        return intersect_line_line(p1, p2, tol)
    if isinstance(p1, Line) and isinstance(p2, Circle):
        return intersect_line_circle(p1, p2, tol)
    if isinstance(p1, Circle) and isinstance(p2, Circle):
        return intersect_circle_circle(p1, p2, tol)
    # Line sorts before Circle, so this branch is unreachable via sorting.
    return intersect_line_circle(p2, p1, tol)  # pragma: no cover


def residual(prim: Primitive, p: Point) -> float:
    """Incidence residual: |a*x+b*y+c| for lines, |dist(center,p) - r| for circles."""
    return prim.residual(p)


def point_on(prim: Primitive, p: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return prim.residual(p) <= tol.eps


def _quantize(v: float, granularity: float) -> int:
    # Round-half-up keeps quantization monotone (no banker's-rounding ties).
    return math.floor(v / granularity + 0.5)


def canonical_key(prim: Primitive, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple:
    """Discrete identity key: parameters quantized at the effective epsilon."""
    g = tol.eps
    if isinstance(prim, Line):
        return ("L", _quantize(prim.a, g), _quantize(prim.b, g), _quantize(prim.c, g))
    return ("C", _quantize(prim.center.x, g), _quantize(prim.center.y, g), _quantize(prim.radius, g))


def adjacent_keys(key: tuple) -> Iterator[tuple]:
    """The key itself plus every neighboring quantization bucket (27 total)."""
    kind, q1, q2, q3 = key
    for o1, o2, o3 in itertools.product((0, -1, 1), repeat=3):
        yield (kind, q1 + o1, q2 + o2, q3 + o3)
