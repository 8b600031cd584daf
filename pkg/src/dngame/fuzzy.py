"""Triangular fuzzy numbers with exact piecewise-linear geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    EmptyInputError,
    InvalidFuzzyNumberError,
    LengthMismatchError,
    ZeroAreaError,
)


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Membership triangle ``(a1, a2, a3)`` with ``a1 <= a2 <= a3``.

    Degenerate legs (``a1 == a2`` or ``a2 == a3``) are vertical jumps; the
    membership at the peak is still 1.
    """

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        vals = (self.a1, self.a2, self.a3)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidFuzzyNumberError(f"non-finite parameter in {vals}")
        if not (self.a1 <= self.a2 <= self.a3):
            raise InvalidFuzzyNumberError(f"expected a1 <= a2 <= a3, got {vals}")

    @classmethod
    def crisp(cls, c: float) -> TriangularFuzzyNumber:
        return cls(c, c, c)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    @property
    def area(self) -> float:
        return 0.5 * (self.a3 - self.a1)

    def __call__(self, x: float) -> float:
        return membership(self, x)

    def __iter__(self):
        return iter(self.as_tuple())


TFN = TriangularFuzzyNumber


def membership(f: TriangularFuzzyNumber, x: float) -> float:
    a1, a2, a3 = f.a1, f.a2, f.a3
    if x < a1 or x > a3:
        return 0.0
    if x == a2:
        return 1.0
    if x < a2:
        return (x - a1) / (a2 - a1)
    return (a3 - x) / (a3 - a2)


def graded_mean(f: TriangularFuzzyNumber) -> float:
    """Graded mean integration representation, ``(a1 + 4 a2 + a3) / 6``."""
    return (f.a1 + 4.0 * f.a2 + f.a3) / 6.0


def centroid_defuzzify(f: TriangularFuzzyNumber) -> float:
    """Centre of mass of the membership function.

    For a triangle the integral ratio reduces to the vertex mean. A crisp
    number (zero area) defuzzifies to itself.
    """
    if f.a1 == f.a3:
        return f.a1
    return (f.a1 + f.a2 + f.a3) / 3.0


def weighted_sum(
    fs: Sequence[TriangularFuzzyNumber], ws: Sequence[float]
) -> TriangularFuzzyNumber:
    if len(fs) == 0:
        raise EmptyInputError("weighted_sum needs at least one fuzzy number")
    if len(fs) != len(ws):
        raise LengthMismatchError(f"{len(fs)} fuzzy numbers but {len(ws)} weights")
    if any(w < 0 for w in ws):
        raise EmptyInputError("weights must be non-negative")
    if not any(w > 0 for w in ws):
        raise EmptyInputError("at least one weight must be positive")
    a1 = math.fsum(w * f.a1 for f, w in zip(fs, ws))
    a2 = math.fsum(w * f.a2 for f, w in zip(fs, ws))
    a3 = math.fsum(w * f.a3 for f, w in zip(fs, ws))
    # fsum of ordered inputs can still tie-break by one ulp
    a2 = min(max(a2, a1), a3)
    return TriangularFuzzyNumber(a1, a2, a3)


@dataclass(frozen=True)
class PiecewiseLinearCurve:
    """Linear interpolation through ``breakpoints``; zero outside them.

    Consecutive breakpoints may share an ``x`` to encode a vertical jump
    (from a degenerate triangle leg); such a pair spans zero area.
    """

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        xs = [x for x, _ in self.breakpoints]
        if any(b < a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint x values must be non-decreasing")

    def area(self) -> float:
        pts = self.breakpoints
        return math.fsum(
            0.5 * (x1 - x0) * (y0 + y1) for (x0, y0), (x1, y1) in zip(pts, pts[1:])
        )

    def __call__(self, x: float) -> float:
        pts = self.breakpoints
        if not pts or x < pts[0][0] or x > pts[-1][0]:
            return 0.0
        best = 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                y = y0 if x1 == x0 else y0 + (y1 - y0) * (x - x0) / (x1 - x0)
                best = max(best, y)
        return best


def _leg_limits(f: TriangularFuzzyNumber, p: float, q: float) -> tuple[float, float]:
    # f is linear on (p, q) because every kink of f is an interval endpoint;
    # return its one-sided limits at p+ and q-.
    mid = 0.5 * (p + q)
    if mid <= f.a1 or mid >= f.a3:
        return 0.0, 0.0
    if mid < f.a2:
        d = f.a2 - f.a1
        return (p - f.a1) / d, (q - f.a1) / d
    d = f.a3 - f.a2
    return (f.a3 - p) / d, (f.a3 - q) / d


def envelope(
    a: TriangularFuzzyNumber, b: TriangularFuzzyNumber, kind: str = "min"
) -> PiecewiseLinearCurve:
    """Exact pointwise ``min`` (intersection) or ``max`` (union) of two triangles."""
    if kind not in ("min", "max"):
        raise ValueError("kind must be 'min' or 'max'")
    pick = min if kind == "min" else max
    xs = sorted({a.a1, a.a2, a.a3, b.a1, b.a2, b.a3})
    pts: list[tuple[float, float]] = []

    def push(x, y):
        if not pts or pts[-1] != (x, y):
            pts.append((x, y))

    for p, q in zip(xs, xs[1:]):
        ya_p, ya_q = _leg_limits(a, p, q)
        yb_p, yb_q = _leg_limits(b, p, q)
        push(p, pick(ya_p, yb_p))
        d_p, d_q = ya_p - yb_p, ya_q - yb_q
        if d_p * d_q < 0:
            t = d_p / (d_p - d_q)
            # averaging both lines keeps the result exactly symmetric in (a, b)
            y_c = 0.5 * ((ya_p + t * (ya_q - ya_p)) + (yb_p + t * (yb_q - yb_p)))
            # rounding can nudge the crossing past an endpoint on tiny intervals
            push(min(max(p + t * (q - p), p), q), y_c)
        push(q, pick(ya_q, yb_q))
    return PiecewiseLinearCurve(tuple(pts))


def intersection_area(a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> float:
    if a.a3 < b.a1 or b.a3 < a.a1:
        return 0.0
    return envelope(a, b, "min").area()


def union_area(a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> float:
    if a.a1 == a.a3 and b.a1 == b.a3:
        raise ZeroAreaError("union of two crisp numbers has zero area")
    return envelope(a, b, "max").area()


def non_exclusive_degree(a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> float:
    """Overlap ratio ``area(A and B) / area(A or B)`` in [0, 1]."""
    u = union_area(a, b)
    if u <= 0.0:
        raise ZeroAreaError(f"zero union area for {a} and {b}")
    return min(1.0, intersection_area(a, b) / u)
