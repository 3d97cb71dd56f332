"""2-D geometry for the receiver model: points, wall segments, occlusion.

Intersection tests are closed: a path that merely touches a wall endpoint
counts as a crossing. This keeps occlusion conservative and tie-breaking
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def distance_to(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class WallSegment:
    """A wall (or window) between two points.

    `sound_attenuation_db` is the loss a sound signal suffers crossing it;
    `opaque` controls whether it blocks line of sight. A sound-proof window
    is opaque=False with a large attenuation; a plain solid wall is
    opaque=True.
    """

    id: str
    start: Point2D
    end: Point2D
    sound_attenuation_db: float = 0.0
    opaque: bool = True

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError(f"wall {self.id!r} is degenerate (start == end)")
        if self.sound_attenuation_db < 0:
            raise ValueError(f"wall {self.id!r} has negative attenuation")


def _orient(a: Point2D, b: Point2D, c: Point2D) -> int:
    """Sign of the cross product (b-a) x (c-a): 1 ccw, -1 cw, 0 collinear.

    Evaluated in exact rational arithmetic (floats are dyadic rationals),
    so the predicate never flips sign under rounding and intersection
    tests stay symmetric in their arguments.
    """
    ax, ay = Fraction(a.x), Fraction(a.y)
    v = (Fraction(b.x) - ax) * (Fraction(c.y) - ay) - (
        Fraction(b.y) - ay
    ) * (Fraction(c.x) - ax)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _on_segment(a: Point2D, b: Point2D, p: Point2D) -> bool:
    """True if collinear point p lies within the closed bounding box of a-b."""
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(p1: Point2D, p2: Point2D, q1: Point2D, q2: Point2D) -> bool:
    """Closed intersection test between segments p1-p2 and q1-q2."""
    o1 = _orient(p1, p2, q1)
    o2 = _orient(p1, p2, q2)
    o3 = _orient(q1, q2, p1)
    o4 = _orient(q1, q2, p2)

    if o1 != o2 and o3 != o4:
        return True
    # Collinear/touching cases: endpoint of one segment lies on the other.
    if o1 == 0 and _on_segment(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment(p1, p2, q2):
        return True
    if o3 == 0 and _on_segment(q1, q2, p1):
        return True
    if o4 == 0 and _on_segment(q1, q2, p2):
        return True
    return False


def wall_crossings(a: Point2D, b: Point2D, walls: list[WallSegment]) -> list[str]:
    """Ids of walls whose segment intersects the closed segment a-b.

    Returned in the order the walls were given. The degenerate path a == b
    crosses nothing.
    """
    if a == b:
        return []
    return [w.id for w in walls if segments_intersect(a, b, w.start, w.end)]


def line_of_sight(a: Point2D, b: Point2D, walls: list[WallSegment]) -> bool:
    """True iff no opaque wall intersects the segment a-b.

    Non-opaque walls (windows) attenuate sound but never block vision.
    """
    if a == b:
        return True
    return not any(
        w.opaque and segments_intersect(a, b, w.start, w.end) for w in walls
    )
