"""Exact rational scalars and the geometric predicates behind every solver.

All coordinates and radii are `fractions.Fraction` values; every predicate
compares squared distances, so no square roots (and no floats) ever appear.
Tangent objects intersect and all region boundaries are closed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import PreconditionError, ValidationError

# Exact rational scalar used for every coordinate, radius and squared distance.
Scalar = Fraction

ObjectId = Union[str, int]

_DEC_PRIMES = (2, 5)


def scalar(value: int | str | Fraction) -> Fraction:
    """Parse an exact scalar from an int, a Fraction or a decimal string.

    Floats are rejected: binary floats do not round-trip through decimal
    notation and would silently break exactness guarantees.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"refusing inexact scalar of type {type(value).__name__}: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse scalar from {value!r}") from exc
    raise ValidationError(f"cannot build scalar from {type(value).__name__}")


def scalar_to_decimal(value: Fraction) -> str:
    """Render a scalar as a canonical finite decimal string.

    Only works when the reduced denominator is of the form 2^a * 5^b;
    other denominators have no finite decimal expansion.
    """
    num, den = value.numerator, value.denominator
    shift = 0
    d = den
    for p in _DEC_PRIMES:
        while d % p == 0:
            d //= p
            shift += 1
    if d != 1:
        raise ValidationError(f"{value} has no finite decimal representation")
    # Scale to an integer over a power of ten, then trim trailing zeros.
    exp = 0
    d = den
    while d % 10 == 0:
        d //= 10
        exp += 1
    while d > 1:
        if d % 2 == 0:
            d //= 2
            num *= 5
        else:
            d //= 5
            num *= 2
        exp += 1
    sign = "-" if num < 0 else ""
    digits = str(abs(num))
    if exp == 0:
        return sign + digits
    digits = digits.rjust(exp + 1, "0")
    whole, frac = digits[:-exp], digits[-exp:]
    frac = frac.rstrip("0")
    return sign + whole + ("." + frac if frac else "")


class Side(enum.Enum):
    """Which half of a slab (or which extended envelope) a test refers to."""

    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", scalar(self.x))
        object.__setattr__(self, "y", scalar(self.y))


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", scalar(self.x))
        object.__setattr__(self, "y", scalar(self.y))
        object.__setattr__(self, "z", scalar(self.z))


@dataclass(frozen=True)
class Disk:
    id: ObjectId
    center: Point2
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", scalar(self.radius))
        if self.radius <= 0:
            raise ValidationError(f"disk {self.id!r} has non-positive radius {self.radius}")


@dataclass(frozen=True)
class Ball:
    id: ObjectId
    center: Point3
    radius: Fraction
    plane_index: int

    def __post_init__(self):
        object.__setattr__(self, "radius", scalar(self.radius))
        if self.radius <= 0:
            raise ValidationError(f"ball {self.id!r} has non-positive radius {self.radius}")


PLANE_PARALLEL_XY = "parallel_xy"
PLANE_PERP_XZ = "perp_xz"


@dataclass(frozen=True)
class Plane:
    """A plane carrying ball centers.

    Two kinds exist: planes parallel to the xy-plane (z = z0) and planes
    perpendicular to the xz-plane (alpha*x + gamma*z = delta, containing the
    y-direction).  Perpendicular planes are sign-canonicalized so the first
    nonzero of (alpha, gamma) is positive.
    """

    kind: str
    z0: Fraction | None = None
    alpha: Fraction | None = None
    gamma: Fraction | None = None
    delta: Fraction | None = None

    @classmethod
    def parallel_xy(cls, z0) -> "Plane":
        return cls(PLANE_PARALLEL_XY, z0=scalar(z0))

    @classmethod
    def perp_xz(cls, alpha, gamma, delta) -> "Plane":
        a, g, d = scalar(alpha), scalar(gamma), scalar(delta)
        if a == 0 and g == 0:
            raise ValidationError("perpendicular plane needs (alpha, gamma) != (0, 0)")
        lead = a if a != 0 else g
        if lead < 0:
            a, g, d = -a, -g, -d
        return cls(PLANE_PERP_XZ, alpha=a, gamma=g, delta=d)

    def contains(self, p: Point3) -> bool:
        if self.kind == PLANE_PARALLEL_XY:
            return p.z == self.z0
        return self.alpha * p.x + self.gamma * p.z == self.delta

    def trace_position(self, p: Point3) -> Fraction:
        """Position of p along the plane's trace line in the xz-plane.

        The trace direction is (gamma, -alpha), sign-flipped so its first
        nonzero component is positive; this makes "leftmost" well defined
        even for planes of constant x.
        """
        if self.kind != PLANE_PERP_XZ:
            raise PreconditionError("trace_position applies to perpendicular planes only")
        dx, dz = self.gamma, -self.alpha
        lead = dx if dx != 0 else dz
        if lead < 0:
            dx, dz = -dx, -dz
        return dx * p.x + dz * p.z


@dataclass(frozen=True)
class RadiusClass:
    """One of the k distinct radii of an instance, in increasing order."""

    index: int  # 1-based
    radius: Fraction


def radius_classes(objects: Iterable[Disk | Ball]) -> list[RadiusClass]:
    """Group objects by exact radius equality, smallest radius first."""
    radii = sorted({obj.radius for obj in objects})
    return [RadiusClass(i + 1, r) for i, r in enumerate(radii)]


def class_index_by_id(objects: Iterable[Disk | Ball]) -> dict[ObjectId, int]:
    classes = radius_classes(objects)
    lookup = {c.radius: c.index for c in classes}
    return {obj.id: lookup[obj.radius] for obj in objects}


def dist_sq(p, q) -> Fraction:
    """Squared Euclidean distance; p and q must share a dimension."""
    if isinstance(p, Point2) and isinstance(q, Point2):
        dx, dy = p.x - q.x, p.y - q.y
        return dx * dx + dy * dy
    if isinstance(p, Point3) and isinstance(q, Point3):
        dx, dy, dz = p.x - q.x, p.y - q.y, p.z - q.z
        return dx * dx + dy * dy + dz * dz
    raise TypeError(f"dimension mismatch: {type(p).__name__} vs {type(q).__name__}")


def disks_intersect(d1: Disk, d2: Disk) -> bool:
    """Closed-disk intersection test; tangent disks intersect."""
    rsum = d1.radius + d2.radius
    return dist_sq(d1.center, d2.center) <= rsum * rsum


def balls_intersect(b1: Ball, b2: Ball) -> bool:
    """Closed-ball intersection test; tangent balls intersect."""
    rsum = b1.radius + b2.radius
    return dist_sq(b1.center, b2.center) <= rsum * rsum


def in_slab(a: Point2, b: Point2, q: Point2, side: Side) -> bool:
    """Closed membership of q in the upper/lower slab of segment ab.

    The slab is the region on one side of ab bounded by the vertical lines
    through a and b.  For a vertical segment the slab degenerates to the ray
    above (below) the segment, and for a == b to the ray from that point.
    """
    if a.x == b.x:
        if q.x != a.x:
            return False
        if side is Side.UPPER:
            return q.y >= max(a.y, b.y)
        return q.y <= min(a.y, b.y)
    lo, hi = (a, b) if a.x < b.x else (b, a)
    if not (lo.x <= q.x <= hi.x):
        return False
    cross = (hi.x - lo.x) * (q.y - lo.y) - (hi.y - lo.y) * (q.x - lo.x)
    return cross >= 0 if side is Side.UPPER else cross <= 0


def _require_parallel_plane(*points: Point3) -> None:
    zs = {p.z for p in points}
    if len(zs) != 1:
        raise PreconditionError(f"points span multiple z-levels: {sorted(zs)}")


def in_slab_on_plane(a: Point3, b: Point3, q: Point3, side: Side) -> bool:
    """in_slab on a shared plane parallel to the xy-plane."""
    _require_parallel_plane(a, b, q)
    return in_slab(Point2(a.x, a.y), Point2(b.x, b.y), Point2(q.x, q.y), side)


def slab_bound_holds(a, b, q, p) -> bool:
    """Check |pq|^2 <= max(|pa|^2, |pb|^2) for q in the upper slab of ab.

    Preconditions (q in the upper slab, y_p >= y_q; in 3D additionally a, b, q
    on one plane parallel to the xy-plane) are enforced so that a False return
    can only mean a genuine counterexample, never a misuse.  Geometry says
    this never returns False; tests lean on that.
    """
    if isinstance(a, Point3):
        if not in_slab_on_plane(a, b, q, Side.UPPER):
            raise PreconditionError("q is not in the upper slab of ab on its plane")
    else:
        if not in_slab(a, b, q, Side.UPPER):
            raise PreconditionError("q is not in the upper slab of ab")
    if p.y < q.y:
        raise PreconditionError("p must not lie below q")
    return dist_sq(p, q) <= max(dist_sq(p, a), dist_sq(p, b))


def project_xz(p: Point3) -> Point2:
    """Drop the y-coordinate: (x, y, z) -> (x, z)."""
    return Point2(p.x, p.z)


def _barycentric_value(points: list[Point3], x: Fraction, z: Fraction) -> list[Fraction]:
    """All attainable y-values at column (x, z) over hull members of `points`.

    Enumerates singletons, pairs and affinely independent triples whose
    xz-projections contain (x, z), returning the interpolated y of each.
    Empty result means (x, z) lies outside the projected convex hull.
    """
    values: list[Fraction] = []
    pts = points
    n = len(pts)
    for i in range(n):
        if pts[i].x == x and pts[i].z == z:
            values.append(pts[i].y)
    for i in range(n):
        for j in range(i + 1, n):
            u, v = pts[i], pts[j]
            ex, ez = v.x - u.x, v.z - u.z
            if ex == 0 and ez == 0:
                continue
            if ex * (z - u.z) - ez * (x - u.x) != 0:
                continue
            denom = ex * ex + ez * ez
            t = (ex * (x - u.x) + ez * (z - u.z)) / denom
            if 0 <= t <= 1:
                values.append(u.y + t * (v.y - u.y))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                u, v, w = pts[i], pts[j], pts[k]
                d1x, d1z = v.x - u.x, v.z - u.z
                d2x, d2z = w.x - u.x, w.z - u.z
                denom = d1x * d2z - d1z * d2x
                if denom == 0:
                    continue
                qx, qz = x - u.x, z - u.z
                lv = (qx * d2z - qz * d2x) / denom
                lw = (d1x * qz - d1z * qx) / denom
                lu = 1 - lv - lw
                if lu >= 0 and lv >= 0 and lw >= 0:
                    values.append(lu * u.y + lv * v.y + lw * w.y)
    return values


def in_extended_envelope(points: Iterable[Point3], q: Point3, side: Side) -> bool:
    """Membership of q in the extended lower/upper envelope of a point set.

    The extended lower envelope of Q is conv(Q) swept along the +y ray (the
    upper envelope sweeps along -y).  Evaluated exactly: the xz-projection of
    q must fall in the projected hull of Q, and q.y must be on or above the
    hull's lowest y at that column (on or below the highest, for UPPER).
    """
    pts = list(points)
    if not pts:
        raise ValidationError("envelope of an empty point set")
    values = _barycentric_value(pts, q.x, q.z)
    if not values:
        return False
    if side is Side.LOWER:
        return q.y >= min(values)
    return q.y <= max(values)
