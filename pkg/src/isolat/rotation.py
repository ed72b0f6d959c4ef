"""Tolerance-controlled quaternion arithmetic for rotations of R^3.

A rotation is stored as a unit quaternion [w, x, y, z] in a canonical sign:
the first component whose magnitude exceeds the tolerance is positive, so q
and -q collapse to a single representation.  All types here are immutable and
every operation is a pure function, so values can be shared freely across
threads.

The tolerance tau defaults to 1e-9 and can be overridden through the
ISOLAT_TOLERANCE environment variable (expert use only).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property

from .errors import GroupTooLarge

Vec3 = tuple[float, float, float]

TOLERANCE = float(os.environ.get("ISOLAT_TOLERANCE", "1e-9"))

# Cap on multiplicative closures.  The largest catalog group that has to fit
# is Dihedral(100) with 200 elements.
CLOSURE_CAP = 240
ORDER_CAP = 240

# Digits kept by the rounded-coordinate lookup used to dedupe group elements.
# Catalog groups keep pairwise quaternion distances far above 1e-6, so a
# bucket probe followed by eq() confirmation is exact in practice.
_KEY_DIGITS = 6


def round12(x: float) -> float:
    """Clamp to 12 significant digits; the precision of all emitted floats."""
    return float(f"{x:.12g}") + 0.0


def dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(v: Vec3) -> float:
    return math.sqrt(dot(v, v))


def scale(v: Vec3, s: float) -> Vec3:
    return (v[0] * s, v[1] * s, v[2] * s)


def vadd(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vsub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def normalize(v: Vec3) -> Vec3:
    n = norm(v)
    if n <= TOLERANCE:
        raise ValueError("cannot normalize a near-zero vector")
    return (v[0] / n, v[1] / n, v[2] / n)


def canon_direction(v: Vec3) -> Vec3:
    """Unit vector with canonical sign: first above-tolerance component > 0."""
    u = normalize(v)
    for c in u:
        if c > TOLERANCE:
            return u
        if c < -TOLERANCE:
            return (-u[0], -u[1], -u[2])
    return u


@dataclass(frozen=True)
class Rotation:
    """Unit quaternion in canonical sign; construction normalizes the input."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)
        if n < 0.5:
            raise ValueError("quaternion magnitude too small to normalize")
        w, x, y, z = self.w / n, self.x / n, self.y / n, self.z / n
        for c in (w, x, y, z):
            if c > TOLERANCE:
                break
            if c < -TOLERANCE:
                w, x, y, z = -w, -x, -y, -z
                break
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_axis_angle(cls, axis: Vec3, angle: float) -> "Rotation":
        u = normalize(axis)
        h = 0.5 * angle
        s = math.sin(h)
        return cls(math.cos(h), s * u[0], s * u[1], s * u[2])

    def inverse(self) -> "Rotation":
        return Rotation(self.w, -self.x, -self.y, -self.z)

    def key(self) -> tuple[float, float, float, float]:
        return (
            round(self.w, _KEY_DIGITS),
            round(self.x, _KEY_DIGITS),
            round(self.y, _KEY_DIGITS),
            round(self.z, _KEY_DIGITS),
        )

    def is_identity(self) -> bool:
        return (
            abs(self.x) <= TOLERANCE
            and abs(self.y) <= TOLERANCE
            and abs(self.z) <= TOLERANCE
        )


def compose(a: Rotation, b: Rotation) -> Rotation:
    """Rotation doing b first, then a (Hamilton product a*b)."""
    return Rotation(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def apply(r: Rotation, v: Vec3) -> Vec3:
    """Rotate a 3-vector.  Preserves the Euclidean norm up to roundoff."""
    vx, vy, vz = v
    qw, qx, qy, qz = r.w, r.x, r.y, r.z
    tx = 2.0 * (qy * vz - qz * vy)
    ty = 2.0 * (qz * vx - qx * vz)
    tz = 2.0 * (qx * vy - qy * vx)
    return (
        vx + qw * tx + qy * tz - qz * ty,
        vy + qw * ty + qz * tx - qx * tz,
        vz + qw * tz + qx * ty - qy * tx,
    )


def eq(a: Rotation, b: Rotation, tol: float | None = None) -> bool:
    """Same rotation within tolerance.

    Both arguments are already sign-canonical, but canonicalization is
    discontinuous where the leading component sits within tau of zero, so the
    flipped comparison is checked as well.
    """
    t = TOLERANCE if tol is None else tol
    if (
        abs(a.w - b.w) <= t
        and abs(a.x - b.x) <= t
        and abs(a.y - b.y) <= t
        and abs(a.z - b.z) <= t
    ):
        return True
    return (
        abs(a.w + b.w) <= t
        and abs(a.x + b.x) <= t
        and abs(a.y + b.y) <= t
        and abs(a.z + b.z) <= t
    )


@dataclass(frozen=True)
class AxisAngle:
    """Canonical axis-angle form: unit axis, angle in (0, pi].

    For a half turn the axis sign is free and is canonicalized; for smaller
    angles the axis direction is determined by the rotation itself.  order is
    the smallest k with rotation^k = identity, or None when no k <= ORDER_CAP
    works (an "infinite" order within the resolution of the tolerance).
    """

    axis: Vec3
    angle: float
    order: int | None


def _order_of_angle(angle: float) -> int | None:
    turns = angle / (2.0 * math.pi)
    for k in range(1, ORDER_CAP + 1):
        f = k * turns
        if abs(f - round(f)) <= TOLERANCE * k and round(f) >= 1:
            return k
    return None


def axis_angle_of(r: Rotation) -> AxisAngle | None:
    """Axis-angle form of a rotation, or None for the identity."""
    w, x, y, z = r.w, r.x, r.y, r.z
    if w < 0.0:
        # extraction is quaternion-sign agnostic; force angle into (0, pi]
        w, x, y, z = -w, -x, -y, -z
    vn = math.sqrt(x * x + y * y + z * z)
    if vn <= TOLERANCE:
        return None
    angle = 2.0 * math.atan2(vn, w)
    axis = (x / vn, y / vn, z / vn)
    if abs(angle - math.pi) <= TOLERANCE:
        axis = canon_direction(axis)
    return AxisAngle(axis, angle, _order_of_angle(angle))


@dataclass(frozen=True, eq=False)
class FiniteRotationGroup:
    """Immutable finite set of rotations, sorted deterministically.

    Closure is a construction-time guarantee (use close_group), not something
    rechecked on every instance; tests recheck it explicitly.
    """

    elements: tuple[Rotation, ...]

    @classmethod
    def from_elements(cls, elements, cap: int = CLOSURE_CAP) -> "FiniteRotationGroup":
        ident = Rotation.identity()
        unique: list[Rotation] = [ident]
        buckets: dict[tuple, list[int]] = {ident.key(): [0]}
        for r in elements:
            k = r.key()
            hits = buckets.get(k)
            if hits is not None and any(eq(unique[i], r) for i in hits):
                continue
            if len(unique) >= cap:
                raise GroupTooLarge(f"rotation set exceeds cap {cap}")
            buckets.setdefault(k, []).append(len(unique))
            unique.append(r)
        unique.sort(key=lambda r: (-r.key()[0], -r.key()[1], -r.key()[2], -r.key()[3]))
        return cls(tuple(unique))

    @cached_property
    def _buckets(self) -> dict:
        table: dict[tuple, list[int]] = {}
        for i, r in enumerate(self.elements):
            table.setdefault(r.key(), []).append(i)
        return table

    @cached_property
    def key_set(self) -> frozenset:
        return frozenset(r.key() for r in self.elements)

    def contains(self, r: Rotation) -> bool:
        hits = self._buckets.get(r.key())
        if not hits:
            return False
        return any(eq(self.elements[i], r) for i in hits)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRotationGroup):
            return NotImplemented
        return self.key_set == other.key_set

    def __hash__(self) -> int:
        return hash(self.key_set)


def close_group(generators, cap: int = CLOSURE_CAP) -> FiniteRotationGroup:
    """Multiplicative closure of the generators plus the identity.

    Breadth-first boundary multiplication; duplicates are detected with the
    rounded-coordinate lookup confirmed by eq.  Raises GroupTooLarge when the
    closure would exceed cap, which is also how generators of effectively
    infinite order surface.
    """
    ident = Rotation.identity()
    els: list[Rotation] = [ident]
    buckets: dict[tuple, list[int]] = {ident.key(): [0]}

    def seen(r: Rotation) -> bool:
        hits = buckets.get(r.key())
        return bool(hits) and any(eq(els[i], r) for i in hits)

    def add(r: Rotation) -> None:
        if len(els) >= cap:
            raise GroupTooLarge(f"closure exceeds cap {cap}")
        buckets.setdefault(r.key(), []).append(len(els))
        els.append(r)

    gens: list[Rotation] = []
    for g in generators:
        if not seen(g):
            add(g)
            gens.append(g)
    frontier = list(gens)
    while frontier:
        fresh: list[Rotation] = []
        for a in gens:
            for b in frontier:
                c = compose(a, b)
                if not seen(c):
                    add(c)
                    fresh.append(c)
        frontier = fresh
    return FiniteRotationGroup.from_elements(els, cap=cap)


def rotation_to_json(r: Rotation) -> dict:
    """Axis-angle record with angle in degrees, 12 significant digits."""
    aa = axis_angle_of(r)
    if aa is None:
        return {"axis": [0.0, 0.0, 1.0], "angle_deg": 0.0}
    return {
        "axis": [round12(c) for c in aa.axis],
        "angle_deg": round12(math.degrees(aa.angle)),
    }


def rotation_from_json(obj) -> Rotation:
    if not isinstance(obj, dict):
        raise ValueError("rotation record must be an object")
    axis = obj.get("axis")
    angle = obj.get("angle_deg")
    if (
        not isinstance(axis, (list, tuple))
        or len(axis) != 3
        or not all(isinstance(c, (int, float)) for c in axis)
    ):
        raise ValueError("axis must be a list of three numbers")
    if not isinstance(angle, (int, float)):
        raise ValueError("angle_deg must be a number")
    a = math.radians(float(angle))
    if abs(a) <= TOLERANCE:
        return Rotation.identity()
    return Rotation.from_axis_angle((float(axis[0]), float(axis[1]), float(axis[2])), a)
