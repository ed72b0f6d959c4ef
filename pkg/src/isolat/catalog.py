"""Catalog of closed subgroups of SO(3) up to conjugacy.

Conjugacy classes are named by a ClassTag with nine kinds: the trivial group,
cyclic C_n and dihedral D_n families, the three exceptional rotation groups
(tetrahedral, octahedral, icosahedral), the circle SO(2), the half-turn
extension O(2), and SO(3) itself.  Concrete subgroups carry enough geometry
to intersect and conjugate them exactly.

The subconjugation partial order on tags is a closed rule table; it is what
the lattice layers consume.  Everything geometric (classification, canonical
representatives, subgroup enumeration, intersections, embeddings) lives here
too so that the lattice layers never touch raw quaternions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import GroupTooLarge, NotSubconjugate, UnclassifiableGroup
from .rotation import (
    CLOSURE_CAP,
    TOLERANCE,
    FiniteRotationGroup,
    Rotation,
    Vec3,
    apply,
    axis_angle_of,
    canon_direction,
    close_group,
    compose,
    cross,
    dot,
    normalize,
)

# Largest n admitted for C_n and D_n tags.
N_CAP = 100

_KINDS = ("1", "C", "D", "T", "O", "I", "SO2", "O2", "SO3")
_KIND_RANK = {k: i for i, k in enumerate(_KINDS)}

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

_Z: Vec3 = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class ClassTag:
    """Conjugacy class of a closed subgroup of SO(3)."""

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind in ("C", "D"):
            if not isinstance(self.n, int) or isinstance(self.n, bool):
                raise ValueError(f"{self.kind} tag needs an integer index")
            if self.n < 2 or self.n > N_CAP:
                raise ValueError(f"{self.kind} index must lie in 2..{N_CAP}, got {self.n}")
        elif self.n is not None:
            raise ValueError(f"{self.kind} tag takes no index")

    def display(self) -> str:
        if self.kind in ("C", "D"):
            return f"{self.kind}{self.n}"
        return {"1": "1", "T": "T", "O": "O", "I": "I",
                "SO2": "SO(2)", "O2": "O(2)", "SO3": "SO(3)"}[self.kind]

    def short(self) -> str:
        if self.kind in ("C", "D"):
            return f"{self.kind}{self.n}"
        return self.kind

    def min_order(self) -> int | None:
        """Group order for finite kinds, None for the continuous ones."""
        if self.kind == "1":
            return 1
        if self.kind == "C":
            return self.n
        if self.kind == "D":
            return 2 * self.n
        if self.kind == "T":
            return 12
        if self.kind == "O":
            return 24
        if self.kind == "I":
            return 60
        return None


TRIVIAL = ClassTag("1")
TETRA = ClassTag("T")
OCTA = ClassTag("O")
ICOSA = ClassTag("I")
CIRCLE = ClassTag("SO2")
ORTH_CIRCLE = ClassTag("O2")
FULL = ClassTag("SO3")


def cyclic(n: int) -> ClassTag:
    return ClassTag("C", n)


def dihedral(n: int) -> ClassTag:
    return ClassTag("D", n)


def tag_sort_key(t: ClassTag):
    """Total order: by group order, infinite kinds last, ties by kind then n."""
    mo = t.min_order()
    rank = _KIND_RANK[t.kind]
    return (mo if mo is not None else 10**6 + rank, rank, t.n or 0)


def tag_to_json(t: ClassTag) -> dict:
    if t.n is None:
        return {"kind": t.kind}
    return {"kind": t.kind, "n": t.n}


def tag_from_json(obj) -> ClassTag:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("class tag must be an object with a 'kind' field")
    kind = obj["kind"]
    n = obj.get("n")
    if not isinstance(kind, str):
        raise ValueError("tag kind must be a string")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool)):
        raise ValueError("tag index must be an integer")
    return ClassTag(kind, n)


def parse_tag(s: str) -> ClassTag:
    """Short-form parser: '1', 'C4', 'D6', 'T', 'O', 'I', 'SO2', 'O2', 'SO3'."""
    if s in ("1", "T", "O", "I", "SO2", "O2", "SO3"):
        return ClassTag(s)
    if len(s) >= 2 and s[0] in ("C", "D") and s[1:].isdigit():
        return ClassTag(s[0], int(s[1:]))
    raise ValueError(f"cannot parse class tag {s!r}")


# ---------------------------------------------------------------------------
# Concrete subgroups


@dataclass(frozen=True)
class FiniteSub:
    group: FiniteRotationGroup


@dataclass(frozen=True)
class CircleSub:
    """All rotations about a fixed axis (axis sign is quotiented away)."""

    axis: Vec3

    def __post_init__(self):
        object.__setattr__(self, "axis", canon_direction(self.axis))


@dataclass(frozen=True)
class OrthCircleSub:
    """Rotations about the axis plus half turns about every orthogonal axis.

    flip_phase in [0, pi) fixes a reference orthogonal direction
    in_plane_direction(axis, flip_phase).  The group itself does not depend
    on the phase (all orthogonal half turns belong to it); the phase only
    marks a distinguished position used when the group arises as the linear
    isotropy of a covector.
    """

    axis: Vec3
    flip_phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "axis", canon_direction(self.axis))
        p = math.fmod(self.flip_phase, math.pi)
        if p < 0.0:
            p += math.pi
        if math.pi - p <= TOLERANCE:
            p = 0.0
        object.__setattr__(self, "flip_phase", p)


@dataclass(frozen=True)
class FullSub:
    pass


ConcreteSubgroup = FiniteSub | CircleSub | OrthCircleSub | FullSub


def vec_reject(v: Vec3, unit: Vec3) -> Vec3:
    d = dot(v, unit)
    return (v[0] - d * unit[0], v[1] - d * unit[1], v[2] - d * unit[2])


def perp_frame(axis: Vec3) -> tuple[Vec3, Vec3]:
    """Right-handed orthonormal pair (u, v) spanning the plane orthogonal to axis."""
    a = normalize(axis)
    u = vec_reject((1.0, 0.0, 0.0), a)
    if math.sqrt(dot(u, u)) <= 1e-6:
        u = vec_reject((0.0, 1.0, 0.0), a)
    u = normalize(u)
    return (u, cross(a, u))


def in_plane_direction(axis: Vec3, phase: float) -> Vec3:
    u, v = perp_frame(axis)
    c, s = math.cos(phase), math.sin(phase)
    return (
        c * u[0] + s * v[0],
        c * u[1] + s * v[1],
        c * u[2] + s * v[2],
    )


def trivial_group() -> FiniteSub:
    return FiniteSub(FiniteRotationGroup.from_elements([]))


def cyclic_group(n: int, axis: Vec3 = _Z) -> FiniteSub:
    els = [Rotation.from_axis_angle(axis, 2.0 * math.pi * k / n) for k in range(1, n)]
    return FiniteSub(FiniteRotationGroup.from_elements(els))


def dihedral_group(n: int, axis: Vec3 = _Z, phase: float = 0.0) -> FiniteSub:
    els = [Rotation.from_axis_angle(axis, 2.0 * math.pi * k / n) for k in range(1, n)]
    for k in range(n):
        flip_dir = in_plane_direction(axis, phase + math.pi * k / n)
        els.append(Rotation.from_axis_angle(flip_dir, math.pi))
    return FiniteSub(FiniteRotationGroup.from_elements(els))


def conjugate_rotation(h: Rotation, r: Rotation) -> Rotation:
    return compose(h, compose(r, h.inverse()))


def conjugate_group(h: Rotation, S: ConcreteSubgroup) -> ConcreteSubgroup:
    if isinstance(S, FiniteSub):
        return FiniteSub(
            FiniteRotationGroup.from_elements(
                [conjugate_rotation(h, r) for r in S.group]
            )
        )
    if isinstance(S, CircleSub):
        return CircleSub(apply(h, S.axis))
    if isinstance(S, OrthCircleSub):
        # canonicalize before building the frame: the constructor flips the
        # axis sign, which negates v and would mirror the recovered phase
        new_axis = canon_direction(apply(h, S.axis))
        ref = apply(h, in_plane_direction(S.axis, S.flip_phase))
        u, v = perp_frame(new_axis)
        return OrthCircleSub(new_axis, math.atan2(dot(ref, v), dot(ref, u)))
    return S


# ---------------------------------------------------------------------------
# Classification of finite rotation groups


def axis_lines(F: FiniteRotationGroup) -> list[tuple[Vec3, int]]:
    """Rotation axes of F as lines, each with the order of its axial subgroup.

    Returns (canonical direction, k) pairs sorted descending by k, where k-1
    is the number of non-identity elements of F fixing the line.
    """
    counts: dict[tuple, list] = {}
    for r in F:
        aa = axis_angle_of(r)
        if aa is None:
            continue
        d = canon_direction(aa.axis)
        key = tuple(round(c, 6) for c in d)
        slot = counts.setdefault(key, [d, 0, 0])
        slot[1] += 1
        if aa.order is not None:
            slot[2] = max(slot[2], aa.order)
    lines: list[tuple[Vec3, int]] = []
    for d, count, max_order in counts.values():
        k = count + 1
        if max_order != k:
            raise UnclassifiableGroup(
                "axial subgroup is not cyclic of the expected order"
            )
        lines.append((d, k))
    lines.sort(key=lambda item: (-item[1], tuple(-c for c in item[0])))
    return lines


def classify_finite(F: FiniteRotationGroup) -> ClassTag:
    """Conjugacy class of a finite rotation group.

    The multiset of rotation-axis lines separates the finite subgroups of
    SO(3) completely, so classification only inspects that.
    """
    n = len(F)
    if n == 1:
        return TRIVIAL
    lines = axis_lines(F)
    if len(lines) == 1:
        d, k = lines[0]
        if k != n:
            raise UnclassifiableGroup("single-axis group of inconsistent order")
        if n > N_CAP:
            raise UnclassifiableGroup(f"cyclic order {n} exceeds cap {N_CAP}")
        return cyclic(n)
    if n % 2 == 0:
        m = n // 2
        if m == 2:
            if len(lines) == 3 and all(k == 2 for _, k in lines) and _mutually_perp(
                [d for d, _ in lines]
            ):
                return dihedral(2)
        elif m >= 3:
            tops = [(d, k) for d, k in lines if k == m]
            twos = [(d, k) for d, k in lines if k == 2]
            if (
                len(tops) == 1
                and len(twos) == m
                and len(lines) == m + 1
                and all(abs(dot(tops[0][0], d)) <= 1e-7 for d, _ in twos)
            ):
                if m > N_CAP:
                    raise UnclassifiableGroup(f"dihedral index {m} exceeds cap {N_CAP}")
                return dihedral(m)
    profile = sorted(k for _, k in lines)
    if n == 12 and profile == [2, 2, 2, 3, 3, 3, 3]:
        return TETRA
    if n == 24 and profile == [2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4]:
        return OCTA
    if n == 60 and profile == [2] * 15 + [3] * 10 + [5] * 6:
        return ICOSA
    raise UnclassifiableGroup(f"order-{n} group matches no catalog family")


def _mutually_perp(dirs: list[Vec3]) -> bool:
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            if abs(dot(dirs[i], dirs[j])) > 1e-7:
                return False
    return True


def g_class_of(S: ConcreteSubgroup) -> ClassTag:
    if isinstance(S, FiniteSub):
        return classify_finite(S.group)
    if isinstance(S, CircleSub):
        return CIRCLE
    if isinstance(S, OrthCircleSub):
        return ORTH_CIRCLE
    return FULL


# ---------------------------------------------------------------------------
# Canonical representatives


def _tetra_elements() -> list[Rotation]:
    els = [
        Rotation.from_axis_angle((1.0, 0.0, 0.0), math.pi),
        Rotation.from_axis_angle((0.0, 1.0, 0.0), math.pi),
        Rotation.from_axis_angle((0.0, 0.0, 1.0), math.pi),
    ]
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            d = (sx, sy, 1.0)
            els.append(Rotation.from_axis_angle(d, 2.0 * math.pi / 3.0))
            els.append(Rotation.from_axis_angle(d, -2.0 * math.pi / 3.0))
    return els


def _octa_elements() -> list[Rotation]:
    els: list[Rotation] = []
    for ax in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)):
        for ang in (math.pi / 2.0, math.pi, 3.0 * math.pi / 2.0):
            els.append(Rotation.from_axis_angle(ax, ang))
    for d in (
        (1.0, 1.0, 0.0),
        (1.0, -1.0, 0.0),
        (1.0, 0.0, 1.0),
        (1.0, 0.0, -1.0),
        (0.0, 1.0, 1.0),
        (0.0, 1.0, -1.0),
    ):
        els.append(Rotation.from_axis_angle(d, math.pi))
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            d = (sx, sy, 1.0)
            els.append(Rotation.from_axis_angle(d, 2.0 * math.pi / 3.0))
            els.append(Rotation.from_axis_angle(d, -2.0 * math.pi / 3.0))
    return els


@lru_cache(maxsize=None)
def canonical_rep(t: ClassTag) -> ConcreteSubgroup:
    """Fixed concrete representative of a class, oriented about the z axis."""
    if t.kind == "1":
        return trivial_group()
    if t.kind == "C":
        return cyclic_group(t.n)
    if t.kind == "D":
        return dihedral_group(t.n)
    if t.kind == "T":
        return FiniteSub(FiniteRotationGroup.from_elements(_tetra_elements()))
    if t.kind == "O":
        return FiniteSub(FiniteRotationGroup.from_elements(_octa_elements()))
    if t.kind == "I":
        five = Rotation.from_axis_angle((GOLDEN, 0.0, 1.0), 2.0 * math.pi / 5.0)
        two = Rotation.from_axis_angle(_Z, math.pi)
        F = close_group([five, two])
        if len(F) != 60:
            raise UnclassifiableGroup("icosahedral generators failed to close at 60")
        return FiniteSub(F)
    if t.kind == "SO2":
        return CircleSub(_Z)
    if t.kind == "O2":
        return OrthCircleSub(_Z, 0.0)
    return FullSub()


# ---------------------------------------------------------------------------
# Subconjugation partial order on tags

_EXC_CYCLIC = {"T": (2, 3), "O": (2, 3, 4), "I": (2, 3, 5)}
_EXC_DIHEDRAL = {"T": (2,), "O": (2, 3, 4), "I": (2, 3, 5)}


def is_subconjugate(a: ClassTag, b: ClassTag) -> bool:
    """True when some conjugate of a representative of a lies inside b's."""
    if a == b:
        return True
    if a.kind == "1" or b.kind == "SO3":
        return True
    if b.kind == "1":
        return False
    if a.kind == "C":
        if b.kind == "C":
            return b.n % a.n == 0
        if b.kind == "D":
            return b.n % a.n == 0 or a.n == 2
        if b.kind in _EXC_CYCLIC:
            return a.n in _EXC_CYCLIC[b.kind]
        return b.kind in ("SO2", "O2")
    if a.kind == "D":
        if b.kind == "D":
            return b.n % a.n == 0
        if b.kind in _EXC_DIHEDRAL:
            return a.n in _EXC_DIHEDRAL[b.kind]
        return b.kind == "O2"
    if a.kind == "T":
        return b.kind in ("O", "I")
    if a.kind == "SO2":
        return b.kind == "O2"
    return False


# ---------------------------------------------------------------------------
# Subgroup enumeration for small finite groups

SUBGROUPS_ORDER_CAP = 120


def _cyclic_closure(r: Rotation) -> FiniteRotationGroup:
    els = [r]
    cur = r
    while not cur.is_identity():
        cur = compose(cur, r)
        els.append(cur)
        if len(els) > CLOSURE_CAP:
            raise GroupTooLarge("element order exceeds the closure cap")
    return FiniteRotationGroup.from_elements(els)


def principal_axis(F: FiniteRotationGroup) -> Vec3:
    """Distinguished axis line of a finite group (zero for the trivial one).

    Cyclic groups: the rotation line.  Dihedral with n >= 3: the order-n
    line.  D2 and the exceptional groups have no single distinguished line,
    so the lexicographically largest among the highest-order lines is used.
    """
    if len(F) == 1:
        return (0.0, 0.0, 0.0)
    lines = axis_lines(F)
    tag = classify_finite(F)
    if tag.kind == "C":
        return lines[0][0]
    if tag.kind == "D" and tag.n >= 3:
        return max(d for d, k in lines if k == tag.n)
    top_k = lines[0][1]
    return max(d for d, k in lines if k == top_k)


def _subgroup_sort_key(F: FiniteRotationGroup):
    return (
        len(F),
        tag_sort_key(classify_finite(F)),
        principal_axis(F),
        tuple(sorted(F.key_set)),
    )


@lru_cache(maxsize=None)
def _subgroups_cached(F: FiniteRotationGroup) -> tuple[FiniteRotationGroup, ...]:
    found: dict[frozenset, FiniteRotationGroup] = {}
    gens_of: dict[frozenset, tuple[Rotation, ...]] = {}

    triv = FiniteRotationGroup.from_elements([])
    found[triv.key_set] = triv
    gens_of[triv.key_set] = ()

    for r in F:
        if r.is_identity():
            continue
        C = _cyclic_closure(r)
        if C.key_set not in found:
            found[C.key_set] = C
            gens_of[C.key_set] = (r,)

    # Pairwise joins to a fixpoint.  Joins stay inside F, so the closure cap
    # is |F|; a larger join means the inputs were not subgroups of F.
    done: set[frozenset] = set()
    while True:
        items = sorted(
            found.values(), key=lambda S: (len(S), tuple(sorted(S.key_set)))
        )
        progress = False
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                A, B = items[i], items[j]
                pair_key = frozenset((A.key_set, B.key_set))
                if pair_key in done:
                    continue
                done.add(pair_key)
                if A.key_set <= B.key_set or B.key_set <= A.key_set:
                    continue
                J = close_group(
                    gens_of[A.key_set] + gens_of[B.key_set], cap=len(F) + 1
                )
                if len(J) > len(F):
                    raise UnclassifiableGroup("join escaped the parent group")
                if J.key_set not in found:
                    found[J.key_set] = J
                    gens_of[J.key_set] = gens_of[A.key_set] + gens_of[B.key_set]
                    progress = True
        if not progress:
            break

    return tuple(sorted(found.values(), key=_subgroup_sort_key))


def subgroups_of(F: FiniteRotationGroup) -> tuple[FiniteRotationGroup, ...]:
    """All subgroups of F, deterministically ordered.

    Every subgroup is generated by its cyclic subgroups, so closing the set
    of cyclic closures under pairwise join is exhaustive.
    """
    if len(F) > SUBGROUPS_ORDER_CAP:
        raise ValueError(
            f"subgroup enumeration is limited to order {SUBGROUPS_ORDER_CAP}"
        )
    return _subgroups_cached(F)


# ---------------------------------------------------------------------------
# Membership, intersection, equality


def subgroup_contains(S: ConcreteSubgroup, r: Rotation) -> bool:
    if isinstance(S, FullSub):
        return True
    if isinstance(S, FiniteSub):
        return S.group.contains(r)
    aa = axis_angle_of(r)
    if aa is None:
        return True
    along = abs(dot(aa.axis, S.axis)) >= 1.0 - 1e-9
    if isinstance(S, CircleSub):
        return along
    if along:
        return True
    return abs(aa.angle - math.pi) <= TOLERANCE and abs(dot(aa.axis, S.axis)) <= 1e-9


def _same_line(a: Vec3, b: Vec3) -> bool:
    return abs(abs(dot(a, b)) - 1.0) <= 1e-9


def _perp(a: Vec3, b: Vec3) -> bool:
    return abs(dot(a, b)) <= 1e-9


def intersect(A: ConcreteSubgroup, B: ConcreteSubgroup) -> ConcreteSubgroup:
    """Exact intersection of two concrete subgroups."""
    if isinstance(A, FullSub):
        return B
    if isinstance(B, FullSub):
        return A
    if isinstance(A, FiniteSub) or isinstance(B, FiniteSub):
        if isinstance(A, FiniteSub) and isinstance(B, FiniteSub):
            small, other = (A, B) if len(A.group) <= len(B.group) else (B, A)
        elif isinstance(A, FiniteSub):
            small, other = A, B
        else:
            small, other = B, A
        kept = [r for r in small.group if subgroup_contains(other, r)]
        return FiniteSub(FiniteRotationGroup.from_elements(kept))
    if isinstance(A, CircleSub) and isinstance(B, CircleSub):
        return A if _same_line(A.axis, B.axis) else trivial_group()
    if isinstance(A, OrthCircleSub) and isinstance(B, OrthCircleSub):
        if _same_line(A.axis, B.axis):
            return A
        # Rotations shared by distinct-axis copies are half turns about axes
        # orthogonal to both.  a x b always qualifies; for perpendicular a, b
        # the two axes themselves do as well, giving a Klein group.
        common = canon_direction(cross(A.axis, B.axis))
        if _perp(A.axis, B.axis):
            els = [
                Rotation.from_axis_angle(A.axis, math.pi),
                Rotation.from_axis_angle(B.axis, math.pi),
                Rotation.from_axis_angle(common, math.pi),
            ]
            return FiniteSub(FiniteRotationGroup.from_elements(els))
        return _flip_group(common)
    circ, orth = (A, B) if isinstance(A, CircleSub) else (B, A)
    if _same_line(circ.axis, orth.axis):
        return CircleSub(circ.axis)
    if _perp(circ.axis, orth.axis):
        return _flip_group(circ.axis)
    return trivial_group()


def subgroup_equal(A: ConcreteSubgroup, B: ConcreteSubgroup) -> bool:
    if isinstance(A, FiniteSub) and isinstance(B, FiniteSub):
        return A.group == B.group
    if isinstance(A, CircleSub) and isinstance(B, CircleSub):
        return _same_line(A.axis, B.axis)
    if isinstance(A, OrthCircleSub) and isinstance(B, OrthCircleSub):
        # phase marks a position, not a different group
        return _same_line(A.axis, B.axis)
    if isinstance(A, FullSub) and isinstance(B, FullSub):
        return True
    return False


def subgroup_order(S: ConcreteSubgroup) -> int | None:
    if isinstance(S, FiniteSub):
        return len(S.group)
    return None


# ---------------------------------------------------------------------------
# Embeddings of a class into a concrete subgroup


class _CanonicalOnly:
    """Marker: the parent is all of SO(3), so one canonical position suffices."""

    def __repr__(self):
        return "CANONICAL_ONLY"


CANONICAL_ONLY = _CanonicalOnly()


def _axial_cyclic(axis: Vec3, n: int) -> FiniteSub:
    els = [Rotation.from_axis_angle(axis, 2.0 * math.pi * k / n) for k in range(1, n)]
    return FiniteSub(FiniteRotationGroup.from_elements(els))


def _flip_group(direction: Vec3) -> FiniteSub:
    return FiniteSub(
        FiniteRotationGroup.from_elements(
            [Rotation.from_axis_angle(direction, math.pi)]
        )
    )


def _cyclic_part_about(
    H: FiniteRotationGroup, d: Vec3, m: int
) -> list[Rotation] | None:
    """The order-m cyclic subgroup of H on the line d, or None if absent."""
    els = [Rotation.identity()]
    for r in H:
        aa = axis_angle_of(r)
        if aa is None or not _same_line(aa.axis, d):
            continue
        if aa.order is not None and m % aa.order == 0:
            els.append(r)
    return els if len(els) == m else None


def _finite_cyclic_embeddings(H: FiniteRotationGroup, m: int) -> list[FiniteSub]:
    out = []
    for d, k in axis_lines(H):
        if k % m != 0:
            continue
        els = _cyclic_part_about(H, d, m)
        if els is not None:
            out.append(FiniteSub(FiniteRotationGroup.from_elements(els)))
    return out


def _finite_dihedral_embeddings(H: FiniteRotationGroup, m: int) -> list[FiniteSub]:
    """Dihedral subgroups of a dihedral group, by closed form.

    For the Klein case m = 2 inside D_n with n > 2 every copy consists of the
    main half turn plus a perpendicular pair of flips, so those are built
    directly.  Otherwise the order-m axis must be the parent's main axis and
    the copies are distinguished by the flip phase modulo pi/m.
    """
    parent = classify_finite(H)
    out: list[FiniteSub] = []
    if m == 2 and parent.kind == "D" and parent.n != 2:
        n = parent.n
        if n % 2 != 0:
            return []
        lines = axis_lines(H)
        main = next(d for d, k in lines if k == n)
        main_flip = Rotation.from_axis_angle(main, math.pi)
        for d, k in lines:
            if k != 2 or _same_line(d, main):
                continue
            other = canon_direction(cross(main, d))
            K = FiniteRotationGroup.from_elements(
                [
                    main_flip,
                    Rotation.from_axis_angle(d, math.pi),
                    Rotation.from_axis_angle(other, math.pi),
                ]
            )
            if all(H.contains(r) for r in K):
                out.append(FiniteSub(K))
        return _dedupe_finite(out)
    for d, k in axis_lines(H):
        if k % m != 0:
            continue
        axial = _cyclic_part_about(H, d, m)
        if axial is None:
            continue
        flips: list[tuple[float, Rotation]] = []
        u, v = perp_frame(d)
        for r in H:
            aa = axis_angle_of(r)
            if aa is None or aa.order != 2 or not _perp(aa.axis, d):
                continue
            phase = math.atan2(dot(aa.axis, v), dot(aa.axis, u)) % math.pi
            flips.append((phase, r))
        if len(flips) < m or len(flips) % m != 0:
            continue
        # flip phases sit on a lattice of spacing pi/len(flips); two flips
        # belong to the same copy of D_m iff their phases differ by a
        # multiple of pi/m
        flips.sort(key=lambda p: p[0])
        ref = flips[0][0]
        total = len(flips)
        groups: dict[int, list[Rotation]] = {}
        for phase, r in flips:
            step = round((phase - ref) * total / math.pi) % total
            groups.setdefault(step % (total // m), []).append(r)
        for res in sorted(groups):
            members = groups[res]
            if len(members) != m:
                continue
            K = FiniteRotationGroup.from_elements(list(axial) + members)
            if len(K) != 2 * m:
                continue
            try:
                if classify_finite(K) == dihedral(m):
                    out.append(FiniteSub(K))
            except UnclassifiableGroup:
                continue
    return _dedupe_finite(out)


def _dedupe_finite(subs: list[FiniteSub]) -> list[FiniteSub]:
    seen: set[frozenset] = set()
    uniq: list[FiniteSub] = []
    for S in subs:
        if S.group.key_set not in seen:
            seen.add(S.group.key_set)
            uniq.append(S)
    return uniq


def embeddings_of_class_in(t: ClassTag, H2: ConcreteSubgroup):
    """Subgroups of H2 lying in class t, listed position by position.

    Returns CANONICAL_ONLY when H2 is all of SO(3) (every position is
    conjugate inside H2, so the canonical representative stands for all of
    them), otherwise a deterministic list of concrete subgroups of H2.

    Why ranging over these positions is enough when intersecting against a
    fixed family: both the embedding set of t in H2 and the isotropy
    representatives on the annihilator are closed under conjugation by
    elements h of H2, and class(hEh^-1 meet K) equals class(E meet h^-1Kh).
    Fixing one K per class and letting E run over every embedding of t in H2
    therefore reaches every intersection class any pair of positions could
    produce.  For the continuous parents the finitely many listed positions
    realize all distinct relative configurations for the same reason.
    """
    h2 = g_class_of(H2)
    if not is_subconjugate(t, h2):
        raise NotSubconjugate(f"{t.short()} is not subconjugate to {h2.short()}")
    if isinstance(H2, FullSub):
        return CANONICAL_ONLY
    if t.kind == "1":
        return [trivial_group()]
    if isinstance(H2, CircleSub):
        if t.kind == "SO2":
            return [CircleSub(H2.axis)]
        return [_axial_cyclic(H2.axis, t.n)]
    if isinstance(H2, OrthCircleSub):
        a, phi = H2.axis, H2.flip_phase
        if t.kind == "O2":
            return [H2]
        if t.kind == "SO2":
            return [CircleSub(a)]
        if t.kind == "C":
            if t.n >= 3:
                return [_axial_cyclic(a, t.n)]
            # order-2 positions: the axial half turn, a flip on the marked
            # direction, and a flip in generic position relative to the mark
            return [
                _axial_cyclic(a, 2),
                _flip_group(in_plane_direction(a, phi)),
                _flip_group(in_plane_direction(a, phi + math.pi / 4.0)),
            ]
        # D_m positions in O(2): flip set aligned with the mark or not
        m = t.n
        return [
            dihedral_group(m, a, phi),
            dihedral_group(m, a, phi + math.pi / (2.0 * m)),
        ]
    F = H2.group
    parent = classify_finite(F)
    if parent.kind in ("C", "D"):
        # closed forms; enumerating subgroups_of(F) would blow the order cap
        # for large n
        if t.kind == "C":
            subs = _finite_cyclic_embeddings(F, t.n)
        else:
            subs = _finite_dihedral_embeddings(F, t.n)
        return sorted(subs, key=lambda S: _subgroup_sort_key(S.group))
    return [FiniteSub(S) for S in subgroups_of(F) if classify_finite(S) == t]
