"""Linear isotropy of the coadjoint action restricted to annihilators.

For a closed subgroup H of SO(3), identify the dual of the Lie algebra with
R^3 carrying the standard rotation action.  The annihilator of the algebra
of H is then: the zero subspace for H = SO(3), the plane orthogonal to the
axis for the circle groups, and all of R^3 for finite H.

isotropy_on_ann computes the isotropy classes of H acting on that subspace,
together with one concrete stabilizer subgroup per class.  These pairs drive
the lifted-lattice construction and the symplectic corollaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .catalog import (
    CIRCLE,
    FULL,
    ORTH_CIRCLE,
    TRIVIAL,
    CircleSub,
    ClassTag,
    ConcreteSubgroup,
    FiniteSub,
    FullSub,
    OrthCircleSub,
    classify_finite,
    cyclic,
    g_class_of,
    in_plane_direction,
    trivial_group,
)
from .rotation import (
    FiniteRotationGroup,
    Rotation,
    Vec3,
    apply,
    axis_angle_of,
    canon_direction,
)


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Plane:
    """Plane through the origin orthogonal to axis."""

    axis: Vec3

    def __post_init__(self):
        object.__setattr__(self, "axis", canon_direction(self.axis))


@dataclass(frozen=True)
class Full3:
    pass


AnnSubspace = Zero | Plane | Full3


@dataclass(frozen=True)
class AnnClass:
    """One isotropy class on the annihilator with a concrete witness."""

    label: ClassTag
    representative: ConcreteSubgroup


@dataclass(frozen=True)
class AnnIsotropy:
    subgroup: ConcreteSubgroup
    subspace: AnnSubspace
    classes: tuple[AnnClass, ...]


def ann_h(H: ConcreteSubgroup) -> AnnSubspace:
    if isinstance(H, FullSub):
        return Zero()
    if isinstance(H, (CircleSub, OrthCircleSub)):
        return Plane(H.axis)
    return Full3()


def axis_line_orbits(
    F: FiniteRotationGroup,
) -> list[tuple[Vec3, int, FiniteRotationGroup]]:
    """Orbits of F on its own rotation-axis lines.

    Each orbit yields (representative direction, axial order k, axial
    subgroup at the representative).  The representative is the
    lexicographically largest canonical direction in the orbit.  Orbits are
    sorted by (k, representative).
    """
    line_of: dict[tuple, Vec3] = {}
    order_on: dict[tuple, int] = {}
    for r in F:
        aa = axis_angle_of(r)
        if aa is None:
            continue
        d = canon_direction(aa.axis)
        key = _dir_key(d)
        line_of.setdefault(key, d)
        order_on[key] = order_on.get(key, 0) + 1
    seen: set[tuple] = set()
    orbits: list[tuple[Vec3, int, FiniteRotationGroup]] = []
    for key in line_of:
        if key in seen:
            continue
        frontier = [line_of[key]]
        members: dict[tuple, Vec3] = {key: line_of[key]}
        seen.add(key)
        while frontier:
            fresh = []
            for d in frontier:
                for g in F:
                    gd = canon_direction(apply(g, d))
                    gk = _dir_key(gd)
                    if gk not in members:
                        members[gk] = gd
                        seen.add(gk)
                        fresh.append(gd)
            frontier = fresh
        rep = max(members.values())
        k = order_on[key] + 1
        axial = [Rotation.identity()]
        for r in F:
            aa = axis_angle_of(r)
            if aa is not None and _dir_key(canon_direction(aa.axis)) == _dir_key(rep):
                axial.append(r)
        orbits.append((rep, k, FiniteRotationGroup.from_elements(axial)))
    orbits.sort(key=lambda item: (item[1], item[0]))
    return orbits


def _dir_key(d: Vec3) -> tuple:
    return (round(d[0], 6), round(d[1], 6), round(d[2], 6))


def isotropy_on_ann(H: ConcreteSubgroup) -> AnnIsotropy:
    """Isotropy classes of H on the annihilator of its own algebra.

    Class labels are conjugacy classes in the ambient SO(3); representatives
    are actual subgroups of H, one per class, at a fixed position.
    """
    sub = ann_h(H)
    if isinstance(H, FullSub):
        return AnnIsotropy(H, sub, (AnnClass(FULL, FullSub()),))
    if isinstance(H, CircleSub):
        # the circle rotates its orthogonal plane freely off the origin
        return AnnIsotropy(
            H, sub, (AnnClass(TRIVIAL, trivial_group()), AnnClass(CIRCLE, H))
        )
    if isinstance(H, OrthCircleSub):
        # a nonzero covector in the plane is fixed exactly by the half turn
        # about its own line; the marked flip is the representative position
        flip_dir = in_plane_direction(H.axis, H.flip_phase)
        flip = FiniteSub(
            FiniteRotationGroup.from_elements(
                [Rotation.from_axis_angle(flip_dir, math.pi)]
            )
        )
        return AnnIsotropy(
            H, sub, (AnnClass(cyclic(2), flip), AnnClass(ORTH_CIRCLE, H))
        )
    F = H.group
    entries: list[AnnClass] = []
    if len(F) > 1:
        entries.append(AnnClass(TRIVIAL, trivial_group()))
    for rep, k, axial in axis_line_orbits(F):
        stab = FiniteSub(axial)
        if stab.group == F:
            # axial stabilizer equal to the whole group merges with the
            # origin class below (cyclic H fixing its own axis)
            continue
        entries.append(AnnClass(classify_finite(axial), stab))
    entries.append(AnnClass(g_class_of(H), H))
    return AnnIsotropy(H, sub, tuple(entries))
