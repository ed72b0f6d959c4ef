"""Symplectic corollaries: momentum level sets and relative equilibria.

For the cotangent lift of an action of G on M with its standard momentum
map, the zero level set meets every isotropy class of the base action and
no others, so its lattice is the base lattice.  For a totally isotropic
momentum value mu, a base class (H) survives on the level set exactly when
mu annihilates the algebra of H; the result can lose the unique minimum, so
it is wrapped in MuLattice rather than returned bare.

The isotropy classes of relative equilibria are the classes (H meet K) with
(H) a base class and (K) a linear isotropy class of H on the annihilator of
its own algebra, i.e. the single-pair slice of the lift construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adjoint import isotropy_on_ann
from .catalog import (
    ClassTag,
    FullSub,
    canonical_rep,
    g_class_of,
    intersect,
    tag_sort_key,
)
from .errors import NotTotallyIsotropic
from .lift import (
    AmbientGroup,
    CircleAmbient,
    FiniteAmbient,
    _validate_realizable,
    embeddings_list,
)
from .poset import IsotropyLattice, build_lattice, up_set
from .rotation import TOLERANCE, Vec3


@dataclass(frozen=True)
class MuLattice:
    """Isotropy classes on a momentum level set.

    Unlike a plain isotropy lattice this poset may have several minimal
    classes: restricting to a level set can break connectedness of strata.
    """

    restricted: IsotropyLattice

    @property
    def classes(self) -> tuple[ClassTag, ...]:
        return self.restricted.classes


def is_totally_isotropic(G: AmbientGroup, mu) -> bool:
    """Whether the coadjoint orbit of mu is an isotropic submanifold.

    For SO(3) only the origin qualifies.  The circle's coadjoint orbits are
    points, so every value does.  A finite group has a zero dual, so zero is
    the only momentum value there is.
    """
    if isinstance(G, FiniteAmbient):
        return _mu_is_zero(G, mu)
    if isinstance(G, CircleAmbient):
        return True
    m = _as_vec3(mu)
    return max(abs(c) for c in m) <= TOLERANCE


def _as_vec3(mu) -> Vec3:
    if isinstance(mu, (int, float)):
        return (0.0, 0.0, float(mu))
    t = tuple(float(c) for c in mu)
    if len(t) != 3:
        raise ValueError("a momentum value for SO(3) needs three components")
    return t


def _mu_is_zero(G: AmbientGroup, mu) -> bool:
    if isinstance(G, (FiniteAmbient, CircleAmbient)):
        if isinstance(mu, (int, float)):
            return abs(float(mu)) <= TOLERANCE
        return max(abs(float(c)) for c in mu) <= TOLERANCE
    return max(abs(c) for c in _as_vec3(mu)) <= TOLERANCE


def zero_level_lattice(G: AmbientGroup, base: IsotropyLattice) -> IsotropyLattice:
    """Isotropy lattice on the zero momentum level set: the base lattice."""
    _validate_realizable(G, base.classes)
    return build_lattice(base.classes)


def mu_lattice(G: AmbientGroup, base: IsotropyLattice, mu) -> MuLattice:
    """Isotropy classes on the mu level set, for totally isotropic mu.

    A class survives iff mu annihilates the algebra of its representatives.
    Finite classes always survive (zero algebra); circle classes need mu in
    the plane orthogonal to some axis position, which for a totally
    isotropic value is automatic only when mu is zero.
    """
    _validate_realizable(G, base.classes)
    if not is_totally_isotropic(G, mu):
        raise NotTotallyIsotropic(
            "the level-set description applies to totally isotropic momentum "
            "values only"
        )
    if _mu_is_zero(G, mu):
        return MuLattice(build_lattice(base.classes, require_unique_min=False))
    # nonzero totally isotropic mu exists only for the circle ambient, where
    # the algebra of the circle itself is not annihilated
    kept = [t for t in base.classes if t.kind in ("1", "C")]
    if not kept:
        raise NotTotallyIsotropic(
            "no base class has an algebra annihilated by this momentum value"
        )
    return MuLattice(build_lattice(kept, require_unique_min=False))


def mu_closure(L: MuLattice, t: ClassTag) -> tuple[ClassTag, ...]:
    """Classes of the level-set poset lying above t, including t."""
    return up_set(L.restricted, t)


def relative_equilibria_lattice(G: AmbientGroup, base: IsotropyLattice) -> IsotropyLattice:
    """Isotropy classes realized by relative equilibria of invariant systems.

    Every base class (H) contributes the classes of H meet K for each linear
    isotropy class K of H on the annihilator of its algebra, at every
    relative position; the union over base classes is ordered by
    subconjugation.
    """
    _validate_realizable(G, base.classes)
    if isinstance(G, (FiniteAmbient, CircleAmbient)):
        return build_lattice(base.classes)
    found: set[ClassTag] = set()
    for h in sorted(base.classes, key=tag_sort_key):
        H = canonical_rep(h)
        if isinstance(H, FullSub):
            found.add(h)
            continue
        ann = isotropy_on_ann(H)
        for E in embeddings_list(h, H):
            for entry in ann.classes:
                found.add(g_class_of(intersect(E, entry.representative)))
    return build_lattice(found)
