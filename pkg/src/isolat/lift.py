"""Isotropy lattices of tangent-lifted actions.

Given the isotropy lattice of a proper action of G on M, the lattice of the
lifted action on TM consists exactly of the classes (H1 meet K) where
(H1) <= (H2) runs over ordered pairs of base classes and (K) runs over the
isotropy classes of H2 acting on the annihilator of its own algebra.  The
cotangent lift realizes the same lattice.

A finite ambient group has zero Lie algebra, so every annihilator is the
zero space; the circle is abelian, so stabilizers act trivially on their
annihilators.  Either way the linear isotropy on the annihilator is the
whole stabilizer and the lifted lattice equals the base lattice, so those
ambients take a fast path that never touches geometry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adjoint import isotropy_on_ann
from .catalog import (
    CANONICAL_ONLY,
    FULL,
    ClassTag,
    ConcreteSubgroup,
    FullSub,
    canonical_rep,
    g_class_of,
    intersect,
    is_subconjugate,
    subgroup_equal,
    tag_sort_key,
)
from .errors import NotRealizableInG
from .poset import IsotropyLattice, build_lattice, compute_depths
from .rotation import FiniteRotationGroup


@dataclass(frozen=True)
class SO3Ambient:
    pass


@dataclass(frozen=True)
class FiniteAmbient:
    """A finite symmetry group, realized as a rotation group for cataloging."""

    group: FiniteRotationGroup


@dataclass(frozen=True)
class CircleAmbient:
    pass


AmbientGroup = SO3Ambient | FiniteAmbient | CircleAmbient

AMBIENT_SO3 = SO3Ambient()
AMBIENT_CIRCLE = CircleAmbient()


def ambient_class(G: AmbientGroup) -> ClassTag:
    if isinstance(G, SO3Ambient):
        return FULL
    if isinstance(G, CircleAmbient):
        return ClassTag("SO2")
    from .catalog import classify_finite

    return classify_finite(G.group)


@dataclass(frozen=True)
class LiftWitness:
    """One realization of a lifted class: h1 meet k inside h2.

    embedding is a concrete position of h1 inside the canonical h2
    representative; k_rep is the concrete linear-isotropy subgroup whose
    intersection with the embedding lands in lifted_class.
    """

    lifted_class: ClassTag
    h1: ClassTag
    h2: ClassTag
    k: ClassTag
    embedding: ConcreteSubgroup
    k_rep: ConcreteSubgroup


@dataclass(frozen=True)
class LiftResult:
    lifted: IsotropyLattice
    witnesses: tuple[LiftWitness, ...]


def _validate_realizable(G: AmbientGroup, tags) -> None:
    amb = ambient_class(G)
    for t in tags:
        if not is_subconjugate(t, amb):
            raise NotRealizableInG(
                f"{t.short()} is not a subgroup class of the ambient {amb.short()}"
            )


def lifted_lattice(G: AmbientGroup, base: IsotropyLattice) -> LiftResult:
    """Isotropy lattice of the lifted action on TM from the base lattice."""
    _validate_realizable(G, base.classes)
    if isinstance(G, (FiniteAmbient, CircleAmbient)):
        lifted = build_lattice(base.classes)
        witnesses = tuple(
            LiftWitness(t, t, t, t, canonical_rep(t), canonical_rep(t))
            for t in lifted.classes
        )
        return LiftResult(lifted, witnesses)

    depths = compute_depths(base)
    h2_order = sorted(base.classes, key=lambda t: (depths[t], tag_sort_key(t)))
    found: dict[ClassTag, LiftWitness] = {}
    for h2 in h2_order:
        H2 = canonical_rep(h2)
        if isinstance(H2, FullSub):
            # the annihilator is the zero subspace, so every base pair under
            # SO(3) contributes its own class unchanged
            for h1 in base.classes:
                if not is_subconjugate(h1, h2):
                    continue
                found.setdefault(
                    h1, LiftWitness(h1, h1, h2, FULL, canonical_rep(h1), FullSub())
                )
            continue
        ann = isotropy_on_ann(H2)
        for h1 in base.classes:
            if not is_subconjugate(h1, h2):
                continue
            embeddings = embeddings_list(h1, H2)
            for E in embeddings:
                for entry in ann.classes:
                    L = intersect(E, entry.representative)
                    t = g_class_of(L)
                    found.setdefault(
                        t, LiftWitness(t, h1, h2, entry.label, E, entry.representative)
                    )
    lifted = build_lattice(found.keys())
    witnesses = tuple(found[t] for t in lifted.classes)
    return LiftResult(lifted, witnesses)


def embeddings_list(h1: ClassTag, H2: ConcreteSubgroup) -> list[ConcreteSubgroup]:
    from .catalog import embeddings_of_class_in

    embs = embeddings_of_class_in(h1, H2)
    if embs is CANONICAL_ONLY:
        return [canonical_rep(h1)]
    return embs


def cotangent_lifted_lattice(G: AmbientGroup, base: IsotropyLattice) -> LiftResult:
    """Lattice of the lifted action on T*M; identical to the tangent one."""
    return lifted_lattice(G, base)


def lift_witness_check(G: AmbientGroup, base: IsotropyLattice, result: LiftResult) -> bool:
    """Recheck every witness of a lift result from scratch.

    Verifies that each witness uses a valid base pair, that its k entry
    matches an isotropy class on the annihilator of its h2, that the claimed
    intersection lands in the claimed class, and that the witnessed classes
    are exactly the classes of the lifted lattice.
    """
    witnessed = set()
    for w in result.witnesses:
        if w.h1 not in base.classes or w.h2 not in base.classes:
            return False
        if not is_subconjugate(w.h1, w.h2):
            return False
        H2 = canonical_rep(w.h2)
        ann = isotropy_on_ann(H2)
        match = None
        for entry in ann.classes:
            if entry.label == w.k and subgroup_equal(entry.representative, w.k_rep):
                match = entry
                break
        if match is None:
            return False
        if g_class_of(w.embedding) != w.h1:
            return False
        if g_class_of(intersect(w.embedding, w.k_rep)) != w.lifted_class:
            return False
        witnessed.add(w.lifted_class)
    return witnessed == set(result.lifted.classes)
