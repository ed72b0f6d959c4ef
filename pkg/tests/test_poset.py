import random

import pytest

from isolat.catalog import (
    CIRCLE,
    FULL,
    TRIVIAL,
    cyclic,
    dihedral,
    parse_tag,
)
from isolat.errors import ClassNotInLattice, NoUniqueMinimum
from isolat.poset import build_lattice, compute_depths, up_set


def tags(*names):
    return [parse_tag(s) for s in names]


def test_chain():
    L = build_lattice(tags("1", "C2", "C4"))
    assert L.classes == (TRIVIAL, cyclic(2), cyclic(4))
    assert L.hasse == ((0, 1), (1, 2))
    assert L.unique_min


def test_diamond_depths():
    L = build_lattice(tags("1", "C2", "C3", "D6"))
    d = compute_depths(L)
    assert d == {TRIVIAL: 0, cyclic(2): 1, cyclic(3): 1, dihedral(6): 2}
    # covering edges skip nothing: C2 and C3 both cover 1, D6 covers both
    assert set(L.hasse) == {(0, 1), (0, 2), (1, 3), (2, 3)}


def test_up_set():
    L = build_lattice(tags("1", "C2", "C3", "D6"))
    assert up_set(L, cyclic(2)) == (cyclic(2), dihedral(6))
    assert up_set(L, TRIVIAL) == L.classes
    with pytest.raises(ClassNotInLattice):
        up_set(L, cyclic(5))


def test_leq():
    L = build_lattice(tags("1", "C2", "D4"))
    assert L.leq(TRIVIAL, dihedral(4))
    assert L.leq(cyclic(2), cyclic(2))
    assert not L.leq(dihedral(4), cyclic(2))


def test_no_unique_minimum_raises():
    with pytest.raises(NoUniqueMinimum):
        build_lattice(tags("C2", "C3"))


def test_relaxed_minimum():
    L = build_lattice(tags("C2", "C3"), require_unique_min=False)
    assert not L.unique_min
    assert L.classes == (cyclic(2), cyclic(3))
    assert L.hasse == ()


def test_empty_rejected():
    with pytest.raises(ValueError):
        build_lattice([])


def test_duplicates_collapse():
    L = build_lattice(tags("1", "C2", "C2"))
    assert L.classes == (TRIVIAL, cyclic(2))


def test_singleton():
    L = build_lattice([CIRCLE])
    assert L.classes == (CIRCLE,)
    assert L.hasse == ()
    assert compute_depths(L) == {CIRCLE: 0}


def test_transitive_reduction_recovers_order():
    pool = tags("1", "C2", "C3", "C6", "D2", "D3", "D6", "SO2", "O2", "SO3")
    L = build_lattice(pool)
    # closing the hasse edges transitively gives back the full strict order
    n = len(L.classes)
    reach = {(i, j) for (i, j) in L.hasse}
    changed = True
    while changed:
        changed = False
        for i, j in list(reach):
            for j2, k in list(reach):
                if j2 == j and (i, k) not in reach:
                    reach.add((i, k))
                    changed = True
    assert reach == set(L.less)
    # and no hasse edge admits an intermediate class
    for i, j in L.hasse:
        for k in range(n):
            assert not ((i, k) in L.less and (k, j) in L.less)


def test_deterministic_under_shuffling():
    pool = tags("1", "C2", "C3", "C4", "D2", "D4", "T", "O", "SO2", "O2", "SO3")
    L0 = build_lattice(pool)
    rng = random.Random(9)
    for _ in range(10):
        shuffled = pool[:]
        rng.shuffle(shuffled)
        L = build_lattice(shuffled)
        assert L == L0


def test_full_is_unique_maximum():
    L = build_lattice(tags("1", "C2", "SO2", "SO3"))
    top = L.classes.index(FULL)
    for i in range(len(L.classes)):
        if i != top:
            assert (i, top) in L.less
