from fractions import Fraction

import pytest

from grweyl.groups import (FiniteGroup, cyclic_group, perm_from_cycles,
                           perm_to_cycles, symmetric_group, trivial_group)


def test_symmetric_group_basics():
    s3 = symmetric_group(3)
    assert s3.order() == 6
    assert s3.identity == (0, 1, 2)
    t12 = perm_from_cycles(3, [(1, 2)])
    t23 = perm_from_cycles(3, [(2, 3)])
    assert s3.mul(t12, t12) == s3.identity
    # (12)(23) is a 3-cycle
    assert s3.element_order(s3.mul(t12, t23)) == 3
    assert perm_to_cycles(t12) == [(1, 2)]
    # adjacent transpositions generate
    assert len(s3.subgroup_closure([t12, t23])) == 6


def test_bad_table_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(("e", "g"), {("e", "e"): "e", ("e", "g"): "g",
                                 ("g", "e"): "g", ("g", "g"): "g"})


def test_abelianization_s3():
    s3 = symmetric_group(3)
    ab, q = s3.abelianization()
    assert ab.order() == 2
    t12 = perm_from_cycles(3, [(1, 2)])
    three = s3.mul(t12, perm_from_cycles(3, [(2, 3)]))
    assert q[three] == ab.identity  # even permutations die
    assert q[t12] != ab.identity


def test_characters_cyclic():
    z4 = cyclic_group(4)
    chars = z4.characters()
    assert len(chars) == 4
    # the trivial character sorts first
    assert all(chars[0][g].is_one() for g in z4.elements)
    # each is a homomorphism
    for chi in chars:
        for a in z4.elements:
            for b in z4.elements:
                assert chi[z4.mul(a, b)] == chi[a] * chi[b]
    # distinct
    tables = {tuple(chi[g].t for g in z4.elements) for chi in chars}
    assert len(tables) == 4


def test_characters_klein():
    # Z/2 x Z/2 assembled by table
    els = [(0, 0), (1, 0), (0, 1), (1, 1)]
    mul = {(a, b): ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2) for a in els for b in els}
    k4 = FiniteGroup(els, mul)
    chars = k4.characters()
    assert len(chars) == 4
    for chi in chars:
        for a in els:
            for b in els:
                assert chi[k4.mul(a, b)] == chi[a] * chi[b]


def test_characters_reject_nonabelian():
    with pytest.raises(ValueError):
        symmetric_group(3).characters()


def test_trivial_group():
    t = trivial_group()
    assert t.order() == 1 and len(t.characters()) == 1
