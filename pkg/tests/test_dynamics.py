import random

import pytest

from grweyl.algebra import random_groupoid_element
from grweyl.cocycles import EdgeLabeling, induced_group_hom
from grweyl.dynamics import (EventualAutomorphism, GroupoidAutomorphism,
                             check_property_P, compose_autos,
                             enumerate_eventual_automorphisms,
                             eventual_conjugacy_search, identity_automorphism,
                             orbit_identity_holds, orbit_map_to_groupoid_hom,
                             pair_inverses, path_space_size, replay_certificate)
from grweyl.errors import PreconditionError
from grweyl.graphs import parse_graph
from grweyl.pathspace import EvPeriodicPath

from conftest import fixture_graphs


def first_symbol_flip(rose2):
    head = {rose2.edge_path("a"): rose2.edge_path("b"),
            rose2.edge_path("b"): rose2.edge_path("a")}
    block = {rose2.edge_path(e1, e2): e2 for e1 in "ab" for e2 in "ab"}
    return EventualAutomorphism(rose2, rose2, 1, 0, 2, head, block)


def test_identity(rose2):
    ident = identity_automorphism(rose2)
    assert check_property_P(ident)
    assert ident.is_identity()
    x = EvPeriodicPath.periodic(rose2, ("a", "b"))
    assert ident.apply(x) == x


def test_flip_property_P(rose2):
    flip = first_symbol_flip(rose2)
    assert check_property_P(flip)          # with its presented lag 1
    assert not check_property_P(flip, lag=0)
    assert flip.canonicalize() == flip     # already canonical
    y = flip.apply(EvPeriodicPath.periodic(rose2, ("a",)))
    assert y == EvPeriodicPath.from_words(rose2, ("b",), ("a",))


def test_property_P_pointwise_shadow(rose2):
    # symbolic property (P) implies the pointwise identity on random points
    flip = first_symbol_flip(rose2)
    rng = random.Random(3)
    m = flip.m
    for _ in range(1000):
        x = random_groupoid_element(rose2, rng, max_len=3).y
        assert flip.apply(x).shift_n(m + 1) == flip.apply(x.shift()).shift_n(m)


def test_block_rule_shift_equivariance(rose2):
    # g = T^m h strictly commutes with T as local rules
    flip = first_symbol_flip(rose2)
    rng = random.Random(4)
    for _ in range(200):
        x = random_groupoid_element(rose2, rng, max_len=3).y
        gx = flip.apply(x).shift_n(flip.m)
        gtx = flip.apply(x.shift()).shift_n(flip.m)
        assert gx.shift() == gtx


def test_compose_and_canonical(rose2):
    flip = first_symbol_flip(rose2)
    assert compose_autos(flip, flip).is_identity()
    ident = identity_automorphism(rose2)
    assert compose_autos(flip, ident) == flip
    assert compose_autos(ident, flip) == flip
    # associativity as maps on sample points
    autos = enumerate_eventual_automorphisms(rose2, 1, 1)
    rng = random.Random(5)
    pts = [random_groupoid_element(rose2, rng, max_len=3).y for _ in range(100)]
    for _ in range(10):
        f, g, h = (rng.choice(autos) for _ in range(3))
        left = compose_autos(compose_autos(f, g), h)
        right = compose_autos(f, compose_autos(g, h))
        assert left == right
        for x in pts[:10]:
            assert left.apply(x) == f.apply(g.apply(h.apply(x)))


def test_enumeration_rose2(rose2):
    autos = enumerate_eventual_automorphisms(rose2, 1, 1)
    flip = first_symbol_flip(rose2)
    assert any(h.is_identity() for h in autos)
    assert any(h == flip for h in autos)
    # the window-1 group is the depth-2 binary tree group, order 8
    assert len(autos) == 8
    # every element certified: inverse composes to the identity
    for h in autos:
        assert compose_autos(h.inverse, h, certify=False).is_identity()
        assert compose_autos(h, h.inverse, certify=False).is_identity()
    # deterministic: a second enumeration gives the same list
    again = enumerate_eventual_automorphisms(rose2, 1, 1)
    assert [h.table_key() for h in autos] == [h.table_key() for h in again]


def test_orbit_map(rose2):
    ident = identity_automorphism(rose2)
    hom = orbit_map_to_groupoid_hom(1, 0, ident)
    flip = first_symbol_flip(rose2)
    flip_autos = pair_inverses([flip], [flip])
    hom_flip = orbit_map_to_groupoid_hom(2, 1, flip_autos[0])
    rng = random.Random(6)
    for _ in range(100):
        al = random_groupoid_element(rose2, rng, max_len=3)
        be = random_groupoid_element(rose2, rng, max_len=2)
        # degree preserved
        assert hom(al).k == al.k
        assert hom_flip(al).k == al.k
    # functoriality on composable pairs and units
    from grweyl.pathspace import GroupoidElement, compose
    for _ in range(50):
        al = random_groupoid_element(rose2, rng, max_len=2)
        be = GroupoidElement(al.x, rng.randrange(-1, 2),
                             random_groupoid_element(rose2, rng, max_len=2).x)
        assert hom_flip(compose(al, be)) == compose(hom_flip(al), hom_flip(be))
        u = GroupoidElement.unit(al.x)
        assert hom_flip(u).is_unit()
    # l - k = -1 is rejected for the identity on the 2-rose
    with pytest.raises(PreconditionError):
        orbit_map_to_groupoid_hom(0, 1, ident)


def test_degree_zero_collapse(rose2, loop1):
    # an (l, l) orbit identity collapses all degrees to zero; it can only
    # hold on degenerate spaces, such as the one-point space of the loop
    ident1 = identity_automorphism(loop1)
    assert orbit_identity_holds(ident1, 1, 1)[0]
    hom = orbit_map_to_groupoid_hom(1, 1, ident1)
    from grweyl.pathspace import GroupoidElement
    x = EvPeriodicPath.periodic(loop1, ("a",))
    assert hom(GroupoidElement(x, 3, x)).k == 0
    # on the rose the identity map does not satisfy it
    assert not orbit_identity_holds(identity_automorphism(rose2), 1, 1)[0]


def test_groupoid_automorphism_signs(rose2, loop1):
    autos = enumerate_eventual_automorphisms(rose2, 1, 1)
    phi = GroupoidAutomorphism(autos[0])
    assert phi.sign == 1
    # sign -1 obstructed on the rose
    with pytest.raises(PreconditionError):
        GroupoidAutomorphism(autos[0], sign=-1)
    # on the single loop the flip obstruction is absent and the identity
    # satisfies the reversed identity (the space is one point)
    ident1 = identity_automorphism(loop1)
    rev = GroupoidAutomorphism(ident1, sign=-1)
    x = EvPeriodicPath.periodic(loop1, ("a",))
    from grweyl.pathspace import GroupoidElement
    al = GroupoidElement(x, 2, x)
    assert rev.apply_arrow(al).k == -2


def test_induced_group_hom_z(rose2):
    lab = EdgeLabeling.length(rose2)
    autos = enumerate_eventual_automorphisms(rose2, 1, 1)
    rng = random.Random(8)
    for h in autos:
        phi = GroupoidAutomorphism(h)
        t = induced_group_hom(phi, lab, lab, rng=rng)
        assert t == 1  # sigma-preserving: the induced map on Z is the identity


def test_path_space_size():
    assert path_space_size(parse_graph("vertices: v\nedge a v v\n")) == 1
    assert path_space_size(parse_graph("vertices: v w\nedge e v w\nedge f w v\n")) == 2
    assert path_space_size(parse_graph("vertices: v\nedge a v v\nedge b v v\n")) is None
    # a tree into a loop: finitely many points
    g = parse_graph("vertices: s v\nedge p s v\nedge q s v\nedge l v v\n")
    assert path_space_size(g) == 3


def test_conjugacy_search_fixtures():
    for name, text, _ in fixture_graphs():
        g = parse_graph(text)
        rep = eventual_conjugacy_search(g, g, 1, 0)
        assert rep.hit is not None, name
        h, sign = rep.hit
        assert sign == 1
        assert replay_certificate(g, g, rep.certificate), name


def test_conjugacy_search_prunes(rose2, loop1):
    rep = eventual_conjugacy_search(rose2, loop1, 2, 2)
    assert rep.hit is None
    assert rep.prunes[0]["rule"] == "path-space-cardinality"
    rep2 = eventual_conjugacy_search(rose2, rose2, 1, 0, allow_flip=True)
    assert rep2.hit is not None
    assert any(p["rule"] == "flip-obstruction" for p in rep2.prunes)


def test_search_determinism(rose2):
    r1 = eventual_conjugacy_search(rose2, rose2, 1, 1)
    r2 = eventual_conjugacy_search(rose2, rose2, 1, 1)
    assert r1.certificate == r2.certificate
