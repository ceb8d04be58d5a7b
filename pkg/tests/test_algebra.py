import random

import pytest

from grweyl.algebra import (AlgebraElement, check_cuntz_relations,
                            convolve_pointwise_oracle, evaluate,
                            expectation_diagonal, expectation_kernel, group_act,
                            multiply, quasi_basis, random_element,
                            random_graph, random_groupoid_element, random_path,
                            watatani_index)
from grweyl.cocycles import EdgeLabeling
from grweyl.errors import InconsistencyError, PreconditionError
from grweyl.graphs import parse_graph
from grweyl.groups import cyclic_group, symmetric_group, trivial_group
from grweyl.pathspace import BasicBisection, GroupoidElement, greedy_point
from grweyl.scalars import Cyclotomic


def S(g, *edges):
    return AlgebraElement.path_isometry(g, g.edge_path(*edges))


def P(g, v):
    return AlgebraElement.vertex_projection(g, v)


def test_monomial_products(rose2):
    # S_a* S_b = 0 and S_a* S_a = P_v
    assert multiply(S(rose2, "a").involute(), S(rose2, "b")).is_zero()
    assert multiply(S(rose2, "a").involute(), S(rose2, "a")) == P(rose2, "v")
    # (S_a S_b*)(S_b S_a*) = S_a S_a*
    ab = multiply(S(rose2, "a"), S(rose2, "b").involute())
    ba = multiply(S(rose2, "b"), S(rose2, "a").involute())
    assert multiply(ab, ba) == multiply(S(rose2, "a"), S(rose2, "a").involute())


def test_normal_form_unique(rose2):
    # 1 = S_a S_a* + S_b S_b* holds in normal form
    total = multiply(S(rose2, "a"), S(rose2, "a").involute()) \
        + multiply(S(rose2, "b"), S(rose2, "b").involute())
    assert total == AlgebraElement.unit(rose2)
    # an overlapping sum splits deterministically
    x = AlgebraElement.unit(rose2) + multiply(S(rose2, "a"), S(rose2, "a").involute())
    assert x.text() == "(2)*S(a)S(a)^* + S(b)S(b)^*"


def test_sinks_rejected():
    g = parse_graph("vertices: v w\nedge a v w\n")
    with pytest.raises(PreconditionError):
        AlgebraElement.unit(g)


def test_involution_antihomomorphism(rose2):
    rng = random.Random(7)
    for _ in range(100):
        a = random_element(rose2, rng)
        b = random_element(rose2, rng)
        assert multiply(a, b).involute() == multiply(b.involute(), a.involute())
        assert a.involute().involute() == a
    # (i S_a S_b*)* = -i S_b S_a*
    i = Cyclotomic.zeta(4)
    m = multiply(S(rose2, "a"), S(rose2, "b").involute()).scale(i)
    assert m.involute() == multiply(S(rose2, "b"), S(rose2, "a").involute()).scale(-1 * i)


def test_evaluate(rose2):
    x = greedy_point(rose2, "v")
    assert evaluate(P(rose2, "v"), GroupoidElement.unit(x)).is_one()
    b = BasicBisection(rose2.edge_path("a"), rose2.edge_path("b"))
    al = b.sample_point()
    assert evaluate(multiply(S(rose2, "a"), S(rose2, "b").involute()), al).is_one()
    rng = random.Random(1)
    for _ in range(30):
        a = random_element(rose2, rng)
        c = random_element(rose2, rng)
        al = random_groupoid_element(rose2, rng)
        assert evaluate(a + c, al) == evaluate(a, al) + evaluate(c, al)


def test_oracle_equivalence_random_graphs():
    # the central dual-route check on several random graphs
    rng = random.Random(2024)
    for _ in range(5):
        g = random_graph(rng)
        for _ in range(80):
            a = random_element(g, rng)
            b = random_element(g, rng)
            gam = random_groupoid_element(g, rng)
            assert evaluate(multiply(a, b), gam) == convolve_pointwise_oracle(a, b, gam)


def test_evaluate_separates_normal_forms(rose2):
    rng = random.Random(5)
    for _ in range(60):
        a = random_element(rose2, rng)
        b = random_element(rose2, rng)
        if a == b:
            continue
        diff = a - b
        assert not diff.is_zero()
        # a separating point from the deepest monomial of the difference
        (mu, nu), coeff = diff.sorted_terms()[-1]
        al = BasicBisection(mu, nu).sample_point()
        assert evaluate(diff, al) == coeff
        assert evaluate(a, al) != evaluate(b, al)


def test_expectation_diagonal_properties(rose2):
    rng = random.Random(9)
    assert expectation_diagonal(multiply(S(rose2, "a"), S(rose2, "b").involute())).is_zero()
    got = expectation_diagonal(multiply(S(rose2, "a"), S(rose2, "a").involute())
                               + multiply(S(rose2, "a"), S(rose2, "b").involute()).scale(2))
    assert got == multiply(S(rose2, "a"), S(rose2, "a").involute())
    for _ in range(40):
        a = random_element(rose2, rng)
        ea = expectation_diagonal(a)
        assert expectation_diagonal(ea) == ea          # idempotent
        p = multiply(a.involute(), a)
        ep = expectation_diagonal(p)
        # positivity shadow: E(a* a) vanishes only with a
        assert (not ep.is_zero()) or p.is_zero()
    # module property over the diagonal
    for _ in range(40):
        a = random_element(rose2, rng)
        d1 = expectation_diagonal(random_element(rose2, rng))
        d2 = expectation_diagonal(random_element(rose2, rng))
        lhs = expectation_diagonal(multiply(multiply(d1, a), d2))
        rhs = multiply(multiply(d1, expectation_diagonal(a)), d2)
        assert lhs == rhs
    assert expectation_diagonal(AlgebraElement.unit(rose2)) == AlgebraElement.unit(rose2)


def test_expectation_kernel(rose2):
    s3 = symmetric_group(3)
    lab = EdgeLabeling(rose2, s3, {"a": (1, 0, 2), "b": (0, 2, 1)})
    assert expectation_kernel(multiply(S(rose2, "a"), S(rose2, "b").involute()), lab).is_zero()
    # theta(ab) = (12)(23) differs from theta(ba) = (23)(12)
    m = multiply(S(rose2, "a", "b"), S(rose2, "b", "a").involute())
    assert expectation_kernel(m, lab).is_zero()
    diag = multiply(S(rose2, "a", "a"), S(rose2, "a", "a").involute())
    assert expectation_kernel(diag, lab) == diag
    # the length labeling keeps exactly degree-zero terms
    lab_len = EdgeLabeling.length_mod(rose2, 6)
    rng = random.Random(3)
    for _ in range(40):
        a = random_element(rose2, rng, max_len=2)
        e = expectation_kernel(a, lab_len)
        assert all(len(mu) == len(nu) for (mu, nu) in e.terms)
        assert expectation_kernel(e, lab_len) == e


def test_group_act(rose2):
    z8 = cyclic_group(8)
    lab8 = EdgeLabeling.length_mod(rose2, 8)
    chars = z8.characters()
    rng = random.Random(17)
    for chi in chars:
        assert group_act(P(rose2, "v"), chi, lab8) == P(rose2, "v")
    nontrivial = chars[1]
    assert group_act(S(rose2, "a"), nontrivial, lab8) == \
        S(rose2, "a").scale(nontrivial[1].to_scalar())
    # multiplicative in the character and *-automorphism on samples
    for _ in range(25):
        a = random_element(rose2, rng, max_len=2)
        b = random_element(rose2, rng, max_len=2)
        c1, c2 = rng.choice(chars), rng.choice(chars)
        prod_char = {g: c1[g] * c2[g] for g in z8.elements}
        lhs = group_act(group_act(a, c2, lab8), c1, lab8)
        assert lhs == group_act(a, prod_char, lab8)
        assert group_act(multiply(a, b), c1, lab8) == \
            multiply(group_act(a, c1, lab8), group_act(b, c1, lab8))
        assert group_act(a.involute(), c1, lab8) == group_act(a, c1, lab8).involute()


def test_fixed_by_all_characters_iff_kernel_fixed(rose2):
    # finite Fourier shadow: degrees up to 3, characters of Z/8
    z8 = cyclic_group(8)
    lab8 = EdgeLabeling.length_mod(rose2, 8)
    chars = z8.characters()
    rng = random.Random(99)
    for _ in range(60):
        a = random_element(rose2, rng, max_len=3)
        fixed = all(group_act(a, chi, lab8) == a for chi in chars)
        assert fixed == (expectation_kernel(a, lab8) == a)


def test_quasi_basis_and_index(rose2):
    one = AlgebraElement.unit(rose2)
    # trivial group
    triv = EdgeLabeling(rose2, trivial_group(), {"a": "e", "b": "e"})
    qb = quasi_basis(rose2, triv)
    assert watatani_index(qb, triv, rng=random.Random(0)) == one
    # parity labeling: index 2
    lab2 = EdgeLabeling.length_mod(rose2, 2)
    qb2 = quasi_basis(rose2, lab2)
    for s_pairs in qb2:
        u, v = s_pairs
        assert v == u.involute()
    assert watatani_index(qb2, lab2, samples=30, rng=random.Random(1)) == one.scale(2)
    # per-s partition: sum u u* = 1 for each group element
    by_val = {}
    for u, v in qb2:
        (mu, nu), _ = u.sorted_terms()[0]
        val = lab2.pair_value(mu, nu)
        by_val.setdefault(val, AlgebraElement.zero(rose2))
        by_val[val] = by_val[val] + multiply(u, u.involute())
    assert all(total == one for total in by_val.values())
    # symmetric group labeling: index 6
    s3 = symmetric_group(3)
    lab3 = EdgeLabeling(rose2, s3, {"a": (1, 0, 2), "b": (0, 2, 1)})
    qb3 = quasi_basis(rose2, lab3)
    assert watatani_index(qb3, lab3, samples=30, rng=random.Random(2)) == one.scale(6)


def test_watatani_rejects_fake_quasi_basis(rose2):
    lab2 = EdgeLabeling.length_mod(rose2, 2)
    fake = [(AlgebraElement.unit(rose2), AlgebraElement.unit(rose2))]
    with pytest.raises(InconsistencyError):
        watatani_index(fake, lab2, rng=random.Random(0))


def test_cuntz_relations(rose2, rose3):
    assert check_cuntz_relations(rose2)
    assert check_cuntz_relations(rose3)
    g = parse_graph("vertices: v w\nedge a v w\nedge b w v\nedge c v v\n")
    assert check_cuntz_relations(g)
    with pytest.raises(PreconditionError):
        check_cuntz_relations(parse_graph("vertices: v w\nedge a v w\n"))


def test_degree_grading(rose2):
    rng = random.Random(31)
    for _ in range(40):
        a = random_element(rose2, rng, max_len=2)
        b = random_element(rose2, rng, max_len=2)
        degs_a = set(a.degrees())
        degs_b = set(b.degrees())
        prod = multiply(a, b)
        assert set(prod.degrees()) <= {x + y for x in degs_a for y in degs_b}
        assert set(a.involute().degrees()) == {-d for d in degs_a}
