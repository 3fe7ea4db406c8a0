import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from profinite_jh.builtins import alternating, cyclic, direct_product, sl2, symmetric, dihedral
from profinite_jh.errors import BoundExceeded, InvalidHom, NotNormal, TrivialGroup
from profinite_jh.groups import (
    FiniteGroup, GroupHom, Subgroup, conjugacy_classes, derived_subgroup, intersection, is_simple,
    normal_closure, product_set, quotient, subgroup,
)
from profinite_jh.perm import identity, parse_cycles
from profinite_jh.series import normal_subgroups

SMALL = [symmetric(3), symmetric(4), alternating(4), alternating(5), dihedral(4), dihedral(6),
         cyclic(6), sl2(3), direct_product(cyclic(2), cyclic(2)), direct_product(symmetric(3), cyclic(2))]


def perm(text, n):
    return parse_cycles(text, n)


@pytest.mark.parametrize("gens,degree,order", [
    (["(0 1)", "(0 1 2)"], 3, 6),
    (["()"], 3, 1),
    (["(0 1 2 3 4)", "(0 1 2)"], 5, 60),
])
def test_enumerate_examples(gens, degree, order):
    g = FiniteGroup(degree, [perm(x, degree) for x in gens])
    assert g.order() == order
    assert g.elements() == oracles.closure(g.generators, degree)


def test_empty_generators_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(3, [])


def test_trivial_group_is_legal():
    g = FiniteGroup(1, [identity(1)])
    assert g.order() == 1 and g.is_trivial()


def test_bound():
    g = FiniteGroup(7, symmetric(7).generators, bound=1000)
    with pytest.raises(BoundExceeded):
        g.elements()


@given(st.randoms(use_true_random=False))
def test_enumeration_independent_of_generator_order(rnd):
    base = symmetric(5)
    gens = list(base.generators) + [perm("(0 1)(2 3)", 5)]
    rnd.shuffle(gens)
    assert FiniteGroup(5, gens).elements() == base.elements()


@given(st.randoms(use_true_random=False))
def test_random_generated_subgroup_matches_oracle(rnd):
    g = symmetric(5)
    elems = g.sorted_elements()
    gens = [rnd.choice(elems) for _ in range(rnd.randint(1, 3))]
    assert subgroup(g, gens).elements == oracles.bfs_closure(gens, 5)


def test_membership():
    a5 = alternating(5)
    assert perm("(0 1 2)", 5) in a5
    assert perm("(0 1)", 5) not in a5
    c = cyclic(720)
    assert c.generators[0] in c
    assert identity(c.degree) in c


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_conjugacy_classes_partition(g):
    classes = conjugacy_classes(g)
    assert sum(len(c) for c in classes) == g.order()
    assert {frozenset(c) for c in classes} == set(oracles.conj_classes(g.elements()))


def test_normal_closure_examples():
    s4 = symmetric(4)
    assert normal_closure(s4, [perm("(0 1)(2 3)", 4)]).order() == 4
    assert normal_closure(s4, [identity(4)]).order() == 1
    a5 = alternating(5)
    rng = random.Random(3)
    for _ in range(5):
        x = rng.choice([y for y in a5.sorted_elements() if y != a5.identity])
        assert normal_closure(a5, [x]).order() == 60


@pytest.mark.parametrize("g", [x for x in SMALL if x.order() <= 200], ids=lambda g: g.name)
def test_normal_closure_is_least_normal_superset(g):
    normals = oracles.normal_subgroups(g.elements())
    rng = random.Random(g.order())
    elems = g.sorted_elements()
    for _ in range(8):
        seed = [rng.choice(elems) for _ in range(rng.randint(1, 2))]
        got = normal_closure(g, seed).elements
        containing = [n for n in normals if set(seed) <= n]
        assert got == min(containing, key=len)
        assert all(got <= n for n in containing)


@pytest.mark.parametrize("g,order", [(symmetric(4), 12), (cyclic(6), 1), (alternating(5), 60),
                                     (sl2(5), 120), (dihedral(6), 3)], ids=lambda x: getattr(x, "name", x))
def test_derived_subgroup(g, order):
    d = derived_subgroup(g)
    assert d.order() == order
    assert d.elements == oracles.commutator_subgroup(g.elements())


@pytest.mark.parametrize("g,expected", [(cyclic(7), True), (symmetric(4), False), (alternating(5), True),
                                        (alternating(6), True), (sl2(5), False)])
def test_is_simple(g, expected):
    assert is_simple(g) is expected


def test_is_simple_trivial():
    with pytest.raises(TrivialGroup):
        is_simple(cyclic(1))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_quotient_invariants(g):
    for n in normal_subgroups(g):
        q, hom = quotient(g, n)
        assert q.order() * n.order() == g.order()
        assert q.order() == oracles.cosets_quotient_order(g.elements(), n.elements)
        hom.verify()
        assert hom.check_surjective()
        assert hom.kernel().elements == n.elements


def test_quotient_examples():
    s4 = symmetric(4)
    a4 = subgroup(s4, [perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    q, hom = quotient(s4, a4)
    assert q.order() == 2
    q1, hom1 = quotient(s4, s4.trivial_subgroup())
    assert q1.order() == 24
    g = sl2(5)
    center = [n for n in normal_subgroups(g) if n.order() == 2][0]
    q, _ = quotient(g, center)
    assert q.order() == 60


def test_quotient_not_normal():
    s3 = symmetric(3)
    with pytest.raises(NotNormal):
        quotient(s3, subgroup(s3, [perm("(0 1)", 3)]))


def test_hom_kernels():
    s4 = symmetric(4)
    a4 = subgroup(s4, [perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    _, hom = quotient(s4, a4)
    assert hom.kernel() == a4
    ident = GroupHom(s4, s4, s4.generators, is_surjective=True)
    assert ident.kernel().order() == 1
    c25, c5 = cyclic(25), cyclic(5)
    proj = GroupHom(c25, c5, c5.generators, is_surjective=True)
    proj.verify()
    k = proj.kernel()
    assert k.order() == 5
    # oracle: the kernel is generated by g^5
    g = c25.generators[0]
    g5 = identity(25)
    for _ in range(5):
        g5 = oracles.mul(g5, g)
    assert k.elements == oracles.bfs_closure([g5], 25)


def test_invalid_hom():
    s3 = symmetric(3)
    c3 = cyclic(3)
    # send both generators of S3 to an element of order 3: not a homomorphism
    bad = GroupHom(s3, c3, [c3.generators[0], c3.generators[0]])
    with pytest.raises(InvalidHom):
        bad.verify()
    with pytest.raises(InvalidHom):
        GroupHom(c3, c3, []).verify()
    flagged = GroupHom(s3, s3, [s3.identity] * len(s3.generators), is_surjective=True)
    with pytest.raises(InvalidHom):
        flagged.verify()


def test_hom_sampled_path_on_large_product():
    # A6 x A6 (order 129600) is beyond the enumeration bound, so the sampled check runs.
    a6 = alternating(6)
    g = direct_product(a6, a6)
    assert not g.enumerable()
    images = list(a6.generators) + [a6.identity] * len(a6.generators)
    hom = GroupHom(g, a6, images, is_surjective=True)
    hom.verify()
    assert hom.kernel().order() == 360
    bad = GroupHom(g, a6, list(a6.generators) * 2, is_surjective=True)
    with pytest.raises(InvalidHom):
        bad.verify()


def _subgroups(g, rng, count):
    elems = g.sorted_elements()
    return [subgroup(g, [rng.choice(elems) for _ in range(rng.randint(0, 2))] or [g.identity])
            for _ in range(count)]


def test_lemma_product_sets_differ():
    """B < A and A & H == B & H force AH != BH (200 random triples)."""
    rng = random.Random(17)
    pool = [symmetric(4), alternating(5), dihedral(6), sl2(3), direct_product(symmetric(3), symmetric(3)),
            symmetric(5)]
    checked = 0
    while checked < 200:
        g = rng.choice(pool)
        a, h = _subgroups(g, rng, 2)
        if a.order() == 1:
            continue
        # B: a proper subgroup of A, generated by some elements of A
        b = subgroup(g, [rng.choice(sorted(a.elements)) for _ in range(rng.randint(0, 2))] or [g.identity])
        if not b < a:
            continue
        if intersection(a, h).elements != intersection(b, h).elements:
            continue
        assert product_set(a, h) != product_set(b, h)
        assert oracles.product_set(a.elements, h.elements) != oracles.product_set(b.elements, h.elements)
        checked += 1


def _random_accessible_chain(g, rng):
    chain = [g.whole()]
    current = g
    while current.order() > 1 and rng.random() < 0.8:
        normals = [n for n in normal_subgroups(current) if n.order() < current.order()]
        n = rng.choice(normals)
        chain.append(Subgroup(g, n.elements, n.generators))
        current = n.as_group()
    return chain


def test_lemma_difference_localizes_to_a_step():
    """If AH != BH for B < A and an accessible chain G = H_0 > ... > H_k = H,
    some step has (A & H_i) H_{i+1} != (B & H_i) H_{i+1}."""
    rng = random.Random(5)
    pool = [symmetric(4), dihedral(6), sl2(3), direct_product(symmetric(3), symmetric(3)), alternating(4)]
    checked = 0
    while checked < 100:
        g = rng.choice(pool)
        a = _subgroups(g, rng, 1)[0]
        b = subgroup(g, [rng.choice(sorted(a.elements))])
        if not b < a:
            continue
        chain = _random_accessible_chain(g, rng)
        h = chain[-1]
        if product_set(a, h) == product_set(b, h):
            continue
        assert any(
            product_set(intersection(a, chain[i]), chain[i + 1])
            != product_set(intersection(b, chain[i]), chain[i + 1])
            for i in range(len(chain) - 1))
        checked += 1
