import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from profinite_jh.builtins import alternating, cyclic, dihedral, direct_product, sl2, symmetric
from profinite_jh.errors import BoundExceeded, NotSolvable
from profinite_jh.groups import FiniteGroup, quotient
from profinite_jh.series import (
    composition_series, derived_series, derived_series_solvable, factor_multiset, is_solvable,
    jh_verify, n_S, normal_subgroups, radical_witness,
)
from profinite_jh.simple import cyclic_type, identify


def as_dict(fm):
    return {str(s): c for s, c in fm.items() if c}


@pytest.mark.parametrize("g,orders", [
    (symmetric(4), [1, 4, 12, 24]),
    (cyclic(6), [1, 2, 3, 6]),
    (alternating(5), [1, 60]),
])
def test_normal_subgroups_examples(g, orders):
    subs = normal_subgroups(g)
    assert [n.order() for n in subs] == orders
    assert [n.elements for n in subs] == oracles.normal_subgroups(g.elements())


@pytest.mark.parametrize("g", [dihedral(4), dihedral(6), sl2(3), sl2(5), direct_product(cyclic(2), cyclic(2)),
                               direct_product(symmetric(3), symmetric(3)), symmetric(5)], ids=lambda g: g.name)
def test_normal_subgroups_match_oracle(g):
    assert {n.elements for n in normal_subgroups(g)} == set(oracles.normal_subgroups(g.elements()))


def test_normal_subgroups_bound():
    with pytest.raises(BoundExceeded):
        normal_subgroups(symmetric(7))


def test_s4_chain():
    orders = [24, 12, 4, 2, 1]
    for seed in range(6):
        steps = composition_series(symmetric(4), seed)
        assert [24] + [s.subgroup.order() for s in steps] == orders


def test_prime_cyclic_chain_length_one():
    assert len(composition_series(cyclic(7))) == 1


def test_klein_three_chains():
    v = direct_product(cyclic(2), cyclic(2))
    chains = {tuple(s.subgroup.elements for s in composition_series(v, seed)) for seed in range(3)}
    assert len(chains) == 3
    assert {frozenset(as_dict(factor_multiset(v, s)).items()) for s in range(3)} == {frozenset({("C2", 2)})}


@pytest.mark.parametrize("g,expected", [
    (symmetric(4), {"C2": 3, "C3": 1}),
    (sl2(5), {"C2": 1, "A5": 1}),
    (cyclic(720), {"C2": 4, "C3": 2, "C5": 1}),
    (cyclic(1), {}),
    (alternating(6), {"A6": 1}),
    (direct_product(alternating(5), cyclic(2)), {"A5": 1, "C2": 1}),
])
def test_known_multisets(g, expected):
    assert as_dict(factor_multiset(g)) == expected


@pytest.mark.parametrize("g", [symmetric(4), sl2(5), dihedral(6), sl2(3), symmetric(5),
                               direct_product(symmetric(3), cyclic(2))], ids=lambda g: g.name)
def test_multiset_matches_lattice_oracle(g):
    assert as_dict(factor_multiset(g)) == oracles.factor_multiset(g.elements())


def test_cyclic_720_against_oracle():
    assert as_dict(factor_multiset(cyclic(720))) == oracles.cyclic_factor_multiset(720)
    # the series route (no factorization shortcut) agrees too
    from profinite_jh.series import series_factors
    assert as_dict(series_factors(composition_series(cyclic(720)))) == oracles.cyclic_factor_multiset(720)


@pytest.mark.parametrize("g,s,n", [(symmetric(4), 2, 3), (alternating(5), 2, 0), (cyclic(8), 2, 3)])
def test_n_S(g, s, n):
    assert n_S(g, cyclic_type(s)) == n


@pytest.mark.parametrize("g,trials,chains,expected", [
    (direct_product(cyclic(2), cyclic(2)), 10, 3, {"C2": 2}),
    (symmetric(4), 10, None, {"C2": 3, "C3": 1}),
    (dihedral(6), 20, None, {"C2": 2, "C3": 1}),
])
def test_jh_verify(g, trials, chains, expected):
    rep = jh_verify(g, trials)
    assert rep.passed
    assert as_dict(rep.factors) == expected
    if chains is not None:
        assert rep.chains_found == chains
    assert rep.to_json()["pass"] is True


def test_jh_verify_needs_two_trials():
    with pytest.raises(ValueError):
        jh_verify(cyclic(2), 1)


def test_order_conservation(corpus_groups):
    for g in corpus_groups:
        assert factor_multiset(g).product_of_orders() == g.order()
        steps = composition_series(g, 1)
        prod = 1
        for s in steps:
            prod *= s.factor.order
        assert prod == g.order()


def test_series_steps_are_subnormal_with_simple_quotients():
    for g in [symmetric(4), sl2(5), dihedral(8), symmetric(5)]:
        prev = g.whole()
        for step in composition_series(g, 3):
            assert step.subgroup.is_normal(prev)
            q, _ = quotient(prev.as_group() if prev.order() < g.order() else g,
                            step.subgroup.within(prev.as_group() if prev.order() < g.order() else g))
            assert identify(q) == step.factor
            prev = step.subgroup


@pytest.mark.parametrize("g", [symmetric(4), dihedral(6), sl2(5), symmetric(5), sl2(3),
                               direct_product(symmetric(3), symmetric(3))], ids=lambda g: g.name)
def test_quotient_consistency(g):
    total = factor_multiset(g)
    for n in normal_subgroups(g):
        if n.order() in (1, g.order()):
            continue
        q, _ = quotient(g, n)
        assert factor_multiset(n.as_group()) + factor_multiset(q) == total
        for s in factor_multiset(q):
            assert factor_multiset(q)[s] <= total[s]


def test_solvable_agrees_with_derived_series(corpus_groups):
    for g in corpus_groups:
        expected = derived_series_solvable(g)
        assert is_solvable(g) == expected
        if g.order() <= 200:
            assert oracles.derived_solvable(g.elements()) == expected


@pytest.mark.parametrize("g,expected", [(symmetric(4), True), (alternating(5), False), (sl2(5), False)])
def test_solvable_examples(g, expected):
    assert is_solvable(g) is expected


def test_derived_series_s4():
    assert [s.order() for s in derived_series(symmetric(4))] == [24, 12, 4, 1]


def test_radical_witness():
    assert sorted(radical_witness(symmetric(4))) == [2, 2, 2, 3]
    assert radical_witness(symmetric(4), 0) == [2, 3, 2, 2]
    assert radical_witness(cyclic(7)) == [7]
    with pytest.raises(NotSolvable):
        radical_witness(alternating(5))


@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.permutations(range(n)).map(tuple), min_size=1, max_size=3)),
       st.integers(0, 1000), st.integers(0, 1000))
def test_random_groups_jh_invariance(gens, s1, s2):
    g = FiniteGroup(len(gens[0]), gens)
    a, b = factor_multiset(g, s1), factor_multiset(g, s2)
    assert a == b
    assert a.product_of_orders() == g.order()


def test_large_group_probing_path():
    # order 7200 is beyond the lattice bound, so maximal normal subgroups are found by probing
    g = direct_product(alternating(5), alternating(5), cyclic(2))
    from profinite_jh.series import series_factors
    f = series_factors(composition_series(g, 0))
    assert as_dict(f) == {"A5": 2, "C2": 1}
    assert as_dict(series_factors(composition_series(g, 1))) == as_dict(f)
