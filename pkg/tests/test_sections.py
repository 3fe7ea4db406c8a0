import pytest

import oracles
from profinite_jh.builtins import alternating, cyclic, dihedral, direct_product, psl2, sl2, symmetric
from profinite_jh.errors import BoundExceeded, PreconditionViolated
from profinite_jh.groups import FiniteGroup
from profinite_jh.perm import identity
from profinite_jh.sections import (
    a5_corollary_check, all_subgroups, is_section, perfectness_check, power_word_coverage,
    simple_sections,
)
from profinite_jh.series import composition_series, factor_multiset
from profinite_jh.simple import identify


@pytest.mark.parametrize("g,count", [(symmetric(4), 30), (alternating(5), 59), (symmetric(5), 156),
                                     (cyclic(12), 6), (dihedral(4), 10)], ids=lambda x: getattr(x, "name", x))
def test_subgroup_counts(g, count):
    subs = all_subgroups(g)
    assert len(subs) == count
    assert all(s.is_subgroup() for s in subs)


def test_subgroups_contain_two_generated_oracle():
    g = symmetric(4)
    assert {s.elements for s in all_subgroups(g)} == oracles.subgroups_by_pairs(g.elements())


def test_is_section_examples():
    w = is_section(cyclic(2), symmetric(4))
    assert w is not None and w.c.order() // w.d.order() == 2
    w = is_section(alternating(5), symmetric(5))
    assert w is not None and w.c.order() == 60 and w.d.order() == 1
    assert w.quotient_type == "A5"
    assert is_section(cyclic(7), alternating(5)) is None
    assert is_section(symmetric(4), alternating(5)) is None
    w = is_section(alternating(5), sl2(5))
    assert w is not None and w.d.order() == 2


def test_section_transitivity():
    # C3 is a section of S3, S3 is a section of S4, so C3 is a section of S4
    assert is_section(cyclic(3), symmetric(3)) and is_section(symmetric(3), symmetric(4))
    assert is_section(cyclic(3), symmetric(4))
    assert is_section(direct_product(cyclic(2), cyclic(2)), symmetric(4))


def test_section_bound():
    with pytest.raises(BoundExceeded):
        is_section(cyclic(2), symmetric(6))


@pytest.mark.parametrize("g,expected", [
    (alternating(5), {"C2", "C3", "C5", "A5"}),
    (cyclic(6), {"C2", "C3"}),
    (symmetric(4), {"C2", "C3"}),
    (psl2(7), {"C2", "C3", "C7", "PSL2(7)"}),
])
def test_simple_sections(g, expected):
    assert {str(s) for s in simple_sections(g)} == expected


def _realize(t):
    if t.family == "C":
        return cyclic(t.param)
    return alternating(t.param) if t.family == "A" else psl2(t.param)


def test_subgroup_factors_are_sections_of_factors():
    # each composition factor of a subgroup H <= G is a section of some composition factor of G
    for g in [symmetric(4), direct_product(alternating(5), cyclic(2)), symmetric(5)]:
        g_factors = [_realize(t) for t in factor_multiset(g)]
        for h in all_subgroups(g)[1:]:
            for s in factor_multiset(h.as_group()):
                target = _realize(s)
                assert any(is_section(target, t) is not None for t in g_factors), (g.name, s)


def test_power_word_examples():
    rep = power_word_coverage(alternating(5), 2, 3)
    assert rep.passed and rep.covered == 60
    c2 = power_word_coverage(cyclic(2), 2, 1)
    assert not c2.passed and c2.covered == 1 and c2.coverage_fraction == 0.5
    triv = power_word_coverage(FiniteGroup(1, [identity(1)]), 3, 2)
    assert triv.passed


@pytest.mark.parametrize("g,q", [(alternating(5), 2), (alternating(5), 3), (psl2(7), 2), (symmetric(4), 2),
                                 (cyclic(6), 3)], ids=lambda x: getattr(x, "name", x))
def test_power_words_against_oracle_and_monotone(g, q):
    prev = None
    for m in range(1, 5):
        rep = power_word_coverage(g, q, m)
        assert rep.covered == len(oracles.power_word_set(g.elements(), q, m))
        if prev is not None and prev.passed:
            assert rep.passed
        prev = rep


def test_power_word_args():
    with pytest.raises(ValueError):
        power_word_coverage(cyclic(2), 1, 1)


@pytest.mark.parametrize("g,anab,perfect", [
    (alternating(5), True, True), (symmetric(4), False, False), (sl2(5), False, True),
])
def test_perfectness_examples(g, anab, perfect):
    rep = perfectness_check(g)
    assert rep.passed and rep.anabelian is anab and rep.perfect is perfect
    if g.name == "SL2(5)":
        assert rep.converse_holds is False


def test_perfectness_on_corpus(corpus_groups):
    for g in corpus_groups:
        rep = perfectness_check(g)
        assert rep.passed
        if rep.anabelian:
            assert rep.perfect


@pytest.mark.parametrize("g", [alternating(5), direct_product(alternating(5), cyclic(2)), symmetric(5)],
                         ids=lambda g: g.name)
def test_a5_corollary(g):
    rep = a5_corollary_check(g)
    assert rep.passed and rep.nonabelian_sections == ["A5"]


def test_a5_corollary_precondition():
    with pytest.raises(PreconditionViolated):
        a5_corollary_check(psl2(7))
