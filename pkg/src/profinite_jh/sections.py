"""Brute-force finite checks: sections, q-th power words and perfectness."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .errors import BoundExceeded, NotSimple, PreconditionViolated
from .groups import FiniteGroup, Subgroup, derived_subgroup, quotient
from .perm import compose, perm_order, power
from .series import factor_multiset, normal_subgroups
from .simple import SimpleType, find_isomorphism, identify, quotient_fingerprint, quotient_type

SECTION_BOUND = 500
POWER_WORD_BOUND = 2_000


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by layered closure over the cyclic subgroups.

    Layer 0 holds the cyclic subgroups; each later layer joins a subgroup of
    the previous layer with one more cyclic subgroup, until nothing new appears.
    """
    if group.order() > SECTION_BOUND:
        raise BoundExceeded(f"subgroup enumeration needs order <= {SECTION_BOUND}")

    def build():
        elems = group.sorted_elements()
        idx = {x: i for i, x in enumerate(elems)}
        mul = [[idx[compose(a, b)] for b in elems] for a in elems]
        e = idx[group.identity]

        def close(members: frozenset, gens: list, x: int):
            base = list(members)
            new_gens = gens + [x]
            result = set(members)
            result.update(mul[h][x] for h in base)
            reps = [x]
            for r in reps:
                for g in new_gens:
                    t = mul[r][g]
                    if t not in result:
                        result.update(mul[h][t] for h in base)
                        reps.append(t)
            return frozenset(result), new_gens

        cyclic: dict[frozenset, list] = {}
        for i in range(len(elems)):
            powers = {e}
            y = i
            while y != e:
                powers.add(y)
                y = mul[y][i]
            cyclic.setdefault(frozenset(powers), [i] if i != e else [])
        found = dict(cyclic)
        layer = list(cyclic.items())
        cyclic_gens = [g[0] for g in cyclic.values() if g]
        while layer:
            nxt = []
            for members, gens in layer:
                for x in cyclic_gens:
                    if x in members:
                        continue
                    joined, jg = close(members, gens, x)
                    if joined not in found:
                        found[joined] = jg
                        nxt.append((joined, jg))
            layer = nxt
        subs = [Subgroup(group, (elems[i] for i in members), [elems[i] for i in gens])
                for members, gens in found.items()]
        return sorted(subs, key=Subgroup.sort_key)

    return group.memo("all_subgroups", build)


@dataclass
class SectionWitness:
    c: Subgroup
    d: Subgroup
    quotient_type: str

    def to_json(self) -> dict:
        return {"c_order": self.c.order(), "d_order": self.d.order(),
                "quotient_type": self.quotient_type}


def _type_tag(group: FiniteGroup) -> str:
    if group.order() > 1:
        try:
            return str(identify(group))
        except NotSimple:
            pass
    digest = hashlib.sha256(repr(tuple(group.element_orders().items())).encode()).hexdigest()[:12]
    return f"order={group.order()},h={digest}"


def is_section(target: FiniteGroup, ambient: FiniteGroup) -> SectionWitness | None:
    """Search all D <| C <= ambient for C/D isomorphic to ``target``."""
    if ambient.order() > SECTION_BOUND:
        raise BoundExceeded(f"section search needs |ambient| <= {SECTION_BOUND}")
    n = target.order()
    if n > ambient.order() or ambient.order() % n:
        return None
    want = tuple(sorted(target.element_orders().items()))
    for c in all_subgroups(ambient):
        if c.order() % n:
            continue
        cg = c.as_group()
        for d in normal_subgroups(cg):
            if d.order() * n != c.order():
                continue
            if quotient_fingerprint(cg, d) != want:
                continue
            q, _ = quotient(cg, d)
            if find_isomorphism(q, target) is not None:
                return SectionWitness(c, Subgroup(ambient, d.elements, d.generators), _type_tag(q))
    return None


def _maximal_normal(group: FiniteGroup) -> list[Subgroup]:
    normals = normal_subgroups(group)
    proper = [n for n in normals if n.order() < group.order()]
    return [n for n in proper if not any(n.elements < m.elements for m in proper)]


def simple_sections(ambient: FiniteGroup) -> set[SimpleType]:
    """Isomorphism types of all simple sections C/D of ``ambient``."""
    if ambient.order() > SECTION_BOUND:
        raise BoundExceeded(f"section sweep needs |ambient| <= {SECTION_BOUND}")
    out = set()
    for c in all_subgroups(ambient):
        if c.order() == 1:
            continue
        cg = c.as_group()
        for d in _maximal_normal(cg):
            out.add(quotient_type(cg, d))
    return out


@dataclass
class CoverageReport:
    passed: bool
    order: int
    q: int
    m: int
    covered: int
    sizes: list  # covered-set size after 0..m power factors

    @property
    def coverage_fraction(self) -> float:
        return self.covered / self.order

    def to_json(self) -> dict:
        return {"pass": self.passed, "order": self.order, "q": self.q, "m": self.m,
                "covered": self.covered, "coverage_fraction": self.coverage_fraction,
                "sizes": self.sizes}


def power_word_coverage(group: FiniteGroup, q: int, m: int) -> CoverageReport:
    """Brute-force the set {g0 s1 ... sm : o(g0) coprime to q, each si a q-th power}."""
    if q < 2 or m < 1:
        raise ValueError("power_word_coverage needs q >= 2 and m >= 1")
    order = group.order()
    if order > POWER_WORD_BOUND:
        raise BoundExceeded(f"power-word coverage needs |G| <= {POWER_WORD_BOUND}")
    elems = group.sorted_elements()
    idx = {x: i for i, x in enumerate(elems)}
    powers = sorted({idx[power(x, q)] for x in elems})
    right = {t: [idx[compose(x, elems[t])] for x in elems] for t in powers}
    current = {i for i, x in enumerate(elems) if math.gcd(perm_order(x), q) == 1}
    sizes = [len(current)]
    for _ in range(m):
        nxt = set()
        for t in powers:
            rt = right[t]
            nxt.update(rt[i] for i in current)
        current = nxt
        sizes.append(len(current))
    return CoverageReport(len(current) == order, order, q, m, len(current), sizes)


@dataclass
class PerfectnessReport:
    passed: bool
    anabelian: bool
    perfect: bool

    @property
    def converse_holds(self) -> bool:
        # perfect => anabelian is not claimed; SL2(5) is a counterexample.
        return (not self.perfect) or self.anabelian

    def to_json(self) -> dict:
        return {"pass": self.passed, "anabelian": self.anabelian, "perfect": self.perfect,
                "converse_holds": self.converse_holds}


def perfectness_check(group: FiniteGroup) -> PerfectnessReport:
    """No abelian composition factor must imply [G, G] = G."""
    anab = not any(s.is_abelian for s in factor_multiset(group))
    perfect = derived_subgroup(group).order() == group.order()
    return PerfectnessReport((not anab) or perfect, anab, perfect)


@dataclass
class A5Report:
    passed: bool
    nonabelian_sections: list

    def to_json(self) -> dict:
        return {"pass": self.passed, "sections": self.nonabelian_sections}


def a5_corollary_check(group: FiniteGroup) -> A5Report:
    """If every nonabelian composition factor is A5, so is every nonabelian simple section."""
    if group.order() > SECTION_BOUND:
        raise BoundExceeded(f"A5 check needs |G| <= {SECTION_BOUND}")
    a5 = SimpleType("A", 5, 60)
    bad = [s for s in factor_multiset(group) if not s.is_abelian and s != a5]
    if bad:
        raise PreconditionViolated(f"nonabelian composition factor {bad[0]} is not A5")
    nonab = sorted((s for s in simple_sections(group) if not s.is_abelian), key=SimpleType.sort_key)
    return A5Report(all(s == a5 for s in nonab), [str(s) for s in nonab])
