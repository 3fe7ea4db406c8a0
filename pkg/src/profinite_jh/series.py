"""Composition series and composition-factor multisets of finite groups."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import BoundExceeded, NotSolvable
from .groups import (
    FiniteGroup,
    Subgroup,
    class_closures,
    derived_subgroup,
    extend,
)
from .simple import SimpleType, cyclic_type, quotient_type

LATTICE_BOUND = 5_000
# order * degree above which structural shortcuts are preferred to enumeration
ENUM_CELLS = 4_000_000


class FactorMultiset(Counter):
    """Simple type -> multiplicity."""

    def product_of_orders(self) -> int:
        return math.prod(s.order ** c for s, c in self.items())

    def items_sorted(self):
        return sorted(((s, c) for s, c in self.items() if c), key=lambda sc: sc[0].sort_key())

    def to_json(self) -> list[dict]:
        return [{"type": str(s), "count": c} for s, c in self.items_sorted()]

    def __str__(self):
        return "{" + ", ".join(f"{s}:{c}" for s, c in self.items_sorted()) + "}"

    def __add__(self, other):
        out = FactorMultiset(self)
        out.update(other)
        return out

    def is_abelian(self) -> bool:
        return all(s.is_abelian for s in self)


@dataclass(frozen=True)
class SeriesStep:
    subgroup: Subgroup
    factor: SimpleType


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    elements = set(a.elements)
    gens = list(a.generators)
    for x in b.generators:
        if x not in elements:
            elements = extend(elements, gens, x, a.parent.bound)
            gens.append(x)
    return Subgroup(a.parent, elements, gens)


def normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes.

    Sorted by order, then by the sorted element list.
    """
    order = group.order()
    if order > LATTICE_BOUND:
        raise BoundExceeded(f"normal subgroup lattice needs order <= {LATTICE_BOUND}, got {order}")

    def build():
        subs = {frozenset([group.identity]): group.trivial_subgroup()}
        closures = class_closures(group)
        for c in closures:
            subs.setdefault(c.elements, c)
        queue = list(closures)
        while queue:
            n = queue.pop()
            for m in list(subs.values()):
                if n.elements <= m.elements or m.elements <= n.elements:
                    continue
                j = join(m, n)
                if j.elements not in subs:
                    subs[j.elements] = j
                    queue.append(j)
        return sorted(subs.values(), key=Subgroup.sort_key)

    return group.memo("normal_subgroups", build)


def _probe_maximal_normal(group: FiniteGroup) -> list[Subgroup]:
    # Grow each proper class closure by joining further class closures while it stays proper.
    order = group.order()
    closures = [c for c in class_closures(group) if c.order() < order]
    found: dict = {}
    for start in closures:
        n = start
        changed = True
        while changed:
            changed = False
            for c in closures:
                if c.elements <= n.elements:
                    continue
                j = join(n, c)
                if j.order() < order:
                    n = j
                    changed = True
        found.setdefault(n.elements, n)
    return sorted(found.values(), key=Subgroup.sort_key)


def maximal_normal_choices(group: FiniteGroup) -> list[Subgroup]:
    """Proper normal subgroups of the largest order; the seed picks among these."""
    def build():
        order = group.order()
        if order == 1:
            return []
        if _is_prime(order):
            return [group.trivial_subgroup()]
        if order <= LATTICE_BOUND:
            proper = [n for n in normal_subgroups(group) if n.order() < order]
        else:
            proper = _probe_maximal_normal(group) or [group.trivial_subgroup()]
        top = max(n.order() for n in proper)
        return [n for n in proper if n.order() == top]
    return group.memo("maximal_normal", build)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _factor_of(group: FiniteGroup, n: Subgroup) -> SimpleType:
    return group.memo(("factor", n.elements), lambda: quotient_type(group, n))


def composition_series(group: FiniteGroup, seed: int = 0) -> list[SeriesStep]:
    """A composition series from ``group`` down to the trivial subgroup.

    Step i holds the (i+1)-th term and the type of the i-th quotient.  At
    each step the seed is read as a mixed-radix digit choosing among the
    maximal normal subgroups of largest order, so small seeds enumerate
    distinct series when there are choices.
    """
    steps = []
    current = group
    remaining = seed
    while current.order() > 1:
        choices = maximal_normal_choices(current)
        pick = choices[remaining % len(choices)]
        remaining //= len(choices)
        factor = _factor_of(current, pick)
        steps.append(SeriesStep(Subgroup(group, pick.elements, pick.generators), factor))
        current = pick.as_group()
    return steps


def series_factors(steps) -> FactorMultiset:
    return FactorMultiset(step.factor for step in steps)


def _structural_multiset(group: FiniteGroup) -> FactorMultiset | None:
    if group.is_cyclic_presented:
        return FactorMultiset({cyclic_type(p): k for p, k in _factorize(group.order()).items()})
    if group.parts:
        out = FactorMultiset()
        for part in group.parts:
            out.update(factor_multiset(part))
        return out
    return None


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def factor_multiset(group: FiniteGroup, seed: int = 0) -> FactorMultiset:
    """Composition factors with multiplicity.

    Cyclic groups and recorded direct products that are too large to
    enumerate comfortably are handled by factorization and by summing over
    the factors; otherwise a composition series is computed.
    """
    order = group.structural_order()
    if order is not None and (order > LATTICE_BOUND or order * group.degree > ENUM_CELLS):
        structural = _structural_multiset(group)
        if structural is not None:
            return structural
    return series_factors(composition_series(group, seed))


def n_S(group: FiniteGroup, s: SimpleType) -> int:
    return factor_multiset(group)[s]


@dataclass
class JHReport:
    group: str
    order: int
    factors: FactorMultiset
    chains_found: int
    passed: bool
    multisets: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"group": self.group, "order": self.order, "factors": self.factors.to_json(),
                "chains_found": self.chains_found, "pass": self.passed}


def jh_verify(group: FiniteGroup, trials: int = 10) -> JHReport:
    """Build ``trials`` series with seeds 0..trials-1 and compare their factor multisets."""
    if trials < 2:
        raise ValueError("jh_verify needs at least two trials")
    chains = set()
    multisets = []
    for seed in range(trials):
        steps = composition_series(group, seed)
        chains.add(tuple(step.subgroup.elements for step in steps))
        multisets.append(series_factors(steps))
    passed = all(m == multisets[0] for m in multisets)
    return JHReport(group.name, group.order(), multisets[0], len(chains), passed, multisets)


def is_solvable(group: FiniteGroup) -> bool:
    return factor_multiset(group).is_abelian()


def derived_series(group: FiniteGroup) -> list[Subgroup]:
    """G = G^(0) > G^(1) > ... until the series stabilizes."""
    out = [group.whole()] if group.enumerable() else []
    current = group
    while True:
        d = derived_subgroup(current)
        if d.order() == current.order():
            break
        out.append(Subgroup(group, d.elements, d.generators))
        if d.order() == 1:
            break
        current = d.as_group()
    return out


def derived_series_solvable(group: FiniteGroup) -> bool:
    current = group
    while current.order() > 1:
        d = derived_subgroup(current)
        if d.order() == current.order():
            return False
        current = d.as_group()
    return True


def radical_witness(group: FiniteGroup, seed: int = 0) -> list[int]:
    """Prime orders of the cyclic composition factors, in series order."""
    steps = composition_series(group, seed)
    bad = [s.factor for s in steps if not s.factor.is_abelian]
    if bad:
        raise NotSolvable(f"{group.name} has nonabelian composition factor {bad[0]}")
    return [s.factor.order for s in steps]
