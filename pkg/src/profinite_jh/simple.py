"""Labels for finite simple groups.

A simple group is named by its order and element-order histogram (the
"fingerprint"): prime order gives ``C<p>``, alternating and PSL_2(p) orders
are confirmed against reference fingerprints, and anything else becomes an
``Other`` label that compares by order and fingerprint.
"""
from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import Ambiguous, NotSimple, TrivialGroup
from .groups import FiniteGroup, Subgroup, coset_partition, extend_map, generate, is_simple, conjugacy_classes
from .perm import compose, perm_order

ISOMORPHISM_BOUND = 2_000


@dataclass(frozen=True, eq=False)
class SimpleType:
    family: str  # "C", "A", "PSL2" or "Other"
    param: int | None
    order: int
    fingerprint: tuple = ()

    def key(self):
        if self.family == "Other":
            return ("Other", self.order, self.fingerprint)
        return (self.family, self.param)

    def __eq__(self, other):
        if not isinstance(other, SimpleType):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.order, str(self))

    @property
    def is_abelian(self) -> bool:
        return self.family == "C"

    def __str__(self):
        if self.family == "C":
            return f"C{self.param}"
        if self.family == "A":
            return f"A{self.param}"
        if self.family == "PSL2":
            return f"PSL2({self.param})"
        digest = hashlib.sha256(repr(self.fingerprint).encode()).hexdigest()[:12]
        return f"Other(order={self.order},h={digest})"

    def __repr__(self):
        return f"SimpleType({self})"


def cyclic_type(p: int) -> SimpleType:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return SimpleType("C", p, p, ((1, 1), (p, p - 1)))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


@lru_cache(maxsize=None)
def alternating_fingerprint(n: int) -> tuple:
    """Element-order histogram of A_n counted over cycle types."""
    hist: Counter = Counter()
    for part in _partitions(n):
        if sum(1 for k in part if k % 2 == 0) % 2:
            continue
        mult = Counter(part)
        size = math.factorial(n)
        for k, m in mult.items():
            size //= k ** m * math.factorial(m)
        hist[math.lcm(*part)] += size
    return tuple(sorted(hist.items()))


@lru_cache(maxsize=None)
def psl2_fingerprint(p: int) -> tuple:
    from .builtins import psl2
    return tuple(sorted(psl2(p).element_orders().items()))


def label(order: int, fingerprint: tuple) -> SimpleType:
    """Name the simple group with this order and fingerprint."""
    if _is_prime(order):
        return cyclic_type(order)
    n = 5
    while math.factorial(n) // 2 <= order:
        if math.factorial(n) // 2 == order and alternating_fingerprint(n) == fingerprint:
            return SimpleType("A", n, order, fingerprint)
        n += 1
    p = 5
    while p * (p * p - 1) // 2 <= order:
        if _is_prime(p) and p * (p * p - 1) // 2 == order and psl2_fingerprint(p) == fingerprint:
            return SimpleType("PSL2", p, order, fingerprint)
        p += 1
    return SimpleType("Other", None, order, fingerprint)


def quotient_fingerprint(big, small: Subgroup) -> tuple:
    """Element-order histogram of big/small, from the orders of the cosets."""
    hist: Counter = Counter()
    members = small.elements
    for coset in coset_partition(big, small):
        x = coset[0]
        y, k = x, 1
        while y not in members:
            y = compose(y, x)
            k += 1
        hist[k] += 1
    return tuple(sorted(hist.items()))


def quotient_type(big, small: Subgroup) -> SimpleType:
    """Label of big/small, which the caller guarantees is simple."""
    big_order = big.order() if isinstance(big, FiniteGroup) else len(big.elements)
    order = big_order // small.order()
    if _is_prime(order):
        return cyclic_type(order)
    return label(order, quotient_fingerprint(big, small))


def fingerprint(group: FiniteGroup) -> tuple:
    return tuple(sorted(group.element_orders().items()))


def identify(group: FiniteGroup) -> SimpleType:
    try:
        simple = is_simple(group)
    except TrivialGroup as exc:
        raise NotSimple("the trivial group is not simple") from exc
    if not simple:
        raise NotSimple(f"{group.name} is not simple")
    order = group.order()
    if _is_prime(order):
        return cyclic_type(order)
    return label(order, fingerprint(group))


def same_type(a: FiniteGroup, b: FiniteGroup) -> bool:
    ta, tb = identify(a), identify(b)
    if ta != tb:
        return False
    if ta.family != "Other":
        return True
    if a.order() <= ISOMORPHISM_BOUND and b.order() <= ISOMORPHISM_BOUND:
        return find_isomorphism(a, b) is not None
    raise Ambiguous(f"{ta} and {tb} share order and fingerprint; too large to search")


def find_isomorphism(a: FiniteGroup, b: FiniteGroup, bound: int = ISOMORPHISM_BOUND) -> dict | None:
    """Brute-force isomorphism a -> b by backtracking over generator images.

    The first generator's image is taken up to conjugacy in b; later images
    range over elements of matching order.  Each partial assignment must
    extend to an injective homomorphism of the subgroup generated so far.
    """
    if a.order() != b.order():
        return None
    if a.order() > bound:
        raise Ambiguous(f"isomorphism search beyond bound {bound}")
    if a.element_orders() != b.element_orders():
        return None
    _, gens = generate(a.generators, a.degree, a.bound)
    if not gens:
        return {a.identity: b.identity}
    by_order: dict[int, list] = {}
    for y in b.sorted_elements():
        by_order.setdefault(perm_order(y), []).append(y)
    class_reps = {min(c) for c in conjugacy_classes(b)}
    target = b.order()

    def search(i, images):
        if i == len(gens):
            return extend_map(gens, images, a.identity, b.identity)
        want = perm_order(gens[i])
        cands = by_order.get(want, [])
        if i == 0:
            cands = [c for c in cands if c in class_reps]
        for c in cands:
            trial = images + [c]
            table = extend_map(gens[:i + 1], trial, a.identity, b.identity)
            if table is None or len(set(table.values())) != len(table):
                continue
            if i + 1 == len(gens):
                if len(table) == target:
                    return table
                continue
            found = search(i + 1, trial)
            if found is not None:
                return found
        return None

    return search(0, [])


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return find_isomorphism(a, b) is not None
