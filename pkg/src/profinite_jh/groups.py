"""Finite permutation groups, subgroups, homomorphisms and quotients.

Groups are enumerated by breadth-first closure up to a configurable bound.
Two kinds of structure let very large groups be handled without
enumeration: a single generator (cyclic groups, whose order and membership
come from cycle arithmetic) and a recorded direct-product decomposition
(``parts``).  Everything else is brute force over the element set.
"""
from __future__ import annotations

import math
import random
import threading
from collections import deque

from .errors import BoundExceeded, InvalidHom, NotNormal, TrivialGroup
from .perm import (
    compose,
    conjugate,
    commutator,
    cycles,
    identity,
    inverse,
    is_identity,
    make_perm,
    perm_order,
    power,
)

DEFAULT_BOUND = 100_000
HOM_SAMPLE_FACTOR = 10


class FiniteGroup:
    """A permutation group given by generators, with a lazily cached element set.

    ``parts`` records a direct-product decomposition (set only by
    :func:`profinite_jh.builtins.direct_product`); it is trusted, not checked.
    """

    def __init__(self, degree: int, generators, name: str | None = None, *, parts=None,
                 bound: int = DEFAULT_BOUND):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        gens = tuple(make_perm(g) for g in generators)
        if not gens:
            raise ValueError("a group needs at least one generator")
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name or f"<{len(gens)} gens on {degree} points>"
        self.parts = tuple(parts) if parts else None
        self.bound = bound
        self.identity = identity(degree)
        self._lock = threading.RLock()
        self._elements: frozenset | None = None
        self._sorted: tuple | None = None
        self._order: int | None = None
        self._cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self._order if self._order else '?'})"

    # -- size and membership -------------------------------------------------

    @property
    def is_cyclic_presented(self) -> bool:
        return len(self.generators) == 1

    def structural_order(self) -> int | None:
        """Order derived from structure alone, or None when enumeration is needed."""
        if self._order is not None:
            return self._order
        if self.is_cyclic_presented:
            return perm_order(self.generators[0])
        if self.parts:
            return math.prod(p.order() for p in self.parts)
        return None

    def order(self) -> int:
        if self._order is None:
            known = self.structural_order()
            self._order = known if known is not None else len(self.elements())
        return self._order

    def enumerable(self) -> bool:
        known = self.structural_order()
        return known is None or known <= self.bound

    def elements(self) -> frozenset:
        with self._lock:
            if self._elements is None:
                known = self.structural_order()
                if known is not None and known > self.bound:
                    raise BoundExceeded(f"{self.name} has order {known} > bound {self.bound}")
                seen = {self.identity}
                queue = deque([self.identity])
                gens = [g for g in self.generators if not is_identity(g)]
                while queue:
                    x = queue.popleft()
                    for g in gens:
                        y = compose(x, g)
                        if y not in seen:
                            seen.add(y)
                            if len(seen) > self.bound:
                                raise BoundExceeded(
                                    f"closure of {self.name} exceeds bound {self.bound}")
                            queue.append(y)
                self._elements = frozenset(seen)
                self._order = len(seen)
            return self._elements

    def sorted_elements(self) -> tuple:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.elements()))
        return self._sorted

    def __contains__(self, x) -> bool:
        x = tuple(x)
        if len(x) != self.degree:
            return False
        if self._elements is not None:
            return x in self._elements
        if self.is_cyclic_presented:
            return cyclic_log(self.generators[0], x) is not None
        if self.parts:
            return all(piece in part for piece, part in zip(split_blocks(x, self.parts), self.parts))
        return x in self.elements()

    def is_trivial(self) -> bool:
        return all(is_identity(g) for g in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def same_elements(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and self.elements() == other.elements()

    def element_orders(self) -> dict[int, int]:
        """Histogram element order -> number of elements."""
        hist: dict[int, int] = {}
        for x in self.elements():
            k = perm_order(x)
            hist[k] = hist.get(k, 0) + 1
        return dict(sorted(hist.items()))

    def memo(self, key, fn):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.elements(), self.generators)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [self.identity], [])


def split_blocks(x, parts):
    """Restrict a permutation of a direct product's points to each factor's block."""
    out = []
    offset = 0
    for part in parts:
        block = x[offset:offset + part.degree]
        out.append(tuple(i - offset for i in block))
        offset += part.degree
    return out


def cyclic_log(c, x) -> int | None:
    """Return k with c**k == x, or None when x is not a power of c."""
    r, m = 0, 1
    for cyc in cycles(c, include_fixed=True):
        n = len(cyc)
        pos = {pt: i for i, pt in enumerate(cyc)}
        j = pos.get(x[cyc[0]])
        if j is None:
            return None
        for i, pt in enumerate(cyc):
            if x[pt] != cyc[(i + j) % n]:
                return None
        g = math.gcd(m, n)
        if (j - r) % g:
            return None
        step = ((j - r) // g * pow(m // g, -1, n // g)) % (n // g) if n // g > 1 else 0
        r = r + m * step
        m = m * n // g
        r %= m
    return r


# -- closure machinery ------------------------------------------------------


def extend(elements: set, gens: list, x, bound: int = DEFAULT_BOUND) -> set:
    """The subgroup generated by the group ``elements`` (generated by ``gens``) and ``x``.

    Coset-by-coset closure: the result is a union of right cosets of the old group.
    """
    if x in elements:
        return elements
    base = list(elements)
    new_gens = list(gens) + [x]
    result = set(elements)
    result.update(compose(h, x) for h in base)
    reps = [x]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for g in new_gens:
            t = compose(r, g)
            if t not in result:
                result.update(compose(h, t) for h in base)
                if len(result) > bound:
                    raise BoundExceeded(f"subgroup closure exceeds bound {bound}")
                reps.append(t)
    return result


def generate(gens, degree: int, bound: int = DEFAULT_BOUND) -> tuple[set, list]:
    """Element set generated by ``gens`` plus the irredundant generators actually used."""
    elements = {identity(degree)}
    used: list = []
    for g in gens:
        if g not in elements:
            elements = extend(elements, used, g, bound)
            used.append(g)
    return elements, used


class Subgroup:
    """A subgroup of ``parent`` given by its element set."""

    def __init__(self, parent: FiniteGroup, elements, generators=None):
        self.parent = parent
        self.elements = frozenset(elements)
        if not self.elements:
            raise ValueError("a subgroup contains at least the identity")
        self._gens = None if generators is None else list(generators)

    def __repr__(self):
        return f"Subgroup(order={self.order()} in {self.parent.name})"

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.elements

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup"):
        return self.elements <= other.elements

    def __lt__(self, other: "Subgroup"):
        return self.elements < other.elements

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def sort_key(self):
        return (len(self.elements), tuple(sorted(self.elements)))

    @property
    def generators(self) -> list:
        if self._gens is None:
            elems = {self.parent.identity}
            used: list = []
            for x in sorted(self.elements):
                if x not in elems:
                    elems = extend(elems, used, x)
                    used.append(x)
            self._gens = used
        return self._gens

    def is_subgroup(self) -> bool:
        if self.parent.identity not in self.elements:
            return False
        return all(compose(a, b) in self.elements for a in self.elements for b in self.generators) \
            and all(inverse(a) in self.elements for a in self.generators)

    def is_normal(self, within: "Subgroup | FiniteGroup | None" = None) -> bool:
        """Normality in the parent, or in ``within`` when given."""
        conj_gens = self.parent.generators if within is None else _gens_of(within)
        return all(conjugate(n, g) in self.elements for g in conj_gens for n in self.generators)

    def as_group(self) -> FiniteGroup:
        """This subgroup as a FiniteGroup in its own right, cached on the parent."""
        def build():
            gens = self.generators or [self.parent.identity]
            grp = FiniteGroup(self.parent.degree, gens, name=f"sub{len(self.elements)}({self.parent.name})",
                              bound=self.parent.bound)
            grp._elements = self.elements
            grp._order = len(self.elements)
            return grp
        return self.parent.memo(("subgroup", self.elements), build)

    def within(self, group: FiniteGroup) -> "Subgroup":
        """Re-parent onto ``group`` (which must contain these elements)."""
        return Subgroup(group, self.elements, self._gens)


def _gens_of(g):
    return g.generators


def subgroup(group: FiniteGroup, gens) -> Subgroup:
    gens = [tuple(g) for g in gens]
    elements, used = generate(gens, group.degree, group.bound)
    return Subgroup(group, elements, used)


def enumerate_elements(group: FiniteGroup) -> frozenset:
    return group.elements()


def normal_closure(group: FiniteGroup, seed) -> Subgroup:
    """Smallest normal subgroup of ``group`` containing ``seed``.

    Only conjugation by the generators of ``group`` is needed, so this works
    for groups too large to enumerate as long as the closure itself is small.
    """
    elements = {group.identity}
    gens: list = []
    todo = [tuple(s) for s in seed]
    while todo:
        x = todo.pop()
        if x in elements:
            continue
        elements = extend(elements, gens, x, group.bound)
        gens.append(x)
        todo.extend(conjugate(x, g) for g in group.generators)
    return Subgroup(group, elements, gens)


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    gens = group.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, comms)


def conjugacy_classes(group: FiniteGroup) -> list[frozenset]:
    def build():
        assigned = set()
        classes = []
        inv_gens = [(g, inverse(g)) for g in group.generators]
        for x in group.sorted_elements():
            if x in assigned:
                continue
            orbit = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for g, gi in inv_gens:
                    z = compose(compose(gi, y), g)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            assigned |= orbit
            classes.append(frozenset(orbit))
        return classes
    return group.memo("classes", build)


def class_closures(group: FiniteGroup) -> list[Subgroup]:
    """Distinct normal closures of single elements, one per conjugacy class.

    Classes of generators of the same cyclic subgroup share a closure, so only
    one of them is computed.
    """
    def build():
        done = set()
        found: dict[frozenset, Subgroup] = {}
        for cls in conjugacy_classes(group):
            x = min(cls)
            if x in done or is_identity(x):
                continue
            n = perm_order(x)
            for k in range(1, n):
                if math.gcd(k, n) == 1:
                    y = power(x, k)
                    if y not in done:
                        done.update(c for c in conjugacy_classes_of(group, y))
            done.update(cls)
            closure = normal_closure(group, [x])
            found.setdefault(closure.elements, closure)
        return sorted(found.values(), key=Subgroup.sort_key)
    return group.memo("class_closures", build)


def conjugacy_classes_of(group: FiniteGroup, x) -> frozenset:
    index = group.memo("class_index", lambda: {y: cls for cls in conjugacy_classes(group) for y in cls})
    return index[x]


def is_simple(group: FiniteGroup) -> bool:
    order = group.order()
    if order == 1:
        raise TrivialGroup(f"{group.name} is trivial")
    if _is_prime(order):
        return True
    if group.is_abelian():
        return False
    return all(len(c) == order for c in class_closures(group))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def product_set(a: Subgroup, b: Subgroup) -> frozenset:
    return frozenset(compose(x, y) for x in a.elements for y in b.elements)


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(a.parent, a.elements & b.elements)


# -- homomorphisms ------------------------------------------------------------


class GroupHom:
    """A homomorphism given by the images of the domain's generators."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, images, is_surjective: bool = False):
        images = tuple(make_perm(h) for h in images)
        if len(images) != len(domain.generators):
            raise InvalidHom(f"{len(images)} images for {len(domain.generators)} generators")
        for h in images:
            if len(h) != codomain.degree:
                raise InvalidHom("image degree does not match codomain")
        self.domain = domain
        self.codomain = codomain
        self.image_of_generator = images
        self.is_surjective = is_surjective
        self._table: dict | None = None
        self._kernel: Subgroup | None = None
        self._lock = threading.RLock()

    def __repr__(self):
        return f"GroupHom({self.domain.name} -> {self.codomain.name})"

    def table(self) -> dict:
        """Element -> image for the whole domain; raises InvalidHom when inconsistent.

        Breadth-first over the Cayley graph: the assignment extends to a
        homomorphism iff phi(x g) == phi(x) phi(g) on every edge (x, g).
        """
        with self._lock:
            if self._table is None:
                if not self.domain.enumerable():
                    raise BoundExceeded(f"domain {self.domain.name} too large to tabulate")
                self._table = _extend_map(self.domain, self.image_of_generator, self.codomain.identity)
                if self._table is None:
                    raise InvalidHom("generator images do not extend to a homomorphism")
            return self._table

    def __call__(self, x):
        x = tuple(x)
        if self._table is None and self.domain.is_cyclic_presented:
            k = cyclic_log(self.domain.generators[0], x)
            if k is None:
                raise ValueError("element not in domain")
            return power(self.image_of_generator[0], k)
        return self.table()[x]

    def image(self) -> Subgroup:
        if self.is_surjective:
            return self.codomain.whole()
        return subgroup(self.codomain, self.image_of_generator)

    def image_order(self) -> int:
        if self.is_surjective:
            return self.codomain.order()
        return self.image().order()

    def verify(self, rng: random.Random | None = None):
        """Raise InvalidHom if this is not a homomorphism, or if the surjectivity flag lies."""
        for h in self.image_of_generator:
            if h not in self.codomain:
                raise InvalidHom("generator image outside the codomain")
        for g, h in zip(self.domain.generators, self.image_of_generator):
            if perm_order(g) % perm_order(h):
                raise InvalidHom("image order does not divide generator order")
        if self.domain.is_cyclic_presented:
            pass  # divisibility of orders is exact for one generator
        elif self.domain.enumerable():
            self.table()
        else:
            self._sampled_check(rng or random.Random(0))
        if self.is_surjective and not self.check_surjective():
            raise InvalidHom("flagged surjective but image is a proper subgroup")
        return True

    def check_surjective(self) -> bool:
        imgs = set(self.image_of_generator)
        if all(g in imgs or is_identity(g) for g in self.codomain.generators):
            return True
        elems, _ = generate(self.image_of_generator, self.codomain.degree, self.codomain.bound)
        return len(elems) == self.codomain.order()

    def _sampled_check(self, rng: random.Random):
        # Domain too large to tabulate: relation kernel index plus random word relations.
        gens = self.domain.generators
        k = len(gens)
        seen: dict = {}
        for _ in range(HOM_SAMPLE_FACTOR * k * k):
            x, hx = self.domain.identity, self.codomain.identity
            for _ in range(rng.randint(1, 4 * k + 4)):
                i = rng.randrange(k)
                x = compose(x, gens[i])
                hx = compose(hx, self.image_of_generator[i])
            if seen.setdefault(x, hx) != hx:
                raise InvalidHom("two words for one element have different images")
        kern = self._relation_kernel()
        if self.domain.order() != kern.order() * self.image_order():
            raise InvalidHom("relation kernel has the wrong index")

    def _relation_kernel(self) -> Subgroup:
        trivial = [g for g, h in zip(self.domain.generators, self.image_of_generator) if is_identity(h)]
        return normal_closure(self.domain, trivial)

    def kernel(self) -> Subgroup:
        with self._lock:
            if self._kernel is None:
                self._kernel = self._compute_kernel()
            return self._kernel

    def _compute_kernel(self) -> Subgroup:
        e = self.codomain.identity
        if self.domain.is_cyclic_presented:
            g = self.domain.generators[0]
            n, m = perm_order(g), perm_order(self.image_of_generator[0])
            base = power(g, m)
            elems = [power(base, i) for i in range(n // m)]
            return Subgroup(self.domain, elems, [base] if n // m > 1 else [])
        if self.domain.enumerable():
            table = self.table()
            return Subgroup(self.domain, [x for x, y in table.items() if y == e])
        kern = self._relation_kernel()
        if self.domain.order() != kern.order() * self.image_order():
            raise BoundExceeded("kernel of a non-enumerable domain is not the relation kernel")
        return kern


def _extend_map(domain: FiniteGroup, images, codomain_identity) -> dict | None:
    return extend_map(domain.generators, images, domain.identity, codomain_identity)


def extend_map(gens, images, domain_identity, codomain_identity) -> dict | None:
    """Tabulate the homomorphism on <gens> sending gens[i] to images[i], or None if none exists."""
    table = {domain_identity: codomain_identity}
    queue = deque([domain_identity])
    pairs = list(zip(gens, images))
    while queue:
        x = queue.popleft()
        hx = table[x]
        for g, h in pairs:
            y = compose(x, g)
            hy = compose(hx, h)
            prev = table.get(y)
            if prev is None:
                table[y] = hy
                queue.append(y)
            elif prev != hy:
                return None
    return table


def kernel(hom: GroupHom) -> Subgroup:
    return hom.kernel()


def quotient(group: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Coset action of ``group`` on right cosets of the normal subgroup ``n``.

    Cosets are numbered by their lexicographically least element.
    """
    if not n.is_normal(group):
        raise NotNormal(f"subgroup of order {n.order()} is not normal in {group.name}")
    coset_of: dict = {}
    reps: list = []
    nelems = list(n.elements)
    for x in group.sorted_elements():
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for m in nelems:
            coset_of[compose(m, x)] = idx
    index = len(reps)
    images = [tuple(coset_of[compose(r, g)] for r in reps) for g in group.generators]
    q = FiniteGroup(index, images, name=f"{group.name}/N{n.order()}", bound=group.bound)
    hom = GroupHom(group, q, images, is_surjective=True)
    hom.coset_of = coset_of
    hom.coset_reps = reps
    return q, hom


def coset_partition(big: Subgroup | FiniteGroup, small: Subgroup) -> list[list]:
    """Right cosets small*x of ``small`` inside ``big``, each as an element list."""
    elems = big.sorted_elements() if isinstance(big, FiniteGroup) else sorted(big.elements)
    assigned = set()
    out = []
    smalls = list(small.elements)
    for x in elems:
        if x in assigned:
            continue
        coset = [compose(m, x) for m in smalls]
        assigned.update(coset)
        out.append(coset)
    return out
