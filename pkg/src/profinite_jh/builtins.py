"""Named groups and the JSON group-description format.

A description is either ``{"kind": "permutation", "degree": n, "generators": [...]}``
with 0-based cycle strings, or one of the built-in constructors
``cyclic``, ``symmetric``, ``alternating``, ``dihedral``, ``sl2``, ``psl2`` and
``direct_product``.  Unknown keys are rejected.
"""
from __future__ import annotations

import math

from .errors import ParseError
from .groups import FiniteGroup
from .perm import format_cycles, from_cycles, identity, parse_cycles


def _factor_prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def cyclic(n: int) -> FiniteGroup:
    """C_n as disjoint cycles of its prime-power orders (smallest faithful degree)."""
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    if n == 1:
        return FiniteGroup(1, [identity(1)], name="C1")
    lengths = _factor_prime_powers(n)
    cycs, start = [], 0
    for length in lengths:
        cycs.append(list(range(start, start + length)))
        start += length
    return FiniteGroup(start, [from_cycles(cycs, start)], name=f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        return FiniteGroup(1, [identity(1)], name="S1")
    if n == 2:
        return FiniteGroup(2, [(1, 0)], name="S2")
    return FiniteGroup(n, [from_cycles([[0, 1]], n), from_cycles([list(range(n))], n)], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n < 3:
        return FiniteGroup(n, [identity(n)], name=f"A{n}")
    if n == 3:
        return FiniteGroup(3, [(1, 2, 0)], name="A3")
    long = list(range(n)) if n % 2 else list(range(1, n))
    return FiniteGroup(n, [from_cycles([[0, 1, 2]], n), from_cycles([long], n)], name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, [rot, ref], name=f"D{n}")


def _check_prime(q: int, limit: int):
    if q < 2 or any(q % d == 0 for d in range(2, math.isqrt(q) + 1)):
        raise ValueError(f"q={q} must be prime")
    if q > limit:
        raise ValueError(f"q={q} exceeds the supported limit {limit}")


def _sl2_generators(q: int):
    return [((1, 1), (0, 1)), ((0, q - 1), (1, 0))]


def sl2(q: int) -> FiniteGroup:
    """SL_2(q), q prime <= 13, acting on the q^2-1 nonzero vectors of F_q^2."""
    _check_prime(q, 13)
    vectors = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}
    gens = []
    for (a, b), (c, d) in _sl2_generators(q):
        gens.append(tuple(index[((a * x + b * y) % q, (c * x + d * y) % q)] for x, y in vectors))
    return FiniteGroup(len(vectors), gens, name=f"SL2({q})")


def psl2(q: int) -> FiniteGroup:
    """PSL_2(q), q prime, as Moebius maps on the q+1 points of the projective line."""
    _check_prime(q, 97)
    points = [(x, 1) for x in range(q)] + [(1, 0)]

    def normalize(x, y):
        if y % q:
            return ((x * pow(y, -1, q)) % q, 1)
        return (1, 0)

    index = {p: i for i, p in enumerate(points)}
    gens = []
    for (a, b), (c, d) in _sl2_generators(q):
        gens.append(tuple(index[normalize(a * x + b * y, c * x + d * y)] for x, y in points))
    return FiniteGroup(q + 1, gens, name=f"PSL2({q})")


def direct_product(*groups: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """External direct product on the disjoint union of the factors' points."""
    if not groups:
        raise ValueError("direct product of no groups")
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for x in g.generators:
            img = list(range(degree))
            for i, j in enumerate(x):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += g.degree
    label = name or "x".join(g.name for g in groups)
    return FiniteGroup(degree, gens, name=label, parts=groups)


def embed(x, offset: int, degree: int):
    img = list(range(degree))
    for i, j in enumerate(x):
        img[offset + i] = offset + j
    return tuple(img)


# -- JSON descriptions ----------------------------------------------------------

_SCHEMAS = {
    "permutation": {"degree", "generators"},
    "cyclic": {"n"},
    "symmetric": {"n"},
    "alternating": {"n"},
    "dihedral": {"n"},
    "sl2": {"q"},
    "psl2": {"q"},
    "direct_product": {"parts"},
}


def _int_field(desc, key) -> int:
    value = desc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{key!r} must be an integer, got {value!r}")
    return value


def parse_group(desc) -> FiniteGroup:
    """Build a group from a parsed JSON description (strict about keys and types)."""
    if not isinstance(desc, dict):
        raise ParseError(f"group description must be an object, got {type(desc).__name__}")
    kind = desc.get("kind")
    if kind not in _SCHEMAS:
        raise ParseError(f"unknown group kind {kind!r}")
    allowed = _SCHEMAS[kind] | {"kind"}
    extra = set(desc) - allowed
    missing = _SCHEMAS[kind] - set(desc)
    if extra:
        raise ParseError(f"unknown keys for kind {kind!r}: {sorted(extra)}")
    if missing:
        raise ParseError(f"missing keys for kind {kind!r}: {sorted(missing)}")
    try:
        if kind == "permutation":
            degree = _int_field(desc, "degree")
            gens = desc["generators"]
            if not isinstance(gens, list) or not gens:
                raise ParseError("'generators' must be a nonempty list")
            if degree < 1:
                raise ParseError("'degree' must be positive")
            return FiniteGroup(degree, [parse_cycles(g, degree) for g in gens])
        if kind == "direct_product":
            parts = desc["parts"]
            if not isinstance(parts, list) or not parts:
                raise ParseError("'parts' must be a nonempty list")
            return direct_product(*(parse_group(p) for p in parts))
        builder = {"cyclic": cyclic, "symmetric": symmetric, "alternating": alternating,
                   "dihedral": dihedral, "sl2": sl2, "psl2": psl2}[kind]
        key = "q" if kind in ("sl2", "psl2") else "n"
        return builder(_int_field(desc, key))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def describe(group: FiniteGroup) -> dict:
    """Serialize any group as an explicit permutation description."""
    return {"kind": "permutation", "degree": group.degree,
            "generators": [format_cycles(g) for g in group.generators]}
