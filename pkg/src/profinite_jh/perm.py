"""Permutations of {0..n-1} stored as plain tuples of images.

Products act on the right: ``compose(p, q)`` applies ``p`` first, then ``q``,
so the image of ``i`` is ``q[p[i]]``.  Tuples compare lexicographically, which
gives the fixed total order used for deterministic labels everywhere.
"""
from __future__ import annotations

import math
import re

from .errors import ParseError

Permutation = tuple  # tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def make_perm(images) -> Permutation:
    p = tuple(int(i) for i in images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation of 0..{len(p) - 1}: {p}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    return tuple(map(q.__getitem__, p))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """g^-1 x g."""
    return compose(compose(inverse(g), x), g)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """a^-1 b^-1 a b."""
    return compose(compose(inverse(a), inverse(b)), compose(a, b))


def is_identity(p: Permutation) -> bool:
    return all(i == j for i, j in enumerate(p))


def cycles(p: Permutation, include_fixed=False) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        if len(cyc) > 1 or include_fixed:
            out.append(cyc)
    return out


def perm_order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycles(p, include_fixed=True))) if p else 1


def power(p: Permutation, k: int) -> Permutation:
    """p**k computed cycle by cycle, linear in the degree for any k."""
    out = list(range(len(p)))
    for cyc in cycles(p):
        n = len(cyc)
        shift = k % n
        for idx, point in enumerate(cyc):
            out[point] = cyc[(idx + shift) % n]
    return tuple(out)


def from_cycles(cycs, degree: int) -> Permutation:
    images = list(range(degree))
    seen = set()
    for cyc in cycs:
        for point in cyc:
            if not 0 <= point < degree:
                raise ParseError(f"point {point} outside 0..{degree - 1}")
            if point in seen:
                raise ParseError(f"point {point} repeated in cycle notation")
            seen.add(point)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return tuple(images)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 0-based cycle notation such as ``"(0 1)(2 3 4)"``; ``"()"`` is the identity."""
    if not isinstance(text, str):
        raise ParseError(f"expected a cycle string, got {text!r}")
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycs = []
    for body in _CYCLE_RE.findall(stripped):
        tokens = body.replace(",", " ").split()
        try:
            cyc = [int(t) for t in tokens]
        except ValueError as exc:
            raise ParseError(f"malformed cycle notation: {text!r}") from exc
        if cyc:
            cycs.append(cyc)
    return from_cycles(cycs, degree)


def format_cycles(p: Permutation) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)
