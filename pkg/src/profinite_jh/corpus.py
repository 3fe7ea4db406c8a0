"""The fixed corpus of groups and towers used by the tests, scripts and golden files.

Everything is defined by its JSON description, so the command-line matrix
and the Python API see exactly the same inputs.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .builtins import parse_group
from .groups import FiniteGroup, Subgroup
from .perm import format_cycles
from .series import normal_subgroups
from .tower import ClosedSubgroup, Tower, parse_tower


def _cyc(n):
    return {"kind": "cyclic", "n": n}


def _sym(n):
    return {"kind": "symmetric", "n": n}


def _alt(n):
    return {"kind": "alternating", "n": n}


def _prod(*parts):
    return {"kind": "direct_product", "parts": list(parts)}


@dataclass(frozen=True)
class CorpusConfig:
    cyclic_orders: tuple = (1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 30, 720)
    dihedral_orders: tuple = (3, 4, 5, 6, 8)
    symmetric_degrees: tuple = (2, 3, 4, 5, 6)
    alternating_degrees: tuple = (4, 5, 6)
    sl2_primes: tuple = (3, 5, 7)
    psl2_primes: tuple = (7, 11)
    tower_prefix: int = 6
    prod_simple_prefix: int = 4
    constant_prefix: int = 3


def group_descriptions(cfg: CorpusConfig = CorpusConfig()) -> list[dict]:
    out = [_cyc(n) for n in cfg.cyclic_orders]
    out += [{"kind": "dihedral", "n": n} for n in cfg.dihedral_orders]
    out += [_sym(n) for n in cfg.symmetric_degrees]
    out += [_alt(n) for n in cfg.alternating_degrees]
    out += [{"kind": "sl2", "q": q} for q in cfg.sl2_primes]
    out += [{"kind": "psl2", "q": q} for q in cfg.psl2_primes]
    out += [
        _prod(_cyc(2), _cyc(2)),
        _prod(_cyc(2), _cyc(2), _cyc(2)),
        _prod(_cyc(3), _cyc(3)),
        _prod(_sym(3), _cyc(2)),
        _prod(_alt(5), _cyc(2)),
        _prod(_sym(3), _sym(3)),
        _prod(_cyc(2), _alt(4)),
        _prod(_sym(4), _cyc(2)),
    ]
    return out


def finite_groups(cfg: CorpusConfig = CorpusConfig()) -> list[FiniteGroup]:
    """At least thirty permutation groups of order at most 2000 (C720 included)."""
    return [parse_group(d) for d in group_descriptions(cfg)]


def small_groups(limit: int = 500) -> list[FiniteGroup]:
    """Corpus groups within the brute-force section bound."""
    return [g for g in finite_groups() if g.order() <= limit]


def product_tower_description(part_descs) -> dict:
    """Explicit description of P_1 <- P_1 x P_2 <- ... with coordinate projections."""
    levels = [part_descs[0]] + [_prod(*part_descs[:n + 1]) for n in range(1, len(part_descs))]
    maps = []
    for n in range(1, len(part_descs)):
        lower = parse_group(levels[n - 1])
        dropped = parse_group(part_descs[n])
        images = [format_cycles(g) for g in lower.generators]
        images += [format_cycles(lower.identity)] * len(dropped.generators)
        maps.append({"gen_images": images})
    return {"levels": levels, "maps": maps}


def tower_descriptions(cfg: CorpusConfig = CorpusConfig()) -> list[dict]:
    out = [{"family": {"kind": "zp", "p": p, "prefix": cfg.tower_prefix}} for p in (2, 3, 5)]
    out.append({"family": {"kind": "zhat", "prefix": cfg.tower_prefix}})
    out.append({"family": {"kind": "prod_simple", "parts": [_alt(5), {"kind": "psl2", "q": 7}],
                           "prefix": cfg.prod_simple_prefix}})
    for g in (_alt(5), _sym(4), {"kind": "sl2", "q": 5}, _prod(_cyc(2), _cyc(2)), _prod(_alt(5), _cyc(2))):
        out.append({"family": {"kind": "constant", "group": g, "prefix": cfg.constant_prefix}})
    out.append(product_tower_description([_sym(4), _sym(4)]))
    out.append(product_tower_description([_alt(5), _alt(5)]))
    out.append(product_tower_description([_alt(5), {"kind": "psl2", "q": 7}]))
    return out


def towers(cfg: CorpusConfig = CorpusConfig()) -> list[Tower]:
    return [parse_tower(d) for d in tower_descriptions(cfg)]


def intersectable_towers(max_top: int = 5_000) -> list[Tower]:
    """Corpus towers whose top level is small enough for chain intersection."""
    return [t for t in towers() if t.levels[-1].order() <= max_top]


def slug(name: str) -> str:
    """File-name friendly version of a group or tower name."""
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def random_subnormal(group: FiniteGroup, rng: random.Random) -> Subgroup:
    """Walk down a random chain of normal subgroups for a random number of steps."""
    current, sub = group, group.whole()
    for _ in range(rng.randint(0, 3)):
        choices = normal_subgroups(current)
        pick = rng.choice(choices)
        sub = Subgroup(group, pick.elements, pick.generators)
        if pick.order() in (1, current.order()):
            break
        current = pick.as_group()
    return sub


def random_closed_subgroup(tower: Tower, rng: random.Random) -> ClosedSubgroup:
    h = random_subnormal(tower.levels[-1], rng)
    return ClosedSubgroup.from_top(tower, h.generators)
