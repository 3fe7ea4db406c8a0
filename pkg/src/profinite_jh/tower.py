"""Profinite groups as finite prefixes of inverse systems G_1 <- G_2 <- ... <- G_N.

Every answer is exact for the represented prefix.  Statements about the whole
inverse limit are made only through a family annotation, which records the
simple types that keep appearing in kernels of the connecting maps forever.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .builtins import cyclic, direct_product, parse_group
from .errors import (
    BoundExceeded,
    GroupError,
    IncompatibleSubgroup,
    InvalidHom,
    InvalidMap,
    NotSurjective,
    ParseError,
)
from .groups import FiniteGroup, GroupHom, Subgroup, generate, normal_closure
from .perm import parse_cycles
from .series import FactorMultiset, SeriesStep, composition_series, factor_multiset, is_solvable
from .simple import SimpleType, identify, quotient_type


@dataclass(frozen=True)
class TowerFamily:
    kind: str
    params: tuple = ()
    eventual_kernel_factors: frozenset = frozenset()
    all_primes: bool = False  # every C_p recurs in the kernels

    def licenses(self, s: SimpleType) -> bool:
        return s in self.eventual_kernel_factors or (self.all_primes and s.is_abelian)

    def eventual_all_abelian(self) -> bool:
        return all(s.is_abelian for s in self.eventual_kernel_factors)

    def eventual_all_nonabelian(self) -> bool:
        return not self.all_primes and not any(s.is_abelian for s in self.eventual_kernel_factors)

    def describe(self) -> dict:
        out = {"kind": self.kind}
        out.update(dict(self.params))
        out["eventual_kernel_factors"] = (["all C_p"] if self.all_primes else []) + sorted(
            str(s) for s in self.eventual_kernel_factors)
        return out


@dataclass
class Tower:
    levels: list[FiniteGroup]
    maps: list[GroupHom]  # maps[n-1] : levels[n] -> levels[n-1]
    family: TowerFamily | None = None
    name: str = "tower"

    def __post_init__(self):
        if not self.levels:
            raise ValueError("a tower needs at least one level")
        if len(self.maps) != len(self.levels) - 1:
            raise ValueError("a tower with N levels needs N-1 maps")

    def __len__(self):
        return len(self.levels)

    def kernel(self, n: int) -> Subgroup:
        """Kernel of pi_n : G_{n+1} -> G_n (1-based n)."""
        return self.maps[n - 1].kernel()


# -- builders -----------------------------------------------------------------


def zp_tower(p: int, prefix: int) -> Tower:
    """Levels C_{p^n}, n = 1..prefix, with reduction maps."""
    if prefix < 1:
        raise ValueError("prefix must be positive")
    levels = [cyclic(p ** n) for n in range(1, prefix + 1)]
    maps = [GroupHom(levels[n], levels[n - 1], levels[n - 1].generators, is_surjective=True)
            for n in range(1, prefix)]
    fam = TowerFamily("zp", (("p", p), ("prefix", prefix)), frozenset([identify(cyclic(p))]))
    return Tower(levels, maps, fam, name=f"Z_{p} prefix {prefix}")


def zhat_tower(prefix: int) -> Tower:
    """Levels C_{n!}, n = 1..prefix."""
    if prefix < 1:
        raise ValueError("prefix must be positive")
    levels = [cyclic(math.factorial(n)) for n in range(1, prefix + 1)]
    maps = [GroupHom(levels[n], levels[n - 1], levels[n - 1].generators, is_surjective=True)
            for n in range(1, prefix)]
    fam = TowerFamily("zhat", (("prefix", prefix),), frozenset(), all_primes=True)
    return Tower(levels, maps, fam, name=f"Zhat prefix {prefix}")


def _projection(domain: FiniteGroup, codomain: FiniteGroup, dropped: FiniteGroup) -> GroupHom:
    # domain = codomain x dropped with generators listed part by part.
    images = list(codomain.generators) + [codomain.identity] * len(dropped.generators)
    return GroupHom(domain, codomain, images, is_surjective=True)


def product_tower(parts, family: TowerFamily | None = None, name: str | None = None) -> Tower:
    """Levels parts[0], parts[0] x parts[1], ... with coordinate projections."""
    parts = list(parts)
    levels = [parts[0]]
    for n in range(1, len(parts)):
        levels.append(direct_product(*parts[:n + 1]))
    maps = [_projection(levels[n], levels[n - 1], parts[n]) for n in range(1, len(parts))]
    return Tower(levels, maps, family, name=name or " <- ".join(g.name for g in levels))


def prod_simple_tower(simple_parts, prefix: int) -> Tower:
    """Levels prod_{i<=n} S_i where S_i cycles through ``simple_parts``."""
    if prefix < 1:
        raise ValueError("prefix must be positive")
    simple_parts = list(simple_parts)
    if not simple_parts:
        raise ValueError("prod_simple needs at least one part")
    types = frozenset(identify(s) for s in simple_parts)
    parts = [simple_parts[i % len(simple_parts)] for i in range(prefix)]
    fam = TowerFamily("prod_simple", (("parts", tuple(g.name for g in simple_parts)), ("prefix", prefix)),
                      types)
    return product_tower(parts, fam, name=f"prod_simple({','.join(g.name for g in simple_parts)}) prefix {prefix}")


def constant_tower(group: FiniteGroup, prefix: int) -> Tower:
    if prefix < 1:
        raise ValueError("prefix must be positive")
    levels = [group] * prefix
    maps = [GroupHom(group, group, group.generators, is_surjective=True) for _ in range(prefix - 1)]
    fam = TowerFamily("constant", (("group", group.name), ("prefix", prefix)), frozenset())
    return Tower(levels, maps, fam, name=f"constant {group.name} prefix {prefix}")


def truncate(tower: Tower, n: int) -> Tower:
    if not 1 <= n <= len(tower):
        raise ValueError(f"cannot truncate a {len(tower)}-level tower to {n} levels")
    return Tower(tower.levels[:n], tower.maps[:n - 1], tower.family, name=tower.name)


# -- validation -----------------------------------------------------------------


@dataclass
class ValidationReport:
    valid: bool
    levels: int
    orders: list
    error: str | None = None
    level: int | None = None

    def to_json(self) -> dict:
        return {"valid": self.valid, "levels": self.levels, "orders": self.orders,
                "error": self.error, "level": self.level}


def _family_prefix_matches(tower: Tower) -> bool:
    fam = tower.family
    params = dict(fam.params)
    n = len(tower)
    if fam.kind == "zp":
        ref = [cyclic(params["p"] ** k) for k in range(1, n + 1)]
    elif fam.kind == "zhat":
        ref = [cyclic(math.factorial(k)) for k in range(1, n + 1)]
    else:
        return True  # product and constant towers are built from their parts directly
    return all(a.generators == b.generators for a, b in zip(tower.levels, ref))


def check(tower: Tower):
    """Raise the first violated tower invariant (InvalidMap / NotSurjective)."""
    for n, hom in enumerate(tower.maps, start=1):
        if hom.domain is not tower.levels[n] and hom.domain.generators != tower.levels[n].generators:
            raise InvalidMap(n, "domain is not the next level")
        if hom.codomain is not tower.levels[n - 1] and hom.codomain.generators != tower.levels[n - 1].generators:
            raise InvalidMap(n, "codomain is not the previous level")
        try:
            hom.verify()
        except InvalidHom as exc:
            if "surjective" in str(exc):
                raise NotSurjective(n) from exc
            raise InvalidMap(n, str(exc)) from exc
        if not hom.check_surjective():
            raise NotSurjective(n)
        if tower.levels[n].order() != tower.levels[n - 1].order() * hom.kernel().order():
            raise InvalidMap(n, "|G_{n+1}| != |G_n| * |ker|")
    if tower.family is not None and not _family_prefix_matches(tower):
        raise InvalidMap(1, "levels do not follow the family rule")


def validate(tower: Tower) -> ValidationReport:
    orders = [g.order() for g in tower.levels]
    try:
        check(tower)
    except (InvalidMap, NotSurjective) as exc:
        return ValidationReport(False, len(tower), orders, type(exc).__name__, exc.level)
    return ValidationReport(True, len(tower), orders)


# -- factor profiles --------------------------------------------------------------


@dataclass(frozen=True)
class Multiplicity:
    kind: str  # "exact", "at_least" or "infinite"
    k: int | None = None

    def __str__(self):
        if self.kind == "infinite":
            return "Infinite"
        return f"{'Exact' if self.kind == 'exact' else 'AtLeast'}({self.k})"


def Exact(k):
    return Multiplicity("exact", k)


def AtLeast(k):
    return Multiplicity("at_least", k)


INFINITE = Multiplicity("infinite")


@dataclass
class FactorProfile:
    counts: dict  # SimpleType -> Multiplicity
    trace: dict  # SimpleType -> [n_S(G_1), ..., n_S(G_N)]
    level_multisets: list = field(repr=False, default_factory=list)

    def types(self):
        return sorted(self.counts, key=SimpleType.sort_key)

    def to_json(self) -> list[dict]:
        return [{"type": str(s), "multiplicity": str(self.counts[s]), "trace": self.trace[s]}
                for s in self.types()]


def profile(tower: Tower, use_family: bool = True) -> FactorProfile:
    multisets = [factor_multiset(g) for g in tower.levels]
    types = set()
    for m in multisets:
        types.update(s for s, c in m.items() if c)
    trace = {s: [m[s] for m in multisets] for s in types}
    fam = tower.family if use_family else None
    counts = {}
    for s in types:
        last = trace[s][-1]
        if fam is None:
            counts[s] = AtLeast(last)
        elif fam.licenses(s):
            counts[s] = INFINITE
        else:
            counts[s] = Exact(last)
    return FactorProfile(counts, trace, multisets)


# -- induced series -------------------------------------------------------------


@dataclass
class InducedSeries:
    tower: Tower
    seed: int
    blocks: list  # (level index, [SeriesStep]); block 0 lives in G_1, block n in ker pi_n <= G_{n+1}

    def factors(self) -> list[SimpleType]:
        return [step.factor for _, steps in self.blocks for step in steps]

    def block_lengths(self) -> list[int]:
        return [len(steps) for _, steps in self.blocks]


def induced_series(tower: Tower, seed: int = 0) -> InducedSeries:
    """Composition series of G_1 followed by composition series of each ker pi_n.

    Pulled back to the inverse limit, the concatenation is a descending chain
    of order type at most omega with simple successive quotients.
    """
    blocks = [(1, composition_series(tower.levels[0], seed))]
    for n in range(1, len(tower)):
        level = tower.levels[n]
        kern = tower.kernel(n)
        steps = [SeriesStep(Subgroup(level, st.subgroup.elements, st.subgroup.generators), st.factor)
                 for st in composition_series(kern.as_group(), seed)]
        blocks.append((n + 1, steps))
    return InducedSeries(tower, seed, blocks)


def accumulate(series: InducedSeries, through_block: int) -> FactorMultiset:
    if not 0 <= through_block < len(series.blocks):
        raise ValueError(f"block {through_block} out of range")
    out = FactorMultiset()
    for _, steps in series.blocks[:through_block + 1]:
        out.update(step.factor for step in steps)
    return out


@dataclass
class MatchReport:
    passed: bool
    seeds: tuple
    boundaries: list  # (multiset_a, multiset_b) per block
    first_divergence: tuple | None = None  # (block, type)

    def to_json(self) -> dict:
        return {"pass": self.passed, "seeds": list(self.seeds),
                "boundaries": [a.to_json() for a, _ in self.boundaries],
                "first_divergence": None if self.first_divergence is None else
                {"block": self.first_divergence[0], "type": str(self.first_divergence[1])}}


def match_series(tower: Tower, seed_a: int, seed_b: int) -> MatchReport:
    """Compare the accumulated factor multisets of two induced series block by block."""
    if seed_a == seed_b:
        raise ValueError("match_series needs two different seeds")
    sa, sb = induced_series(tower, seed_a), induced_series(tower, seed_b)
    boundaries = []
    divergence = None
    for b in range(len(sa.blocks)):
        ma, mb = accumulate(sa, b), accumulate(sb, b)
        boundaries.append((ma, mb))
        if divergence is None and ma != mb:
            bad = sorted((s for s in set(ma) | set(mb) if ma[s] != mb[s]), key=SimpleType.sort_key)
            divergence = (b, bad[0])
    return MatchReport(divergence is None, (seed_a, seed_b), boundaries, divergence)


# -- closed subgroups and intersections -------------------------------------------


@dataclass
class ClosedSubgroup:
    tower: Tower
    levels: list  # Subgroup H_n <= G_n

    @classmethod
    def from_generators(cls, tower: Tower, gens_per_level) -> "ClosedSubgroup":
        if len(gens_per_level) != len(tower):
            raise IncompatibleSubgroup("one generator list per level is required")
        levels = []
        for g, gens in zip(tower.levels, gens_per_level):
            gens = [tuple(x) for x in gens] or [g.identity]
            for x in gens:
                if x not in g:
                    raise IncompatibleSubgroup(f"generator not in level {g.name}")
            elems, used = generate(gens, g.degree, g.bound)
            levels.append(Subgroup(g, elems, used))
        h = cls(tower, levels)
        h.check_compatible()
        return h

    @classmethod
    def from_top(cls, tower: Tower, gens) -> "ClosedSubgroup":
        """Generate H_N at the top level and project it down the tower."""
        gens = [tuple(x) for x in gens] or [tower.levels[-1].identity]
        per_level = [gens]
        for hom in reversed(tower.maps):
            per_level.append([hom(x) for x in per_level[-1]])
        return cls.from_generators(tower, list(reversed(per_level)))

    def check_compatible(self):
        for n, hom in enumerate(self.tower.maps, start=1):
            upper, lower = self.levels[n], self.levels[n - 1]
            image, _ = generate([hom(x) for x in upper.generators], lower.parent.degree)
            if frozenset(image) != lower.elements:
                raise IncompatibleSubgroup(f"pi_{n}(H_{n + 1}) != H_{n}")


def is_subnormal(h: Subgroup, group: FiniteGroup) -> bool:
    """Whether h is reachable from group by repeatedly taking normal closures."""
    current = group
    while True:
        closure = normal_closure(current, h.generators or [group.identity])
        if closure.elements == h.elements:
            return True
        if closure.order() == current.order():
            return False
        current = closure.as_group()


def _projection_tables(tower: Tower) -> list[dict]:
    """tables[k] maps each element of G_N to its image in G_{k+1}."""
    top = tower.levels[-1]
    if not top.enumerable():
        raise BoundExceeded(f"top level {top.name} is too large to intersect")
    tables = [None] * len(tower)
    tables[-1] = {x: x for x in top.elements()}
    for k in range(len(tower) - 2, -1, -1):
        pi = tower.maps[k].table()
        tables[k] = {x: pi[y] for x, y in tables[k + 1].items()}
    return tables


def realized_chain(series: InducedSeries) -> list[tuple[frozenset, SimpleType | None]]:
    """The induced chain as subgroups of the top level G_N, each with the factor above it."""
    tower = series.tower
    tables = _projection_tables(tower)
    chain = [(tower.levels[-1].elements(), None)]
    for level_index, steps in series.blocks:
        table = tables[level_index - 1]
        for step in steps:
            members = step.subgroup.elements
            chain.append((frozenset(x for x, y in table.items() if y in members), step.factor))
    return chain


@dataclass
class IntersectReport:
    passed: bool
    accessible: bool
    steps: list  # {"factor", "status"} per step of the realized chain
    intersected: FactorMultiset
    subgroup_factors: FactorMultiset

    def to_json(self) -> dict:
        return {"pass": self.passed, "accessible": self.accessible,
                "steps": self.steps, "intersected_factors": self.intersected.to_json(),
                "subgroup_factors": self.subgroup_factors.to_json()}


def intersect_series(series: InducedSeries, h: ClosedSubgroup) -> IntersectReport:
    """Intersect the realized chain in G_N with H_N and classify each step.

    Each quotient (T_i & H)/(T_{i+1} & H) must be trivial or of the same
    simple type as T_i/T_{i+1}; the nontrivial ones form a composition series
    of H_N, so their multiset must equal the factor multiset of H_N.
    """
    if h.tower is not series.tower:
        raise IncompatibleSubgroup("subgroup belongs to a different tower")
    top = series.tower.levels[-1]
    hn = h.levels[-1]
    chain = realized_chain(series)
    inter = [terms & hn.elements for terms, _ in chain]
    steps, found = [], FactorMultiset()
    ok = True
    for i in range(1, len(chain)):
        upper, lower = inter[i - 1], inter[i]
        factor = chain[i][1]
        if len(upper) == len(lower):
            status = "trivial"
        else:
            upper_sub = Subgroup(top, upper)
            lower_sub = Subgroup(top, lower)
            if len(upper) != len(lower) * factor.order or not lower_sub.is_normal(upper_sub):
                status = "mismatch"
            else:
                status = "match" if quotient_type(upper_sub, lower_sub) == factor else "mismatch"
            if status == "match":
                found[factor] += 1
        ok = ok and status != "mismatch"
        steps.append({"factor": str(factor), "status": status})
    sub_factors = factor_multiset(hn.as_group())
    passed = ok and found == sub_factors
    return IntersectReport(passed, is_subnormal(hn, top), steps, found, sub_factors)


# -- classification ---------------------------------------------------------------


@dataclass
class Classification:
    value: bool
    prefix_relative: bool

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "prefix_relative": self.prefix_relative}


def prosolvable(tower: Tower) -> Classification:
    """Every level solvable, i.e. every composition factor over the prefix abelian."""
    value = all(is_solvable(g) for g in tower.levels)
    if tower.family is not None:
        value = value and tower.family.eventual_all_abelian()
    return Classification(value, tower.family is None)


def anabelian(tower: Tower) -> Classification:
    prof = profile(tower)
    value = not any(s.is_abelian for s in prof.counts)
    if tower.family is not None:
        value = value and tower.family.eventual_all_nonabelian()
    return Classification(value, tower.family is None)


# -- JSON ---------------------------------------------------------------------------

_FAMILY_KEYS = {
    "zp": {"p", "prefix"},
    "zhat": {"prefix"},
    "prod_simple": {"parts", "prefix"},
    "constant": {"group", "prefix"},
}


def _strict(desc, allowed, required, what):
    if not isinstance(desc, dict):
        raise ParseError(f"{what} must be an object")
    extra = set(desc) - allowed
    if extra:
        raise ParseError(f"unknown keys in {what}: {sorted(extra)}")
    missing = required - set(desc)
    if missing:
        raise ParseError(f"missing keys in {what}: {sorted(missing)}")


def _pos_int(value, key):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"{key!r} must be a positive integer, got {value!r}")
    return value


def _parse_image(entry, degree):
    if isinstance(entry, list):
        if not all(isinstance(c, str) for c in entry):
            raise ParseError("image lists must contain cycle strings")
        entry = "".join(entry) or "()"
    return parse_cycles(entry, degree)


def parse_tower(desc, levels: int | None = None) -> Tower:
    """Build a tower from its JSON description; ``levels`` overrides the prefix length."""
    if not isinstance(desc, dict):
        raise ParseError("tower description must be an object")
    if "family" in desc:
        _strict(desc, {"family"}, {"family"}, "tower")
        fam = desc["family"]
        if not isinstance(fam, dict) or fam.get("kind") not in _FAMILY_KEYS:
            raise ParseError(f"unknown family {fam.get('kind') if isinstance(fam, dict) else fam!r}")
        kind = fam["kind"]
        _strict(fam, _FAMILY_KEYS[kind] | {"kind"}, _FAMILY_KEYS[kind], f"family {kind}")
        prefix = levels if levels is not None else _pos_int(fam["prefix"], "prefix")
        try:
            if kind == "zp":
                p = _pos_int(fam["p"], "p")
                if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
                    raise ParseError(f"p={p} is not prime")
                return zp_tower(p, prefix)
            if kind == "zhat":
                return zhat_tower(prefix)
            if kind == "prod_simple":
                parts = fam["parts"]
                if not isinstance(parts, list) or not parts:
                    raise ParseError("'parts' must be a nonempty list")
                return prod_simple_tower([parse_group(p) for p in parts], prefix)
            return constant_tower(parse_group(fam["group"]), prefix)
        except GroupError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    _strict(desc, {"levels", "maps"}, {"levels", "maps"}, "tower")
    level_descs, map_descs = desc["levels"], desc["maps"]
    if not isinstance(level_descs, list) or not level_descs:
        raise ParseError("'levels' must be a nonempty list")
    if not isinstance(map_descs, list) or len(map_descs) != len(level_descs) - 1:
        raise ParseError("'maps' must list one map per consecutive pair of levels")
    groups = [parse_group(d) for d in level_descs]
    maps = []
    for n, m in enumerate(map_descs, start=1):
        _strict(m, {"gen_images"}, {"gen_images"}, f"map {n}")
        imgs = m["gen_images"]
        dom, cod = groups[n], groups[n - 1]
        if not isinstance(imgs, list) or len(imgs) != len(dom.generators):
            raise ParseError(f"map {n} needs one image per generator of level {n + 1}")
        maps.append(GroupHom(dom, cod, [_parse_image(e, cod.degree) for e in imgs], is_surjective=True))
    tower = Tower(groups, maps, None, name=" <- ".join(g.name for g in groups))
    if levels is not None:
        tower = truncate(tower, levels)
    return tower


def parse_closed_subgroup(desc, tower: Tower) -> ClosedSubgroup:
    """``{"levels": [[gens of H_1], ...]}`` or ``{"top": [gens of H_N]}``."""
    if not isinstance(desc, dict) or len(desc) != 1 or not set(desc) <= {"levels", "top"}:
        raise ParseError("subgroup description must be {'levels': [...]} or {'top': [...]}")
    if "top" in desc:
        gens = desc["top"]
        if not isinstance(gens, list):
            raise ParseError("'top' must be a list of cycle strings")
        top = tower.levels[-1]
        return ClosedSubgroup.from_top(tower, [parse_cycles(g, top.degree) for g in gens])
    per_level = desc["levels"]
    if not isinstance(per_level, list) or len(per_level) != len(tower):
        raise ParseError("'levels' must give one generator list per tower level")
    gens = []
    for g, lst in zip(tower.levels, per_level):
        if not isinstance(lst, list):
            raise ParseError("each level needs a list of cycle strings")
        gens.append([parse_cycles(x, g.degree) for x in lst])
    return ClosedSubgroup.from_generators(tower, gens)


__all__ = [
    "Tower", "TowerFamily", "ClosedSubgroup", "FactorProfile", "InducedSeries", "Multiplicity",
    "Exact", "AtLeast", "INFINITE", "zp_tower", "zhat_tower", "prod_simple_tower", "constant_tower",
    "product_tower", "truncate", "validate", "check", "profile", "induced_series", "accumulate",
    "match_series", "intersect_series", "realized_chain", "prosolvable", "anabelian", "parse_tower",
    "parse_closed_subgroup", "is_subnormal",
]
