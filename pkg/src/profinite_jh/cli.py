"""Command-line front end.

Exit codes: 0 success or passing check, 1 a check that ran and failed,
2 bad input (parse errors, bounds exceeded, violated preconditions).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import sections as sec
from . import series as ser
from . import tower as tw
from .builtins import parse_group
from .errors import BoundExceeded, GroupError, NotSolvable, ParseError
from .simple import identify

GROUP_VERBS = {
    "factors": [], "series": ["seed"], "jh-verify": ["trials"], "identify": [],
    "solvable": [], "radical-witness": ["seed"], "sections": [], "power-cover": ["q", "m"],
    "perfectness": [], "a5-check": [],
}
TOWER_VERBS = {
    "tower-validate": ["levels"], "tower-factors": ["levels"], "tower-series": ["seed", "levels"],
    "tower-match": ["seed", "trials", "levels"], "tower-prosolvable": ["levels"],
    "tower-anabelian": ["levels"],
}


class Outcome:
    def __init__(self, payload: dict, lines: list[str], code: int = 0):
        self.payload, self.lines, self.code = payload, lines, code


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _load_group(path):
    return parse_group(_load_json(path))


def _load_tower(path, levels):
    return tw.parse_tower(_load_json(path), levels=levels)


def _table(rows, header=("type", "count")) -> list[str]:
    rows = [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header), fmt.format(*("-" * w for w in widths))] + [fmt.format(*r) for r in rows]


def _factor_rows(fm: ser.FactorMultiset):
    return [(str(s), c) for s, c in fm.items_sorted()]


# -- finite verbs ------------------------------------------------------------------


def cmd_factors(args):
    g = _load_group(args.group)
    fm = ser.factor_multiset(g)
    return Outcome({"group": g.name, "order": g.order(), "factors": fm.to_json()},
                   [f"{g.name} (order {g.order()})"] + _table(_factor_rows(fm)))


def cmd_series(args):
    g = _load_group(args.group)
    steps = ser.composition_series(g, args.seed)
    payload = {"group": g.name, "order": g.order(), "seed": args.seed,
               "steps": [{"order": s.subgroup.order(), "factor": str(s.factor)} for s in steps]}
    rows = [(s.subgroup.order(), s.factor) for s in steps]
    return Outcome(payload, [f"{g.name} (order {g.order()}), seed {args.seed}"]
                   + _table(rows, ("subgroup order", "factor above")))


def cmd_jh_verify(args):
    g = _load_group(args.group)
    rep = ser.jh_verify(g, args.trials)
    lines = [f"{g.name} (order {g.order()}): {'PASS' if rep.passed else 'FAIL'}, "
             f"{rep.chains_found} distinct chains over {args.trials} seeds"] + _table(_factor_rows(rep.factors))
    return Outcome(rep.to_json(), lines, 0 if rep.passed else 1)


def cmd_identify(args):
    g = _load_group(args.group)
    t = identify(g)
    return Outcome({"group": g.name, "order": g.order(), "type": str(t)}, [f"{g.name}: {t}"])


def cmd_solvable(args):
    g = _load_group(args.group)
    v = ser.is_solvable(g)
    return Outcome({"group": g.name, "order": g.order(), "solvable": v},
                   [f"{g.name}: {'solvable' if v else 'not solvable'}"])


def cmd_radical_witness(args):
    g = _load_group(args.group)
    try:
        degrees = ser.radical_witness(g, args.seed)
    except NotSolvable as exc:
        return Outcome({"group": g.name, "order": g.order(), "degrees": None, "error": str(exc)},
                       [f"{g.name}: {exc}"], 1)
    return Outcome({"group": g.name, "order": g.order(), "degrees": degrees},
                   [f"{g.name}: radical degrees {degrees}"])


def cmd_sections(args):
    g = _load_group(args.group)
    types = sorted(sec.simple_sections(g), key=lambda s: s.sort_key())
    return Outcome({"group": g.name, "order": g.order(), "sections": [str(s) for s in types]},
                   [f"{g.name}: simple sections " + ", ".join(map(str, types))])


def cmd_power_cover(args):
    g = _load_group(args.group)
    rep = sec.power_word_coverage(g, args.q, args.m)
    payload = {"group": g.name, **rep.to_json()}
    return Outcome(payload, [f"{g.name}: q={args.q} m={args.m} covered {rep.covered}/{rep.order} "
                             f"{'PASS' if rep.passed else 'FAIL'}"], 0 if rep.passed else 1)


def cmd_perfectness(args):
    g = _load_group(args.group)
    rep = sec.perfectness_check(g)
    payload = {"group": g.name, **rep.to_json()}
    return Outcome(payload, [f"{g.name}: anabelian={rep.anabelian} perfect={rep.perfect} "
                             f"{'PASS' if rep.passed else 'FAIL'} (converse holds: {rep.converse_holds})"],
                   0 if rep.passed else 1)


def cmd_a5_check(args):
    g = _load_group(args.group)
    rep = sec.a5_corollary_check(g)
    payload = {"group": g.name, **rep.to_json()}
    return Outcome(payload, [f"{g.name}: nonabelian simple sections {rep.nonabelian_sections} "
                             f"{'PASS' if rep.passed else 'FAIL'}"], 0 if rep.passed else 1)


def cmd_section(args):
    target, ambient = _load_group(args.target), _load_group(args.ambient)
    w = sec.is_section(target, ambient)
    payload = {"target": target.name, "ambient": ambient.name, "pass": w is not None,
               "witness": None if w is None else w.to_json()}
    line = (f"{target.name} is a section of {ambient.name}: C of order {w.c.order()}, D of order {w.d.order()}"
            if w else f"{target.name} is not a section of {ambient.name}")
    return Outcome(payload, [line])


# -- tower verbs -------------------------------------------------------------------


def _tower_head(t: tw.Tower) -> dict:
    return {"tower": t.name, "levels": len(t), "orders": [g.order() for g in t.levels]}


def cmd_tower_validate(args):
    t = _load_tower(args.tower, args.levels)
    rep = tw.validate(t)
    line = "valid" if rep.valid else f"{rep.error}({rep.level})"
    return Outcome({"tower": t.name, **rep.to_json()}, [f"{t.name}: {line}"], 0 if rep.valid else 1)


def cmd_tower_factors(args):
    t = _load_tower(args.tower, args.levels)
    tw.check(t)
    prof = tw.profile(t)
    payload = {**_tower_head(t), "family": None if t.family is None else t.family.describe(),
               "profile": prof.to_json()}
    rows = [(s, prof.counts[s], prof.trace[s]) for s in prof.types()]
    return Outcome(payload, [f"{t.name}"] + _table(rows, ("type", "multiplicity", "trace")))


def cmd_tower_series(args):
    t = _load_tower(args.tower, args.levels)
    tw.check(t)
    s = tw.induced_series(t, args.seed)
    blocks = [{"level": lvl, "factors": [str(st.factor) for st in steps]} for lvl, steps in s.blocks]
    acc = [tw.accumulate(s, b).to_json() for b in range(len(s.blocks))]
    lines = [f"{t.name}, seed {args.seed}"] + [
        f"block {i} (level {b['level']}): {', '.join(b['factors']) or '-'}" for i, b in enumerate(blocks)]
    return Outcome({**_tower_head(t), "seed": args.seed, "blocks": blocks, "accumulated": acc}, lines)


def cmd_tower_match(args):
    t = _load_tower(args.tower, args.levels)
    tw.check(t)
    trials = max(args.trials, 2)
    reports = [tw.match_series(t, args.seed, args.seed + k) for k in range(1, trials)]
    passed = all(r.passed for r in reports)
    payload = {**_tower_head(t), "pass": passed, "pairs": [r.to_json() for r in reports]}
    lines = [f"{t.name}: seeds {r.seeds} {'PASS' if r.passed else 'FAIL at ' + str(r.first_divergence)}"
             for r in reports]
    return Outcome(payload, lines, 0 if passed else 1)


def _classification(args, fn, label):
    t = _load_tower(args.tower, args.levels)
    tw.check(t)
    c = fn(t)
    note = " (prefix only)" if c.prefix_relative else ""
    return Outcome({"tower": t.name, **c.to_json()}, [f"{t.name}: {label} = {str(c.value).lower()}{note}"])


def cmd_tower_prosolvable(args):
    return _classification(args, tw.prosolvable, "prosolvable")


def cmd_tower_anabelian(args):
    return _classification(args, tw.anabelian, "anabelian")


def cmd_tower_intersect(args):
    t = _load_tower(args.tower, args.levels)
    tw.check(t)
    h = tw.parse_closed_subgroup(_load_json(args.subgroup), t)
    rep = tw.intersect_series(tw.induced_series(t, args.seed), h)
    lines = [f"{t.name}: {'PASS' if rep.passed else 'FAIL'} (accessible={rep.accessible})"] + _table(
        [(s["factor"], s["status"]) for s in rep.steps], ("factor", "intersection"))
    return Outcome({"tower": t.name, "seed": args.seed, **rep.to_json()}, lines, 0 if rep.passed else 1)


COMMANDS = {
    "factors": cmd_factors, "series": cmd_series, "jh-verify": cmd_jh_verify, "identify": cmd_identify,
    "solvable": cmd_solvable, "radical-witness": cmd_radical_witness, "sections": cmd_sections,
    "power-cover": cmd_power_cover, "perfectness": cmd_perfectness, "a5-check": cmd_a5_check,
    "section": cmd_section, "tower-validate": cmd_tower_validate, "tower-factors": cmd_tower_factors,
    "tower-series": cmd_tower_series, "tower-match": cmd_tower_match,
    "tower-prosolvable": cmd_tower_prosolvable, "tower-anabelian": cmd_tower_anabelian,
    "tower-intersect": cmd_tower_intersect,
}

_OPTIONS = {
    "seed": dict(type=int, default=0, help="seed for series tie-breaking (default 0)"),
    "trials": dict(type=int, default=10, help="number of seeds to try"),
    "q": dict(type=int, default=2, help="power exponent q"),
    "m": dict(type=int, default=3, help="number of q-th power factors"),
    "levels": dict(type=int, default=None, help="use only the first N tower levels"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="profinite-jh",
                                     description="Composition factors of finite and profinite groups.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, positionals, options):
        p = sub.add_parser(verb)
        for name in positionals:
            p.add_argument(name)
        for opt in options:
            p.add_argument(f"--{opt}", **_OPTIONS[opt])
        p.add_argument("--json", action="store_true", help="machine-readable output")

    for verb, opts in GROUP_VERBS.items():
        add(verb, ["group"], opts)
    for verb, opts in TOWER_VERBS.items():
        add(verb, ["tower"], opts)
    add("tower-intersect", ["tower", "subgroup"], ["seed", "levels"])
    add("section", ["target", "ambient"], [])
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        outcome = COMMANDS[args.verb](args)
    except (ParseError, BoundExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        out.write(json.dumps(outcome.payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(outcome.lines) + "\n")
    return outcome.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
