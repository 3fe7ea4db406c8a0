"""Run the finite Jordan-Hölder check over the group corpus and print a table.

Usage: python3 scripts/jh_corpus.py [--seeds 50] [--json]
"""
import argparse
import json
import time

from profinite_jh.corpus import finite_groups
from profinite_jh.series import is_solvable, jh_verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    start = time.perf_counter()
    for g in finite_groups():
        t0 = time.perf_counter()
        rep = jh_verify(g, args.seeds)
        rows.append({**rep.to_json(), "solvable": is_solvable(g), "seconds": round(time.perf_counter() - t0, 3)})
    total = time.perf_counter() - start

    if args.json:
        print(json.dumps({"seeds": args.seeds, "groups": rows}, indent=2, sort_keys=True))
        return
    print(f"{'group':<10} {'order':>6} {'chains':>6} {'pass':>5} {'solv':>5}  factors")
    for r in rows:
        factors = ", ".join(f"{f['type']}:{f['count']}" for f in r["factors"])
        print(f"{r['group']:<10} {r['order']:>6} {r['chains_found']:>6} {str(r['pass']):>5} "
              f"{str(r['solvable']):>5}  {{{factors}}}")
    print(f"\n{len(rows)} groups, {sum(r['pass'] for r in rows)} pass, {total:.1f}s")


if __name__ == "__main__":
    main()
