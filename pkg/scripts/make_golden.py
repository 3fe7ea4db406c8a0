"""Regenerate the CLI golden files under tests/golden.

Usage: python3 scripts/make_golden.py [--check]

With --check nothing is written; the matrix is run and compared with the
stored files (exit 1 on any difference).
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import golden_matrix  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args()
    start = time.perf_counter()
    if not args.check:
        golden_matrix.write_inputs()
    results = golden_matrix.run_matrix()
    elapsed = time.perf_counter() - start
    if args.check:
        bad = golden_matrix.compare(results)
        print(f"{len(results)} commands in {elapsed:.1f}s, {len(bad)} differ")
        for key in bad:
            print("  differs:", key)
        sys.exit(1 if bad else 0)
    golden_matrix.write_expected(results)
    codes = {}
    for code, _ in results.values():
        codes[code] = codes.get(code, 0) + 1
    print(f"wrote {len(results)} golden reports in {elapsed:.1f}s; exit codes {dict(sorted(codes.items()))}")


if __name__ == "__main__":
    main()
