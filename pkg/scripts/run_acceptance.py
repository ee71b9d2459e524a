#!/usr/bin/env python3
"""Run the acceptance suite and save the JSON report.

    python3 scripts/run_acceptance.py --out report.json --threads 4
"""
import argparse
import sys
import time

from qvol.acceptance import Settings, canonical_json, digest
from qvol.cli import run_verify_all


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=None, help="where to write the JSON report")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--criteria", default="1-13", help="e.g. 1,2,5 or 1-13")
    ap.add_argument("--max-size", type=int, default=8)
    args = ap.parse_args()

    numbers = []
    for part in args.criteria.split(","):
        lo, _, hi = part.partition("-")
        numbers += range(int(lo), int(hi or lo) + 1)
    start = time.monotonic()
    reps = run_verify_all(Settings(max_size=args.max_size), numbers, args.threads,
                          emit=lambda r: print(r.summary(), flush=True))
    print(f"{time.monotonic() - start:.1f}s, digest {digest(reps)[:16]}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(canonical_json(reps))
    return 0 if all(r.passed for r in reps) else 1


if __name__ == "__main__":
    sys.exit(main())
