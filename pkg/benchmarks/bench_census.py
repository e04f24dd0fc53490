#!/usr/bin/env python3
"""Times the census engine on the pure-Python and compiled kernels.

Runs each parameter set in two subprocesses, one with SMARPOLY_PURE=1 and
one without, asserts the reports agree, and prints a speedup table.
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    (2, 14, "1", "standard"),
    (2, 17, "1", "standard"),
    (2, 20, "1", "standard"),
    (3, 9, "2", "standard"),
    (3, 11, "1", "tight"),
    (4, 7, "1", "standard"),
    (5, 7, "2", "standard"),
    (9, 5, "1", "tight"),
]

PROG = r"""
import json, sys, time
from fractions import Fraction
from smarpoly.census import CensusParams, run_census, KERNEL_NAME
from smarpoly.gf import field_from_q
q, n, r, mode, threads = json.loads(sys.argv[1])
params = CensusParams(field_from_q(q), n, Fraction(r), mode)
t0 = time.perf_counter()
rep = run_census(params, shards=max(1, threads), threads=threads)
elapsed = time.perf_counter() - t0
d = rep.to_dict(); d.pop("wall_ms"); d.pop("kernel"); d.pop("shards")
print(json.dumps({"kernel": KERNEL_NAME, "seconds": elapsed, "report": d},
                 sort_keys=True))
"""


def run_case(case, threads, pure):
    env = dict(os.environ)
    env.pop("SMARPOLY_PURE", None)
    if pure:
        env["SMARPOLY_PURE"] = "1"
    payload = json.dumps(list(case) + [threads])
    out = subprocess.run([sys.executable, "-c", PROG, payload],
                         capture_output=True, text=True, env=env)
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--quick", action="store_true",
                    help="skip the largest cases")
    args = ap.parse_args()
    cases = [c for c in CASES if not (args.quick and c[0] ** c[1] > 2 ** 17)]

    print(f"{'case':<28} {'total':>9} {'pure':>9} {'compiled':>9} {'speedup':>8}")
    for case in cases:
        q, n, r, mode = case
        pure = run_case(case, args.threads, pure=True)
        comp = run_case(case, args.threads, pure=False)
        if pure["report"] != comp["report"]:
            print(f"q={q} n={n}: KERNELS DISAGREE", file=sys.stderr)
            return 1
        if comp["kernel"] != "compiled":
            print("compiled kernel unavailable; timings below are pure only",
                  file=sys.stderr)
        total = q ** n
        ratio = pure["seconds"] / comp["seconds"] if comp["seconds"] else float("inf")
        label = f"q={q} n={n} r={r} {mode}"
        print(f"{label:<28} {total:>9} {pure['seconds']:>8.2f}s "
              f"{comp['seconds']:>8.2f}s {ratio:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
