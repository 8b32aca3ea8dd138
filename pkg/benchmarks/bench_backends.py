#!/usr/bin/env python3
"""Time the gmpy2 and pure-Python rational backends on the same workloads.

Each backend runs in a child process because the backend is fixed at import
time by QCOMMUTE_PURE_PYTHON.  Outputs are hashed so the two runs can be
checked for identical results, not just timed.

    python benchmarks/bench_backends.py [--repeat 3] [--json out.json]
"""

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "matrix n=3 deg<=6": "operator_matrix(sample_generic_point(3, 6, 1), Truncation.total(6)).to_dict()",
    "matrix n=4 box(2,2,2)": "operator_matrix(sample_generic_point(4, 6, 1), Truncation.box((2, 2, 2))).to_dict()",
    "eigen n=3 (1,1) deg<=8": "eigenfunction((1, 1), sample_generic_point(3, 8, 1), Truncation.total(8)).to_dict()",
    "theorem2 size 16": "check_theorem2(sample_generic_point(2, 15, 1), 16).to_dict()",
}

CHILD = r"""
import hashlib, json, sys, time
from qcommute import BACKEND
from qcommute.eigen import eigenfunction
from qcommute.qkernel import sample_generic_point
from qcommute.series import Truncation
from qcommute.verify.exact import check_theorem2
from qcommute.xform import operator_matrix
expr, repeat = sys.argv[1], int(sys.argv[2])
best = None
for _ in range(repeat):
    t0 = time.perf_counter()
    out = eval(expr)
    dt = time.perf_counter() - t0
    best = dt if best is None else min(best, dt)
digest = hashlib.sha256(json.dumps(out, sort_keys=True).encode()).hexdigest()[:16]
print(json.dumps({"backend": BACKEND, "seconds": best, "digest": digest}))
"""


def run_child(expr, repeat, pure):
    env = dict(os.environ)
    env["QCOMMUTE_PURE_PYTHON"] = "1" if pure else "0"
    proc = subprocess.run(
        [sys.executable, "-c", CHILD, expr, str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write results here as well")
    ap.add_argument("--only", help="substring filter on workload names")
    args = ap.parse_args(argv)

    rows = []
    start = time.perf_counter()
    for name, expr in WORKLOADS.items():
        if args.only and args.only not in name:
            continue
        fast = run_child(expr, args.repeat, pure=False)
        slow = run_child(expr, args.repeat, pure=True)
        rows.append(
            {
                "workload": name,
                "gmpy2_s": fast["seconds"],
                "fraction_s": slow["seconds"],
                "speedup": slow["seconds"] / fast["seconds"] if fast["seconds"] else float("inf"),
                "same_result": fast["digest"] == slow["digest"],
                "fast_backend": fast["backend"],
            }
        )

    print(f"{'workload':<26}{'gmpy2 [s]':>11}{'Fraction [s]':>14}{'speedup':>9}  same")
    for r in rows:
        print(
            f"{r['workload']:<26}{r['gmpy2_s']:>11.3f}{r['fraction_s']:>14.3f}{r['speedup']:>8.1f}x  {r['same_result']}"
        )
        if r["fast_backend"] != "gmpy2":
            print("  (gmpy2 not importable; both runs used Fraction)")
    print(f"total wall time {time.perf_counter() - start:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0 if all(r["same_result"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
