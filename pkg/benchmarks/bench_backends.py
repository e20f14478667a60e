"""Compare the gmpy2 and Fraction rational backends on a fixed engine workload.

Each backend runs in a fresh interpreter because the choice is made at
import time from SOFABOUND_RATIONAL.

    python benchmarks/bench_backends.py [--iterations N] [--profile NAME]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from sofabound import BACKEND
from sofabound.profile import load_profile
from sofabound.bnb import run
p = load_profile(sys.argv[1])
t0 = time.perf_counter()
cert = run(p.spec(), p.config(target_upper=None, max_iterations=int(sys.argv[2])))
dt = time.perf_counter() - t0
print(json.dumps({"backend": BACKEND, "seconds": dt, "iterations": cert.iterations,
                  "upper": str(cert.upper), "lower": str(cert.lower)}))
"""


def measure(backend, profile, iterations):
    env = dict(os.environ, SOFABOUND_RATIONAL=backend)
    out = subprocess.run([sys.executable, "-c", WORKER, profile, str(iterations)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iterations", type=int, default=300)
    ap.add_argument("--profile", default="example-30-45-60")
    args = ap.parse_args()
    rows = [measure(b, args.profile, args.iterations) for b in ("gmpy2", "fraction")]
    for r in rows:
        print(f"{r['backend']:>9}: {r['iterations']} iterations in {r['seconds']:.2f}s "
              f"({r['iterations'] / r['seconds']:.1f} it/s)")
    # both backends are exact, so the bounds must agree to the last digit
    same = rows[0]["upper"] == rows[1]["upper"] and rows[0]["lower"] == rows[1]["lower"]
    print(f"identical certificates: {same}; speedup gmpy2/fraction: {rows[1]['seconds'] / rows[0]['seconds']:.2f}x")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
