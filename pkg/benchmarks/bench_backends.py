#!/usr/bin/env python3
"""Compare the gmpy2 and pure-Python rational backends.

Runs the same exact workloads in subprocesses with BINRAM_BACKEND set, so
each measurement uses a cleanly initialized backend, and prints a small
table of wall-clock times and speedups.

Usage: python benchmarks/bench_backends.py [--n-max N] [--repeat R]
"""

import argparse
import os
import subprocess
import sys
import textwrap

WORKLOADS = {
    "tail-sign scan": """
        from binram.exactcore import p_diff_sign
        for n in range(2, {n_max} + 1):
            for b in range(1, n):
                p_diff_sign(b, n)
    """,
    "z evaluation": """
        from binram.exactcore import BinomialSpec, ramanujan_z
        for n in range(2, {n_max} + 1):
            for b in range(1, n):
                ramanujan_z(BinomialSpec(b, n))
    """,
    "kernel integrals": """
        from binram.exactcore import BinomialSpec
        from binram.kernel import integrate_g_delta
        for n in range(2, {n_max} + 1):
            for b in range(1, n):
                integrate_g_delta(BinomialSpec(b, n))
    """,
}


def run_once(backend: str, body: str) -> float:
    script = textwrap.dedent(
        f"""
        import time
        t0 = time.perf_counter()
        {textwrap.indent(textwrap.dedent(body), "        ").strip()}
        print(time.perf_counter() - t0)
        """
    )
    env = dict(os.environ, BINRAM_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env
    )
    if proc.returncode != 0:
        raise RuntimeError(f"{backend} workload failed:\n{proc.stderr}")
    return float(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=120)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"n_max = {args.n_max}, best of {args.repeat}\n")
    print(f"{'workload':<20} {'gmpy2 (s)':>10} {'fractions (s)':>14} {'speedup':>8}")
    for name, template in WORKLOADS.items():
        body = template.format(n_max=args.n_max)
        times = {
            backend: min(run_once(backend, body) for _ in range(args.repeat))
            for backend in ("gmpy2", "fractions")
        }
        speedup = times["fractions"] / times["gmpy2"]
        print(f"{name:<20} {times['gmpy2']:>10.3f} {times['fractions']:>14.3f} "
              f"{speedup:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
