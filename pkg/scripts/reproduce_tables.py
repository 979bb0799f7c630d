#!/usr/bin/env python3
"""Compute z_p = delta(1..p) for primes p <= P and write the desk-scale tables.

Outputs in --out-dir:
  z<p>.txt                member files
  growth.csv              n, prime, new_members
  runs.csv                p, h=2..h=7 (p-rows of the longest-run table)
  largest.csv             q, b over z_P
  histogram.csv           log-histogram of z_P
  abc_max.csv             maximally smooth triples up to C = --abc-limit
"""
import argparse
import time
from pathlib import Path

from smooth_neighbors.arith import primes_up_to
from smooth_neighbors.cli import main as cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-prime", type=int, default=41)
    ap.add_argument("--out-dir", default="tables")
    ap.add_argument("--abc-limit", type=int, default=10**5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    files = []
    for p in primes_up_to(args.max_prime):
        f = out / f"z{p}.txt"
        if not f.exists():
            t0 = time.time()
            cli(["closure", "--seed", f"1..{p}", "--workers", str(args.workers), "--out", str(f)])
            print(f"  z{p} in {time.time() - t0:.1f}s")
        files.append(f"{p}={f}")

    last = files[-1].split("=", 1)[1]
    cli(["analyze", "growth", "--members", *files, "--out", str(out / "growth.csv")])
    cli(["analyze", "runs", "--members", *files, "--out", str(out / "runs.csv")])
    cli(["analyze", "largest", "--members", last, "--out", str(out / "largest.csv")])
    cli(["analyze", "histogram", "--members", last, "--out", str(out / "histogram.csv")])
    cli(["analyze", "abc-max", "--limit", str(args.abc_limit), "--out", str(out / "abc_max.csv")])
    print(f"tables written to {out}/")


if __name__ == "__main__":
    main()
