#!/usr/bin/env python3
"""Resumable long run of delta(1..p), e.g. z197 and z199 (many CPU hours).

Checkpoints after every round into --work-dir; rerunning the same command
picks up from the last completed round.  When both z<prev> and z<p> are
complete, the straggler and largest-per-prime tables are written too, and
the slow acceptance tests can reuse the files:

    SMOOTH_NEIGHBORS_Z197=work/z197.txt SMOOTH_NEIGHBORS_Z199=work/z199.txt \\
        pytest -m slow tests/test_acceptance.py
"""
import argparse
from pathlib import Path

from smooth_neighbors.arith import previous_prime
from smooth_neighbors.cli import main as cli


def run_closure(p, work, workers):
    out = work / f"z{p}.txt"
    cp = work / f"z{p}.checkpoint.json"
    argv = ["closure", "--workers", str(workers), "--checkpoint", str(cp), "--out", str(out)]
    argv += ["--resume"] if cp.exists() else ["--seed", f"1..{p}"]
    code = cli(argv)
    if code != 0:
        raise SystemExit(f"closure for p={p} exited with {code}")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prime", type=int, default=199)
    ap.add_argument("--work-dir", default="work")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    work = Path(args.work_dir)
    work.mkdir(parents=True, exist_ok=True)

    prev = previous_prime(args.prime)
    old = run_closure(prev, work, args.workers)
    new = run_closure(args.prime, work, args.workers)
    cli(["analyze", "stragglers", "--members", str(old), str(new),
         "--out", str(work / f"stragglers_{prev}_{args.prime}.csv")])
    cli(["analyze", "largest", "--members", str(new), "--out", str(work / f"largest_{args.prime}.csv")])
    cli(["analyze", "histogram", "--members", str(new), "--out", str(work / f"histogram_{args.prime}.csv")])


if __name__ == "__main__":
    main()
