"""The ratio-merge fixpoint engine.

Two members b < B merge into beta when

    b/(b+k) * (B+k)/B == beta/(beta+k).

Writing D = B - b, this happens exactly when D divides b*(b+k), and then
beta = b*(B+k)/D.  The engine uses that divisibility test in its inner loop;
:func:`merge` keeps the literal reduced-fraction formulation and the test
suite checks the two against each other.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import FactorizationGaveUp, largest_prime_factor

# the int64 path needs b + k and B - b to stay representable
INT64_SAFE = 2**62


@dataclass(frozen=True)
class RunLimits:
    max_rounds: int | None = None
    max_members: int | None = None
    wall_time: float | None = None
    max_value: int | None = None

    def __post_init__(self):
        for name in ("max_rounds", "max_members", "wall_time", "max_value"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")


@dataclass
class NeighborSet:
    """A sorted, deduplicated member list together with its smoothness bound."""

    z: int | None
    members: list[int]
    k: int = 1
    complete: bool = True

    def __post_init__(self):
        self.members = sorted(set(self.members))
        self._index = frozenset(self.members)

    def __contains__(self, b: int) -> bool:
        return b in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def without(self, *values: int) -> "NeighborSet":
        drop = set(values)
        return NeighborSet(self.z, [m for m in self.members if m not in drop], self.k, self.complete)


@dataclass
class ClosureTrace:
    rounds: list[tuple[int, list[int]]] = field(default_factory=list)
    provenance: dict[int, tuple[int, int]] = field(default_factory=dict)
    stop_reason: str | None = None


def merge(b: int, B: int, k: int = 1) -> int | None:
    """beta with b/(b+k) * (B+k)/B = beta/(beta+k), or None."""
    if not 1 <= b < B:
        raise ValueError(f"need 1 <= b < B, got b={b}, B={B}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    num, den = b * (B + k), (b + k) * B
    g = math.gcd(num, den)
    n, d = num // g, den // g
    t = d - n
    if t <= 0 or k % t:
        return None
    beta = n * k // t
    if b * (B + k) * (beta + k) != (b + k) * B * beta:
        return None
    return beta


def mixed_merge_even(b: int, B: int) -> tuple[int, int] | None:
    """Difference-2 solution from two difference-1 members.

    Solves b/(b+1) * (B+1)/B = beta/(beta+2).
    """
    if not 1 <= b < B:
        raise ValueError(f"need 1 <= b < B, got b={b}, B={B}")
    num, den = b * (B + 1), (b + 1) * B
    g = math.gcd(num, den)
    n, d = num // g, den // g
    if d - n == 2:
        beta = n
    elif d - n == 1:
        beta = 2 * n
    else:
        return None
    if b * (B + 1) * (beta + 2) != (b + 1) * B * beta:
        return None
    return beta, 2


def _hits_bigint(lo_vals: Sequence[int], others: Sequence[int], k: int):
    """Yield (b, B, beta) for merging pairs between lo_vals and others."""
    for f in lo_vals:
        for m in others:
            if m == f:
                continue
            b, B = (f, m) if f < m else (m, f)
            D = B - b
            if (b * (b + k)) % D == 0:
                yield b, B, b * (B + k) // D


def _hits_int64(f_arr: np.ndarray, o_arr: np.ndarray, k: int):
    out = []
    for f in f_arr:
        lo = np.minimum(o_arr, f)
        D = np.abs(o_arr - f)
        mask = D > 0
        lo, D = lo[mask], D[mask]
        # D | lo*(lo+k)  <=>  D/gcd(D, lo) | lo+k
        q = D // np.gcd(D, lo)
        idx = np.flatnonzero((lo + k) % q == 0)
        for i in idx:
            b = int(lo[i])
            d = int(D[i])
            B = b + d
            out.append((b, B, b * (B + k) // d))
    return out


def _pair_hits(frontier: list[int], old: list[int], k: int, workers: int, use_int64: bool):
    """All merging pairs with at least one element in frontier."""
    # pairs frontier x old, plus pairs inside the frontier (each once)
    jobs = []
    nf = len(frontier)
    chunk = max(1, -(-nf // (workers * 4))) if workers > 1 else max(nf, 1)
    for start in range(0, nf, chunk):
        part = frontier[start : start + chunk]
        jobs.append((part, start + len(part)))

    def run(job):
        part, end = job
        hits = []
        if use_int64:
            fa = np.array(part, dtype=np.int64)
            if old:
                hits += _hits_int64(fa, np.array(old, dtype=np.int64), k)
            for i, f in enumerate(part):
                rest = frontier[end - len(part) + i + 1 :]
                if rest:
                    hits += _hits_int64(np.array([f], dtype=np.int64), np.array(rest, dtype=np.int64), k)
        else:
            hits += _hits_bigint(part, old, k)
            for i, f in enumerate(part):
                hits += _hits_bigint([f], frontier[end - len(part) + i + 1 :], k)
        return hits

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    for r in results:
        yield from r


def _round(members: set[int], frontier: list[int], k: int, workers: int,
           provenance: dict[int, tuple[int, int]] | None) -> list[int]:
    old = sorted(members.difference(frontier))
    hi = max(members) if members else 0
    use_int64 = hi + k < INT64_SAFE
    found: dict[int, tuple[int, int]] = {}
    for b, B, beta in _pair_hits(frontier, old, k, workers, use_int64):
        if beta in members:
            continue
        # keep the smallest producing pair so provenance is schedule independent
        prev = found.get(beta)
        if prev is None or (b, B) < prev:
            found[beta] = (b, B)
    if provenance is not None:
        provenance.update(found)
    return sorted(found)


def closure_round(current: NeighborSet, frontier: Iterable[int], workers: int = 1) -> list[int]:
    """New betas from pairs of current members touching the frontier."""
    fr = sorted(set(frontier))
    missing = [f for f in fr if f not in current]
    if missing:
        raise ValueError(f"frontier values not in current set: {missing[:5]}")
    return _round(set(current.members), fr, current.k, workers, None)


def infer_bound(seed: Iterable[int], k: int = 1) -> int | None:
    """Largest prime factor over b*(b+k) for the seeds (the bound they certify)."""
    best = 1
    for b in seed:
        for n in (b, b + k):
            if n > 1:
                try:
                    best = max(best, largest_prime_factor(n))
                except FactorizationGaveUp:
                    return None
    return best if best > 1 else None


@dataclass
class ClosureState:
    """Everything needed to continue a run from a round boundary."""

    k: int
    z: int | None
    round_index: int
    members: list[int]
    frontier: list[int]
    provenance: dict[int, tuple[int, int]]


def delta(
    seed: Iterable[int],
    k: int = 1,
    limits: RunLimits | None = None,
    *,
    z: int | None = None,
    workers: int = 1,
    provenance: bool = True,
    resume: ClosureState | None = None,
    on_round: Callable[[ClosureState, list[int]], None] | None = None,
) -> tuple[NeighborSet, ClosureTrace]:
    """Least superset of seed closed under merge, by frontier iteration.

    If a limit trips first, the returned set is flagged ``complete=False`` and
    ``trace.stop_reason`` names the limit.
    """
    limits = limits or RunLimits()
    trace = ClosureTrace()
    if resume is not None:
        k, z = resume.k, resume.z
        members = set(resume.members)
        frontier = sorted(resume.frontier)
        round_index = resume.round_index
        trace.provenance = dict(resume.provenance)
    else:
        seeds = sorted(set(seed))
        if not seeds or seeds[0] < 1:
            raise ValueError("seed must be a nonempty set of positive integers")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if z is None:
            z = infer_bound(seeds, k)
        members = set(seeds)
        frontier = seeds
        round_index = 0
    prov = trace.provenance if provenance else None
    t0 = time.monotonic()

    while frontier:
        if limits.max_rounds is not None and round_index >= limits.max_rounds:
            trace.stop_reason = "max_rounds"
            break
        if limits.wall_time is not None and time.monotonic() - t0 > limits.wall_time:
            trace.stop_reason = "wall_time"
            break
        new = _round(members, frontier, k, workers, prov)
        if limits.max_value is not None and new and new[-1] > limits.max_value:
            trace.stop_reason = "max_value"
            new = [b for b in new if b <= limits.max_value]
        round_index += 1
        members.update(new)
        trace.rounds.append((round_index, new))
        frontier = new
        if on_round is not None:
            state = ClosureState(k, z, round_index, sorted(members), frontier,
                                 trace.provenance)
            on_round(state, new)
        if trace.stop_reason:
            break
        if limits.max_members is not None and len(members) > limits.max_members:
            trace.stop_reason = "max_members"
            break

    if prov is not None:
        for b in list(prov):
            if b not in members:
                del prov[b]
    done = not frontier and trace.stop_reason is None
    if trace.stop_reason == "max_value":
        done = False
    return NeighborSet(z, list(members), k, complete=done), trace


def even_search(members: Sequence[int], workers: int = 1) -> list[tuple[int, int, int]]:
    """Difference-2 solutions from pairs of a difference-1 member set.

    Returns sorted (beta, b, B) with the smallest producing pair per beta.
    """
    vals = sorted(set(members))
    found: dict[int, tuple[int, int]] = {}
    hi = vals[-1] if vals else 0
    # D | 2b(b+1)  <=>  beta = 2b(B+1)/D solves the mixed equation
    if hi + 2 < INT64_SAFE // 2:
        arr = np.array(vals, dtype=np.int64)
        for i in range(len(vals) - 1):
            b = vals[i]
            D = arr[i + 1 :] - b
            q = D // np.gcd(D, 2 * b)
            for j in np.flatnonzero((b + 1) % q == 0):
                d = int(D[j])
                B = b + d
                beta = 2 * b * (B + 1) // d
                if beta not in found or (b, B) < found[beta]:
                    found[beta] = (b, B)
    else:
        for i, b in enumerate(vals):
            for B in vals[i + 1 :]:
                d = B - b
                if (2 * b * (b + 1)) % d == 0:
                    beta = 2 * b * (B + 1) // d
                    if beta not in found or (b, B) < found[beta]:
                        found[beta] = (b, B)
    return sorted((beta, b, B) for beta, (b, B) in found.items())
