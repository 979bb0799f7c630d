"""Reporting computations over member sets and ABC triples."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import mpmath
import numpy as np

from .arith import (DEFAULT_EFFORT, EffortConfig, FactorizationGaveUp, factorint,
                    multiply, nth_prime_index, primes_up_to, radical, smooth_lpf)
from .closure import NeighborSet

# primes p <= 41 whose z_p equals the full set of p-smooth neighbors
COMPLETE_BOUNDS = frozenset(p for p in primes_up_to(41) if p not in (7, 41))


class MissingPrime(ValueError):
    pass


def log_histogram(s: NeighborSet | Sequence[int], bins: int = 50):
    """Histogram of natural logs of the members, with mean and sample stddev."""
    members = list(s)
    if not members:
        raise ValueError("empty member set")
    logs = np.array([math.log(b) for b in members])
    counts, edges = np.histogram(logs, bins=bins)
    sd = float(logs.std(ddof=1)) if len(logs) > 1 else 0.0
    return edges.tolist(), counts.tolist(), float(logs.mean()), sd


def growth_by_prime(results: Mapping[int, NeighborSet | Sequence[int]]) -> list[tuple[int, int]]:
    """(n, |z_{p_n}| - |z_{p_{n-1}}|) for consecutive primes present in results."""
    ps = sorted(results)
    if not ps:
        return []
    idx = [nth_prime_index(p) for p in ps]
    for a, b in zip(idx, idx[1:]):
        if b != a + 1:
            raise MissingPrime(f"no set for the prime between indices {a} and {b}")
    return [(i, len(results[p]) - len(results[q])) for q, p, i in zip(ps, ps[1:], idx[1:])]


def neighbor_lpf(b: int, z: int | None = None, effort: EffortConfig = DEFAULT_EFFORT) -> int:
    """Largest prime factor of b(b+1); uses cheap smooth division when z is known."""
    if z is not None:
        p = smooth_lpf(b * (b + 1), z)
        if p is not None:
            return p
    return max(factorint(n, effort)[-1][0] for n in (b, b + 1) if n > 1)


def classify_new_members(old: NeighborSet, new: NeighborSet,
                         effort: EffortConfig = DEFAULT_EFFORT) -> tuple[dict[int, int], list[int]]:
    """Histogram of lpf(b(b+1)) over new minus old; also returns members that could not be factored."""
    counts: dict[int, int] = {}
    gave_up: list[int] = []
    for b in new:
        if b in old:
            continue
        try:
            q = neighbor_lpf(b, new.z, effort)
        except FactorizationGaveUp:
            gave_up.append(b)
            continue
        counts[q] = counts.get(q, 0) + 1
    return dict(sorted(counts.items())), gave_up


def largest_per_prime(s: NeighborSet) -> list[tuple[int, int]]:
    """(q, largest member b with lpf(b(b+1)) = q) for each q that occurs."""
    best: dict[int, int] = {}
    for b in s:
        q = neighbor_lpf(b, s.z)
        if b > best.get(q, 0):
            best[q] = b
    return sorted(best.items())


@dataclass(frozen=True)
class RunRecord:
    z: int | None
    h: int
    n: int | None
    lower_bound: bool


def longest_runs(s: NeighborSet, h_max: int = 7, z: int | None = None) -> list[RunRecord]:
    """Largest n with n, ..., n+h-1 all z-smooth, for h = 2..h_max.

    A run of h consecutive smooth integers is h-1 consecutive members.  With
    ``z`` given, only members with b(b+1) z-smooth count; that reads p-rows
    off a set computed at a larger bound.
    """
    if h_max < 2:
        raise ValueError("h_max must be >= 2")
    bound = z if z is not None else s.z
    vals = list(s)
    if z is not None:
        vals = [b for b in vals if smooth_lpf(b * (b + 1), z) is not None]
    members = set(vals)
    # run[b] = number of consecutive members starting at b
    run: dict[int, int] = {}
    for b in sorted(vals, reverse=True):
        run[b] = 1 + run.get(b + 1, 0)
    exact = bound in COMPLETE_BOUNDS and s.complete
    out = []
    for h in range(2, h_max + 1):
        starts = [b for b in members if run[b] >= h - 1]
        out.append(RunRecord(bound, h, max(starts) if starts else None, not exact))
    return out


@dataclass(frozen=True)
class AbcTriple:
    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A + self.B != self.C:
            raise ValueError(f"{self.A} + {self.B} != {self.C}")
        if not 1 <= self.A <= self.B:
            raise ValueError("need 1 <= A <= B")
        if math.gcd(self.A, self.B) != 1:
            raise ValueError("A and B must be coprime")


@dataclass(frozen=True)
class AbcMeasures:
    radical: int
    quality: float
    smoothness_index: float
    smoothness_exponent: float
    z: int


def abc_measures(t: AbcTriple, effort: EffortConfig = DEFAULT_EFFORT) -> AbcMeasures:
    fac = multiply(*(factorint(n, effort) for n in (t.A, t.B, t.C)))
    rad = radical(fac)
    z = fac[-1][0]
    logc = math.log(t.C)
    kappa = math.log(z) / math.log(logc) if logc > 1 else math.inf
    return AbcMeasures(rad, logc / math.log(rad), logc / math.log(z), kappa, z)


def _index_cmp(c1: int, z1: int, c2: int, z2: int) -> int:
    """Sign of log c1/log z1 - log c2/log z2, exact on ties."""
    a = math.log(c1) / math.log(z1)
    b = math.log(c2) / math.log(z2)
    if abs(a - b) > 1e-9:
        return 1 if a > b else -1
    # log c1 * log z2 vs log c2 * log z1; equal iff c1^e = z1^f and c2^e = z2^f
    # for the same rational f/e, which we test exactly
    with mpmath.workdps(60):
        x = mpmath.log(c1) / mpmath.log(z1)
        y = mpmath.log(c2) / mpmath.log(z2)
        diff = x - y
        if abs(diff) > mpmath.mpf(10) ** -40:
            return 1 if diff > 0 else -1
        r = Fraction(str(mpmath.nstr(x, 40))).limit_denominator(10**6)
        f, e = r.numerator, r.denominator
        if c1**e == z1**f and c2**e == z2**f:
            return 0
    with mpmath.workdps(400):
        diff = mpmath.log(c1) / mpmath.log(z1) - mpmath.log(c2) / mpmath.log(z2)
        return 1 if diff > 0 else -1 if diff < 0 else 0


def lpf_table(n: int) -> np.ndarray:
    """lpf[m] = largest prime factor of m (lpf[1] = 1)."""
    lpf = np.ones(n + 1, dtype=np.int64)
    for p in primes_up_to(max(2, n)):
        lpf[p::p] = p
    lpf[0] = 0
    return lpf


def maximally_smooth_scan(C_limit: int) -> list[tuple[AbcTriple, float]]:
    """Record triples of smoothness index, scanning (C, A) lexicographically.

    Triples with prime C have index exactly 1, the least possible value;
    they are the baseline and never records.
    """
    if C_limit < 4:
        raise ValueError("C_limit must be >= 4")
    lpf = lpf_table(C_limit)
    rec_c, rec_z = 2, 2  # index 1 baseline
    best = 1.0
    out: list[tuple[AbcTriple, float]] = []
    for C in range(3, C_limit + 1):
        zc = int(lpf[C])
        # a record needs lpf(ABC) < C^(1/best); lpf(C) alone already bounds it
        thresh = C ** (1.0 / best) * (1 + 1e-9)
        if zc > thresh:
            continue
        A = np.arange(1, C // 2 + 1)
        zz = np.maximum(np.maximum(lpf[A], lpf[C - A]), zc)
        cand = np.flatnonzero(zz <= thresh)
        for i in cand:
            a = int(A[i])
            b = C - a
            if a == b or math.gcd(a, b) != 1:
                continue
            z = int(zz[i])
            if _index_cmp(C, z, rec_c, rec_z) > 0:
                rec_c, rec_z = C, z
                best = math.log(C) / math.log(z)
                thresh = C ** (1.0 / best) * (1 + 1e-9)
                out.append((AbcTriple(a, b, C), best))
    return out


def read_triples(path: str | Path) -> list[AbcTriple]:
    """Triples from a text file: 'A B' or 'A B C' per line, blanks and # comments ignored.

    Commas are accepted as separators, so a three-column CSV with a header
    line starting with '#' or a non-numeric first field also loads.
    """
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        parts = line.split()
        if not parts[0].isdigit():
            continue
        A, B = int(parts[0]), int(parts[1])
        C = int(parts[2]) if len(parts) > 2 else A + B
        A, B = min(A, B), max(A, B)
        out.append(AbcTriple(A, B, C))
    return out


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else str(v) for v in row])


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [row for row in r]
