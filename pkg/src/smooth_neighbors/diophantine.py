"""Structure of the merge equation b(B+1)(beta+1) = (b+1)B beta.

With g = gcd(b, B), b = g*u, B = g*v, every solution factors as

    beta = h*u,  beta + 1 = v*x,  B + 1 = h*y,

and satisfies hy - gv = vx - hu = xy - gu = 1 and uh + gv = hv - 1.
Parent pairs of a fixed beta correspond one-to-one with divisor pairs
u | beta, v | beta + 1, u < v.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .arith import (DEFAULT_EFFORT, EffortConfig, Factorization,
                    _primorial_prefix, divisors, factorint, smooth_cofactor_with)
from .closure import merge


class NotAMerge(ValueError):
    pass


class NoPositiveSolution(ValueError):
    pass


@dataclass(frozen=True)
class MergeWitness:
    b: int
    B: int
    beta: int
    g: int
    h: int
    u: int
    v: int
    x: int
    y: int

    def check(self) -> list[str]:
        """Names of the relations that fail (empty when the witness is sound)."""
        rel = {
            "b = g*u": self.b == self.g * self.u,
            "B = g*v": self.B == self.g * self.v,
            "beta = h*u": self.beta == self.h * self.u,
            "beta+1 = v*x": self.beta + 1 == self.v * self.x,
            "B+1 = h*y": self.B + 1 == self.h * self.y,
            "gcd(u,v) = 1": math.gcd(self.u, self.v) == 1,
            "hy - gv = 1": self.h * self.y - self.g * self.v == 1,
            "vx - hu = 1": self.v * self.x - self.h * self.u == 1,
            "xy - gu = 1": self.x * self.y - self.g * self.u == 1,
            "uh + gv = hv - 1": self.u * self.h + self.g * self.v == self.h * self.v - 1,
        }
        return [name for name, ok in rel.items() if not ok]


@dataclass(frozen=True)
class DivisorPair:
    u: int
    v: int


def witness_from_pair(b: int, B: int) -> MergeWitness:
    beta = merge(b, B, 1)
    if beta is None:
        raise NotAMerge(f"({b}, {B}) does not merge")
    g = math.gcd(b, B)
    u, v = b // g, B // g
    h = beta // u
    return MergeWitness(b, B, beta, g, h, u, v, (beta + 1) // v, (B + 1) // h)


def pair_from_hv(h: int, v: int) -> MergeWitness:
    """The unique (b, B, beta) for coprime (h, v), via u = -1/h mod v."""
    if h < 1 or v < 2 or math.gcd(h, v) != 1:
        raise ValueError(f"need h >= 1, v >= 2, gcd(h, v) = 1; got h={h}, v={v}")
    u = -pow(h, -1, v) % v
    g = (h * (v - u) - 1) // v
    if g < 1:
        raise NoPositiveSolution(f"uh + gv = hv - 1 has no positive solution for h={h}, v={v}")
    b, B, beta = g * u, g * v, h * u
    return MergeWitness(b, B, beta, g, h, u, v, (beta + 1) // v, (B + 1) // h)


def divisor_grid_size(f_beta: Factorization, f_beta1: Factorization) -> int:
    return math.prod(e + 1 for _, e in f_beta) * math.prod(e + 1 for _, e in f_beta1)


def divisor_grid(beta: int, f_beta: Factorization | None = None,
                 f_beta1: Factorization | None = None) -> Iterator[tuple[DivisorPair, int]]:
    """(u, v) with u | beta, v | beta+1, u < v, and the implied g (possibly < 1)."""
    if f_beta is None:
        f_beta = factorint(beta)
    if f_beta1 is None:
        f_beta1 = factorint(beta + 1)
    dv = divisors(f_beta1)
    for u in divisors(f_beta):
        h = beta // u
        for v in dv:
            if v > u:
                # vx - hu = 1 always, so g = h - x and b = u*g, B = v*g
                yield DivisorPair(u, v), h - (beta + 1) // v


def parents_from_beta(beta: int, f_beta: Factorization | None = None,
                      f_beta1: Factorization | None = None) -> Iterator[tuple[DivisorPair, int, int]]:
    """Every (b, B) with F(b, B) = beta, in increasing (u, v) order."""
    for pair, g in divisor_grid(beta, f_beta, f_beta1):
        if g >= 1:
            yield pair, pair.u * g, pair.v * g


def _lpf_capped(n: int, ps: tuple[int, ...], prefix: tuple[int, ...], cap_idx: int) -> int | None:
    """Largest prime factor of n if it is at most ps[cap_idx], else None."""
    if smooth_cofactor_with(n, prefix[cap_idx]) != 1:
        return None
    if n == 1:
        return 1
    lo, hi = 0, cap_idx
    while lo < hi:
        mid = (lo + hi) // 2
        if smooth_cofactor_with(n, prefix[mid]) == 1:
            hi = mid
        else:
            lo = mid + 1
    return ps[lo]


def _scan(beta: int, f_beta1: Factorization, us: list[int], prime_cap: int):
    ps, prefix = _primorial_prefix(prime_cap)
    cap_idx = len(ps) - 1
    best: int | None = None
    pairs: list[tuple[int, int]] = []
    dv = divisors(f_beta1)
    for u in us:
        h = beta // u
        for v in dv:
            if v <= u:
                continue
            g = h - (beta + 1) // v
            if g < 1:
                continue
            b, B = u * g, v * g
            worst = 1
            # g carries the only factors of b, B not already in beta, beta+1
            for n in (g, b + 1, B + 1, u, v):
                p = _lpf_capped(n, ps, prefix, cap_idx)
                if p is None:
                    break
                worst = max(worst, p)
            else:
                if best is None or worst < best:
                    best, pairs = worst, [(b, B)]
                    cap_idx = ps.index(worst) if worst > 1 else 0
                elif worst == best:
                    pairs.append((b, B))
    return best, pairs


def min_smoothness_over_parents(beta: int, prime_cap: int = 1000,
                                effort: EffortConfig = DEFAULT_EFFORT,
                                workers: int = 1) -> tuple[int | None, list[tuple[int, int]]]:
    """Least largest-prime-factor of b(b+1)B(B+1) over the parents of beta.

    Pairs that are not prime_cap-smooth are rejected early, as are pairs worse
    than the incumbent.  Returns (None, []) when no parent is prime_cap-smooth.
    """
    f_beta = factorint(beta, effort)
    f_beta1 = factorint(beta + 1, effort)
    us = divisors(f_beta)
    if workers > 1:
        chunks = [us[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, [beta] * workers, [f_beta1] * workers,
                                    chunks, [prime_cap] * workers))
    else:
        results = [_scan(beta, f_beta1, us, prime_cap)]
    found = [r for r in results if r[0] is not None]
    if not found:
        return None, []
    best = min(r[0] for r in found)
    pairs = sorted(p for r in found if r[0] == best for p in r[1])
    return best, pairs


def pair_lpf(b: int, B: int, effort: EffortConfig = DEFAULT_EFFORT) -> int:
    """Largest prime factor of b(b+1)B(B+1)."""
    return max(factorint(n, effort)[-1][0] for n in (b, b + 1, B, B + 1) if n > 1)
