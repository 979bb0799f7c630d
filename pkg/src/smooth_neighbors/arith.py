"""Exact integer services: prime tables, smoothness, factoring, divisors.

Everything works on plain Python ints, so there is no overflow anywhere.
Factoring is trial division by a cached prime table followed by Brent's
variant of Pollard rho on whatever cofactor is left.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate

import numpy as np

Factorization = list[tuple[int, int]]

TRIAL_LIMIT = 10**6


class FactorizationGaveUp(ArithmeticError):
    """The factoring effort cap was hit; the value must be treated as unknown."""

    def __init__(self, n: int, cofactor: int):
        super().__init__(f"could not split cofactor {cofactor} of {n}")
        self.n = n
        self.cofactor = cofactor


@dataclass(frozen=True)
class EffortConfig:
    trial_limit: int = TRIAL_LIMIT
    rho_iterations: int = 200_000
    rho_attempts: int = 20


DEFAULT_EFFORT = EffortConfig()


@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(flags))


def primes_up_to(z: int) -> list[int]:
    """All primes <= z in increasing order."""
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    return list(_sieve(z))


def _primes_le(z: int) -> tuple[int, ...]:
    if z <= TRIAL_LIMIT:
        table = _sieve(TRIAL_LIMIT)
        return table[: bisect_right(table, z)]
    return _sieve(z)


@lru_cache(maxsize=256)
def primorial(z: int) -> int:
    """Product of all primes <= z."""
    return math.prod(_primes_le(z))


@lru_cache(maxsize=8)
def _primorial_prefix(z: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ps = _primes_le(z)
    return ps, tuple(accumulate(ps, lambda a, b: a * b))


def nth_prime_index(p: int) -> int:
    """1-based index of the prime p (2 -> 1, 3 -> 2, ...)."""
    ps = _primes_le(max(p, 2))
    if not ps or ps[-1] != p:
        raise ValueError(f"{p} is not prime")
    return len(ps)


def previous_prime(p: int) -> int | None:
    ps = _primes_le(p - 1) if p > 2 else ()
    return ps[-1] if ps else None


def smooth_part(n: int, z: int) -> tuple[Factorization, int]:
    """Split n into its z-smooth factorization and a cofactor free of primes <= z."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    fac: Factorization = []
    if n == 1 or z < 2:
        return fac, n
    if z <= 10**4 and math.gcd(n, primorial(z)) == 1:
        return fac, n
    for p in _primes_le(z):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            fac.append((p, e))
    if 1 < n <= z:
        # no factor up to sqrt(n) remains, so n is prime
        fac.append((n, 1))
        n = 1
    return fac, n


def smooth_cofactor(n: int, z: int) -> int:
    """What is left of n after dividing out every prime <= z."""
    m = primorial(z) if z >= 2 else 1
    g = math.gcd(n, m)
    while g > 1:
        n //= g
        g = math.gcd(n, g)
    return n


def is_smooth(n: int, z: int) -> bool:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return smooth_cofactor(n, z) == 1


def smooth_lpf(n: int, z: int) -> int | None:
    """Largest prime factor of n if n is z-smooth, else None. Returns 1 for n = 1."""
    if smooth_cofactor(n, z) != 1:
        return None
    if n == 1:
        return 1
    ps, prefix = _primorial_prefix(z)
    # the largest prime factor is the first p whose primorial absorbs n
    lo, hi = 0, len(ps) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if smooth_cofactor_with(n, prefix[mid]) == 1:
            hi = mid
        else:
            lo = mid + 1
    return ps[lo]


def smooth_cofactor_with(n: int, m: int) -> int:
    g = math.gcd(n, m)
    while g > 1:
        n //= g
        g = math.gcd(n, g)
    return n


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = random.Random(n)
        bases = _MR_BASES + tuple(rng.randrange(2, n - 1) for _ in range(16))
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int, max_iter: int) -> int | None:
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    it = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        it += r
        if it > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, effort: EffortConfig) -> int | None:
    r = math.isqrt(n)
    if r * r == n:
        return r
    for c in range(1, effort.rho_attempts + 1):
        d = _brent(n, c, effort.rho_iterations)
        if d is not None and 1 < d < n:
            return d
    return None


def factorint(n: int, effort: EffortConfig = DEFAULT_EFFORT) -> Factorization:
    """Full factorization of n >= 1, sorted by prime."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    fac, rest = smooth_part(n, effort.trial_limit)
    counts = dict(fac)
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m <= effort.trial_limit**2 or is_probable_prime(m):
            # after trial division to L, anything below L^2 is prime
            counts[m] = counts.get(m, 0) + 1
            continue
        d = _split(m, effort)
        if d is None:
            raise FactorizationGaveUp(n, m)
        stack.extend((d, m // d))
    return sorted(counts.items())


def largest_prime_factor(n: int, effort: EffortConfig = DEFAULT_EFFORT) -> int:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return factorint(n, effort)[-1][0]


def radical(fac: Factorization) -> int:
    return math.prod(p for p, _ in fac)


def multiply(*facs: Factorization) -> Factorization:
    counts: dict[int, int] = {}
    for fac in facs:
        for p, e in fac:
            counts[p] = counts.get(p, 0) + e
    return sorted(counts.items())


def evaluate(fac: Factorization) -> int:
    return math.prod(p**e for p, e in fac)


def divisor_count(fac: Factorization) -> int:
    return math.prod(e + 1 for _, e in fac)


def divisors(fac: Factorization) -> list[int]:
    """All divisors of the factored number, increasing."""
    divs = [1]
    for p, e in fac:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    divs.sort()
    return divs
