import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from smooth_neighbors.arith import (EffortConfig, FactorizationGaveUp, divisor_count, divisors,
                                    evaluate, factorint, is_probable_prime, is_smooth,
                                    largest_prime_factor, primes_up_to, radical, smooth_lpf,
                                    smooth_part)


def naive_smooth_mask(limit, z):
    """Repeated division by every prime <= z, vectorised; True where n is z-smooth."""
    n = np.arange(limit + 1, dtype=np.int64)
    for p in [q for q in range(2, z + 1) if all(q % r for r in range(2, q))]:
        while True:
            hit = (n % p == 0) & (n > 0)
            if not hit.any():
                break
            n[hit] //= p
    return n == 1


def test_primes_up_to():
    assert primes_up_to(2) == [2]
    assert primes_up_to(13) == [2, 3, 5, 7, 11, 13]
    assert len(primes_up_to(199)) == 46
    with pytest.raises(ValueError):
        primes_up_to(1)


def test_smooth_part_examples():
    assert smooth_part(4374, 7) == ([(2, 1), (3, 7)], 1)
    assert smooth_part(1, 2) == ([], 1)
    assert smooth_part(63927525376, 37) == ([(2, 13), (11, 4), (13, 1)], 41)


def test_is_smooth_examples():
    assert is_smooth(80 * 81, 5)
    assert not is_smooth(82, 5)
    assert is_smooth(1, 2)


@pytest.mark.parametrize("z", [2, 3, 5, 7, 13])
def test_is_smooth_matches_naive_division(z):
    limit = 10**6
    mask = naive_smooth_mask(limit, z)
    got = np.array([False] + [is_smooth(n, z) for n in range(1, limit + 1)])
    assert np.array_equal(got[1:], mask[1:])


def test_smooth_part_reconstructs():
    rng = random.Random(12345)
    for _ in range(10_000):
        n = rng.randrange(1, 2**128)
        z = rng.choice([2, 3, 7, 97, 1000, 10**5])
        fac, cof = smooth_part(n, z)
        assert evaluate(fac) * cof == n
        assert all(p <= z and e >= 1 for p, e in fac)
        assert all(cof % p for p in primes_up_to(min(z, 1000)))


def test_largest_prime_factor_examples():
    assert largest_prime_factor(72) == 3
    assert largest_prime_factor(2 * 25 * 27) == 5
    # 63927525375 = 3^3 5^3 7^7 23; the 41 lives in its neighbor 63927525376
    assert largest_prime_factor(63927525375) == 23
    assert largest_prime_factor(63927525375 * 63927525376) == 41


def test_largest_prime_factor_of_primes():
    for p in primes_up_to(10**4):
        assert largest_prime_factor(p) == p


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=10**18))
def test_factorint_matches_sympy(n):
    assert factorint(n) == sorted(sympy.factorint(n).items())


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=10**30))
def test_factorint_matches_or_gives_up_honestly(n):
    try:
        fac = factorint(n)
    except FactorizationGaveUp as exc:
        # only a genuinely composite cofactor with no small factor may be left over
        assert n % exc.cofactor == 0
        assert not sympy.isprime(exc.cofactor)
        assert min(sympy.factorint(exc.cofactor)) > 10**6
        return
    assert fac == sorted(sympy.factorint(n).items())


def test_factorint_semiprime_beyond_trial_division():
    p, q = sympy.nextprime(10**8), sympy.nextprime(3 * 10**9)
    assert factorint(p * q * 8) == [(2, 3), (p, 1), (q, 1)]


def test_factorint_larger_effort_reaches_further():
    p, q = sympy.nextprime(10**12), sympy.nextprime(3 * 10**13)
    with pytest.raises(FactorizationGaveUp):
        factorint(p * q)
    assert factorint(p * q * 8, EffortConfig(rho_iterations=4_000_000)) == [(2, 3), (p, 1), (q, 1)]


def test_factorint_gives_up_under_tiny_effort():
    p, q = sympy.nextprime(10**15), sympy.nextprime(10**16)
    with pytest.raises(FactorizationGaveUp):
        factorint(p * q, EffortConfig(trial_limit=100, rho_iterations=10, rho_attempts=1))


def test_is_probable_prime_against_sympy():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(2, 10**20)
        assert is_probable_prime(n) == sympy.isprime(n)


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_divisors_count_and_divide(n):
    fac = factorint(n)
    ds = divisors(fac)
    assert len(ds) == divisor_count(fac) == math.prod(e + 1 for _, e in fac)
    assert ds == sorted(ds) and ds[0] == 1 and ds[-1] == n
    assert all(n % d == 0 for d in ds)


def test_divisors_examples():
    assert divisors(factorint(15)) == [1, 3, 5, 15]
    assert len(divisors(factorint(9591468737351909375))) == 1440
    assert len(divisors(factorint(9591468737351909376))) == 5632


@given(st.integers(min_value=1, max_value=10**15), st.sampled_from([2, 5, 13, 41, 199]))
@settings(max_examples=300, deadline=None)
def test_smooth_lpf(n, z):
    fac = factorint(n)
    expected = (fac[-1][0] if fac else 1) if all(p <= z for p, _ in fac) else None
    assert smooth_lpf(n, z) == expected


def test_radical():
    assert radical(factorint(2 * 25 * 27)) == 30
