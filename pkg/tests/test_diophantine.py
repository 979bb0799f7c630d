from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from smooth_neighbors.arith import divisors, factorint, largest_prime_factor
from smooth_neighbors.closure import merge
from smooth_neighbors.diophantine import (NoPositiveSolution, NotAMerge, _scan,
                                          divisor_grid_size, min_smoothness_over_parents,
                                          pair_from_hv, pair_lpf, parents_from_beta,
                                          witness_from_pair)

BETA = 9591468737351909375
ROOT = (285406166331883519, 294159243066390624)


def brute_parents(beta):
    """Solve the merge equation for B given each b < beta."""
    out = []
    for b in range(1, beta):
        num, den = b * (beta + 1), beta - b
        if num % den == 0 and num // den > b:
            out.append((b, num // den))
    return sorted(out)


def brute_min_smoothness(beta):
    best, pairs = None, []
    for b, B in brute_parents(beta):
        p = max(largest_prime_factor(n) for n in (b, b + 1, B, B + 1) if n > 1)
        if best is None or p < best:
            best, pairs = p, [(b, B)]
        elif p == best:
            pairs.append((b, B))
    return best, sorted(pairs)


@pytest.mark.parametrize("beta", list(range(2, 400)) + [2400, 4374, 9800])
def test_parents_match_brute_force(beta):
    got = sorted((b, B) for _, b, B in parents_from_beta(beta))
    assert got == brute_parents(beta)
    for _, b, B in parents_from_beta(beta):
        assert merge(b, B) == beta


def test_parents_of_15():
    pairs = [(b, B) for _, b, B in parents_from_beta(15)]
    assert len(pairs) == 9
    assert (7, 14) in pairs and (3, 4) in pairs


@pytest.mark.parametrize("beta", [2, 3, 8, 15, 24, 80, 224, 2400, 4374])
def test_min_smoothness_matches_brute_force(beta):
    assert min_smoothness_over_parents(beta) == brute_min_smoothness(beta)


def test_min_smoothness_examples():
    assert min_smoothness_over_parents(15) == (5, [(3, 4), (5, 8), (9, 24)])
    assert min_smoothness_over_parents(2) == (3, [(1, 3)])


def test_min_smoothness_cap_too_small():
    # every parent of 15 involves a prime >= 5
    assert min_smoothness_over_parents(15, prime_cap=3) == (None, [])


def test_min_smoothness_workers_agree():
    beta = 63927525375
    assert min_smoothness_over_parents(beta, workers=2) == min_smoothness_over_parents(beta)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**5), st.integers(1, 10**5))
def test_witness_relations_hold(x, y):
    b, B = min(x, y), max(x, y)
    if b == B:
        return
    if merge(b, B) is None:
        with pytest.raises(NotAMerge):
            witness_from_pair(b, B)
        return
    w = witness_from_pair(b, B)
    assert w.check() == []


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**6), st.integers(2, 10**6))
def test_pair_from_hv_round_trip(h, v):
    if gcd(h, v) != 1:
        with pytest.raises(ValueError):
            pair_from_hv(h, v)
        return
    try:
        w = pair_from_hv(h, v)
    except NoPositiveSolution:
        return
    assert w.check() == []
    assert merge(w.b, w.B) == w.beta
    w2 = witness_from_pair(w.b, w.B)
    assert (w2.h, w2.v) == (h, v)


def test_pair_from_hv_no_positive_solution():
    # h = 1 forces u = v - 1 and g = 0
    with pytest.raises(NoPositiveSolution):
        pair_from_hv(1, 5)


def test_root_pair_of_beta():
    assert merge(*ROOT) == BETA
    assert pair_lpf(*ROOT) == 227
    w = witness_from_pair(*ROOT)
    assert w.check() == []


def test_beta_divisor_grid():
    fb, fb1 = factorint(BETA), factorint(BETA + 1)
    assert divisor_grid_size(fb, fb1) == 1440 * 5632 == 8110080


def test_scan_partial_grid_respects_cap():
    fb1 = factorint(BETA + 1)
    us = divisors(factorint(BETA))[:60]
    best, pairs = _scan(BETA, fb1, us, 1000)
    if best is not None:
        for b, B in pairs:
            assert pair_lpf(b, B) == best
