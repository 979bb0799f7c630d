"""Smooth neighbor pairs (b, b+1) by iterated ratio merging."""
__version__ = "0.1.0"

from .arith import (EffortConfig, FactorizationGaveUp, divisors, factorint, is_smooth,
                    largest_prime_factor, primes_up_to, smooth_part)
from .closure import ClosureTrace, NeighborSet, RunLimits, closure_round, delta, merge, mixed_merge_even

__all__ = [
    "ClosureTrace", "EffortConfig", "FactorizationGaveUp", "NeighborSet", "RunLimits",
    "closure_round", "delta", "divisors", "factorint", "is_smooth", "largest_prime_factor",
    "merge", "mixed_merge_even", "primes_up_to", "smooth_part",
]
