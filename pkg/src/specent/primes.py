"""Prime generation: flat and segmented sieves plus first-n selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

# Flat sieve below this bound, segments of this span above it; the segment
# span bounds memory to a few MB regardless of the limit.
_SEGMENT_SPAN = 1 << 22
_MAX_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` (inclusive), sorted ascending int64."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def covers(self, bound: float) -> bool:
        return self.limit >= bound


def _flat_sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _segmented_sieve(limit: int) -> np.ndarray:
    base = _flat_sieve(math.isqrt(limit))
    chunks = [base]
    low = math.isqrt(limit) + 1
    while low <= limit:
        high = min(low + _SEGMENT_SPAN, limit + 1)  # exclusive
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start < high:
                mask[start - low :: p] = False
        hits = np.flatnonzero(mask)
        if hits.size:
            chunks.append((low + hits).astype(np.int64))
        low = high
    return np.concatenate(chunks)


def sieve_up_to(limit: int) -> PrimeTable:
    """All primes ``<= limit`` via a sieve of Eratosthenes.

    Uses a flat sieve for small limits and a segmented sieve (bounded
    memory) above ``_SEGMENT_SPAN``.

    Parameters
    ----------
    limit : int
        Inclusive sieving bound, ``2 <= limit < 2**63``.
    """
    limit = int(limit)
    if limit < 2:
        raise InvalidArgumentError(f"limit must be at least 2, got {limit}")
    if limit > _MAX_LIMIT:
        raise InvalidArgumentError(f"limit {limit} exceeds the 63-bit range")
    if limit <= _SEGMENT_SPAN:
        return PrimeTable(limit=limit, primes=_flat_sieve(limit))
    return PrimeTable(limit=limit, primes=_segmented_sieve(limit))


def first_n_primes(n: int) -> PrimeTable:
    """Exactly the ``n`` smallest primes.

    The table's ``limit`` is the n-th prime itself, so the completeness
    invariant (every prime up to ``limit`` is listed) still holds.
    """
    n = int(n)
    if n < 1:
        raise InvalidArgumentError(f"n must be at least 1, got {n}")
    if n < 6:
        bound = 13
    else:
        # Rosser's bound: p_n < n (ln n + ln ln n) for n >= 6.
        bound = int(n * (math.log(n) + math.log(math.log(n)))) + 16
    table = sieve_up_to(bound)
    while len(table) < n:
        bound *= 2
        table = sieve_up_to(bound)
    primes = table.primes[:n]
    return PrimeTable(limit=int(primes[-1]), primes=primes)
