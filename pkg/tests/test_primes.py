import numpy as np
import pytest

from specent import InvalidArgumentError, first_n_primes, sieve_up_to
from specent.primes import _SEGMENT_SPAN

from oracles import oracle_primes


def test_sieve_matches_trial_division():
    expected = oracle_primes(10000)
    got = sieve_up_to(10000).primes
    assert got.tolist() == expected


@pytest.mark.parametrize("limit", [2, 3, 4, 5, 29, 30, 31, 997])
def test_sieve_small_limits(limit):
    assert sieve_up_to(limit).primes.tolist() == oracle_primes(limit)


def test_sieve_limit_below_two_rejected():
    with pytest.raises(InvalidArgumentError):
        sieve_up_to(1)
    with pytest.raises(InvalidArgumentError):
        sieve_up_to(-7)


def test_segmented_agrees_with_flat_across_boundary():
    # Limit just past one segment span forces the segmented path.
    limit = _SEGMENT_SPAN + 1000
    seg = sieve_up_to(limit).primes
    # Flat reference on the same range via a plain boolean sieve.
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for k in range(2, int(limit**0.5) + 1):
        if mask[k]:
            mask[k * k :: k] = False
    assert np.array_equal(seg, np.flatnonzero(mask))


def test_first_n_primes_exact_prefix():
    table = first_n_primes(1000)
    assert len(table) == 1000
    assert table.primes[:8].tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
    assert table.primes[-1] == 7919
    assert table.limit == 7919


@pytest.mark.parametrize("n", [1, 2, 5, 6, 100])
def test_first_n_primes_counts(n):
    table = first_n_primes(n)
    assert len(table) == n
    assert table.primes.tolist() == oracle_primes(int(table.primes[-1]))


def test_first_n_primes_rejects_nonpositive():
    with pytest.raises(InvalidArgumentError):
        first_n_primes(0)


def test_covers():
    table = sieve_up_to(100)
    assert table.covers(100)
    assert table.covers(99.5)
    assert not table.covers(101)


def test_primes_are_strictly_increasing():
    primes = sieve_up_to(100000).primes
    assert np.all(np.diff(primes) > 0)
