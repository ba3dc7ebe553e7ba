import numpy as np
import pytest

from yoshida.errors import ValidationError
from yoshida.primes import (
    PrimeRange,
    factorize,
    is_prime,
    is_squarefree,
    primes_up_to,
    sieve_range,
    squarefree_divisors,
)


def trial_division_primes(n):
    """Independent oracle: trial division."""
    out = []
    for m in range(2, n + 1):
        if all(m % d for d in range(2, int(m**0.5) + 1)):
            out.append(m)
    return out


def test_sieve_matches_trial_division_up_to_1e4():
    assert primes_up_to(10**4).tolist() == trial_division_primes(10**4)


@pytest.mark.parametrize("n,expected", [(0, []), (1, []), (2, [2]), (10, [2, 3, 5, 7])])
def test_sieve_small(n, expected):
    assert primes_up_to(n).tolist() == expected


def test_segmented_sieve_agrees_with_plain():
    full = primes_up_to(5000)
    for lo, hi in [(1, 100), (90, 150), (4900, 5000), (2, 2), (14, 16), (1000, 999)]:
        want = full[(full >= lo) & (full <= hi)].tolist()
        assert sieve_range(lo, hi).tolist() == want


def test_prime_range_from_bounds():
    pr = PrimeRange.from_bounds(10, 30)
    assert pr.primes == (11, 13, 17, 19, 23, 29)
    assert len(pr) == 6


def test_prime_range_rejects_bad_lists():
    with pytest.raises(ValidationError):
        PrimeRange(10, 30, (13, 11))
    with pytest.raises(ValidationError):
        PrimeRange(10, 30, (7, 11))
    with pytest.raises(ValidationError):
        PrimeRange(30, 10)


def test_is_prime_matches_sieve():
    flags = np.zeros(2001, dtype=bool)
    flags[primes_up_to(2000)] = True
    for n in range(2001):
        assert is_prime(n) == bool(flags[n])


def test_factorize_and_squarefree():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(33) == [(3, 1), (11, 1)]
    assert is_squarefree(33) and not is_squarefree(12)
    assert squarefree_divisors(1) == [1]
    assert squarefree_divisors(6) == [1, 2, 3, 6]
    assert squarefree_divisors(33) == [1, 3, 11, 33]
