import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from resorder.ntkernel import (
    Rat,
    arith_fn,
    divisors,
    factorize,
    first_primes,
    legendre,
    moebius,
    phi,
    prime_segments,
    primes,
    primes_up_to,
    rational_mod,
    squarefree_part,
    valuation,
)


def _brute_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, int(k**0.5) + 1))]


def test_factorize_examples():
    assert list(factorize(1)) == []
    assert list(factorize(12)) == [(2, 2), (3, 1)]
    assert list(factorize(1299709)) == [(1299709, 1)]
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_large_values():
    n = 2**61 - 1  # prime
    assert list(factorize(n)) == [(n, 1)]
    m = (2**31 - 1) * (2**61 - 1) * 9
    assert factorize(m).value() == m
    assert factorize(6**27).pairs == ((2, 27), (3, 27))


def test_factorize_roundtrip_small_range():
    for n in range(1, 100001):
        f = factorize(n)
        ps = f.primes()
        assert ps == sorted(ps)
        assert f.value() == n


def test_divisor_sums():
    for n in range(1, 20001):
        ds = divisors(n)
        assert sum(moebius(d) for d in ds) == (1 if n == 1 else 0)
        assert sum(phi(d) for d in ds) == n


def test_arith_fn_examples():
    assert arith_fn("moebius", 30) == -1
    assert arith_fn("phi", 8) == 4
    assert arith_fn("valuation", 6561, 3) == 8
    with pytest.raises(ValueError):
        arith_fn("valuation", 12)


def test_valuation_of_rationals():
    assert valuation(2, Fraction(3, 8)) == -3
    assert valuation(5, 250) == 3


def test_legendre_examples():
    assert legendre(2, 7) == 1
    assert legendre(2, 5) == -1
    assert legendre(14, 7) == 0
    with pytest.raises(ValueError):
        legendre(3, 2)


def test_legendre_matches_euler_criterion():
    rng = random.Random(7)
    ps = primes_up_to(10**5)[1:].tolist()
    for _ in range(2000):
        p = rng.choice(ps)
        a = rng.randrange(-10**6, 10**6)
        e = pow(a, (p - 1) // 2, p)
        assert legendre(a, p) == (0 if e == 0 else 1 if e == 1 else -1)


def test_prime_stream_matches_brute_force():
    assert primes(limit=10).tolist() == [2, 3, 5, 7]
    assert primes_up_to(100000).tolist() == _brute_primes(100000)


def test_segments_are_disjoint_and_complete():
    segs = list(prime_segments(2, 300000, segment_size=5000))
    joined = np.concatenate(segs)
    assert joined.tolist() == primes_up_to(300000).tolist()
    assert all(a[-1] < b[0] for a, b in zip(segs, segs[1:]) if len(a) and len(b))


def test_prime_counts():
    # the 10^5-th prime; the same number is sometimes quoted as the 10^6-th
    assert int(first_primes(10**5)[-1]) == 1299709
    assert int(first_primes(10**6)[-1]) == 15485863
    assert len(primes(count=1000)) == 1000
    with pytest.raises(ValueError):
        primes(count=10**8 + 1)
    with pytest.raises(ValueError):
        primes(limit=2**41)


def test_rat_is_canonical():
    q = Rat(-6, -4)
    assert (q.numerator, q.denominator) == (3, 2)
    assert Rat(3, -4).denominator == 4


def test_rational_mod():
    assert rational_mod(Fraction(1, 2), 7) == 4
    with pytest.raises(ValueError):
        rational_mod(Fraction(7, 2), 7)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_squarefree_part_is_multiplicative_on_coprime(a, b):
    import math

    if math.gcd(a, b) == 1:
        assert squarefree_part(a * b) == squarefree_part(a) * squarefree_part(b)
    assert squarefree_part(a * a) == 1
