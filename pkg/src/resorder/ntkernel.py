"""Elementary arithmetic: rationals, factorization, Moebius/phi, Legendre symbol, primes.

Rationals are plain :class:`fractions.Fraction` objects (exported as ``Rat``);
they are always reduced with a positive denominator, which is exactly the
canonical form the density code relies on.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

Rat = Fraction

MAX_PRIME_LIMIT = 2**40
MAX_PRIME_COUNT = 10**8
DEFAULT_SEGMENT = 2**20  # odd numbers per sieve segment

# trial division runs over primes below this bound; larger cofactors go to sympy
_TRIAL_BOUND = 2**20
_SPF_DEFAULT = 2**22


class Factorization(NamedTuple):
    """Ordered ``(prime, exponent)`` pairs; the empty tuple factors 1."""

    pairs: tuple

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


# ---------------------------------------------------------------------------
# sieves


def primes_up_to(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array (odd-only Eratosthenes)."""
    if limit > MAX_PRIME_LIMIT:
        raise ValueError(f"limit {limit} exceeds resource bound {MAX_PRIME_LIMIT}")
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    if limit > 2**31:
        return np.concatenate(list(prime_segments(2, limit)))
    size = (limit - 1) // 2  # index i <-> 2i+1, i >= 1
    sieve = np.ones(size + 1, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2 :: p] = False
    odd = 2 * np.nonzero(sieve)[0].astype(np.int64) + 1
    return np.concatenate(([2], odd)).astype(np.int64)


def prime_segments(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield the primes in ``[lo, hi]`` in ascending, disjoint segments.

    Each segment covers ``2*segment_size`` consecutive integers and can be
    produced independently of the others (see :func:`segment_primes`).
    """
    if hi > MAX_PRIME_LIMIT:
        raise ValueError(f"limit {hi} exceeds resource bound {MAX_PRIME_LIMIT}")
    base = primes_up_to(math.isqrt(hi) + 1)
    start = lo
    span = 2 * segment_size
    while start <= hi:
        stop = min(start + span - 1, hi)
        yield segment_primes(start, stop, base)
        start = stop + 1


def segment_primes(lo: int, hi: int, base: np.ndarray | None = None) -> np.ndarray:
    """Primes in the closed interval ``[lo, hi]``."""
    if hi < 2 or hi < lo:
        return np.zeros(0, dtype=np.int64)
    if base is None:
        base = primes_up_to(math.isqrt(hi) + 1)
    lo = max(lo, 2)
    flags = np.ones(hi - lo + 1, dtype=bool)
    for p in base.tolist():
        if p * p > hi:
            break
        first = max(p * p, (lo + p - 1) // p * p)
        flags[first - lo :: p] = False
    return np.nonzero(flags)[0].astype(np.int64) + lo


def nth_prime_upper_bound(n: int) -> int:
    """Rosser-type bound ``p_n < n(log n + log log n)`` (n >= 6)."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 3


def first_primes(count: int) -> np.ndarray:
    """The first ``count`` primes."""
    if count > MAX_PRIME_COUNT:
        raise ValueError(f"count {count} exceeds resource bound {MAX_PRIME_COUNT}")
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    bound = nth_prime_upper_bound(count)
    if bound <= 2**31:
        return primes_up_to(bound)[:count]
    out, have = [], 0
    for seg in prime_segments(2, bound):
        take = seg[: count - have]
        out.append(take)
        have += len(take)
        if have >= count:
            break
    return np.concatenate(out)


def primes(limit: int | None = None, count: int | None = None) -> np.ndarray:
    """Primes ``<= limit``, or the first ``count`` primes (exactly one must be given)."""
    if (limit is None) == (count is None):
        raise ValueError("give exactly one of limit, count")
    if limit is not None:
        return primes_up_to(limit)
    return first_primes(count)


@lru_cache(maxsize=4)
def smallest_factor_table(limit: int) -> np.ndarray:
    """``spf[n]`` = least prime factor of n for ``2 <= n <= limit`` (int32)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    spf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if spf[p] == 0:
            view = spf[p * p :: 2 * p]
            view[view == 0] = p
    idx = np.arange(limit + 1, dtype=np.int32)
    unset = spf == 0
    spf[unset] = idx[unset]
    return spf


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return primes_up_to(_TRIAL_BOUND).tolist()


@lru_cache(maxsize=1)
def _spf_list() -> list[int]:
    return smallest_factor_table(_SPF_DEFAULT).tolist()


# ---------------------------------------------------------------------------
# factorization and arithmetic functions


def factorize(n: int) -> Factorization:
    """Prime factorization of a positive integer."""
    n = int(n)
    if n <= 0:
        raise ValueError(f"cannot factor {n}")
    if n <= _SPF_DEFAULT:
        return _factor_small(n)
    return _factor_large(n)


@lru_cache(maxsize=1 << 18)
def _factor_small(n: int) -> Factorization:
    spf = _spf_list()
    pairs = []
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        pairs.append((p, e))
    return Factorization(tuple(pairs))


def _factor_large(n: int) -> Factorization:
    pairs = []
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
    if n > 1:
        if n < _TRIAL_BOUND**2:
            pairs.append((n, 1))
        else:
            from sympy import factorint

            pairs.extend(sorted(factorint(n).items()))
    return Factorization(tuple(pairs))


def valuation(p: int, n) -> int:
    """Exponent of the prime p in the integer or rational n (n != 0)."""
    if isinstance(n, Fraction):
        return valuation(p, n.numerator) - valuation(p, n.denominator)
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def arith_fn(kind: str, n: int, p: int | None = None) -> int:
    """Dispatch to ``moebius``, ``phi`` or ``valuation`` (the latter needs p)."""
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "moebius":
        return moebius(n)
    if kind == "phi":
        return phi(n)
    if kind == "valuation":
        if p is None:
            raise ValueError("valuation needs a prime p")
        return valuation(p, n)
    raise ValueError(f"unknown arithmetic function {kind!r}")


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_part(n: int) -> int:
    """Product of the primes dividing n to an odd power (the square class of n)."""
    out = 1
    for p, e in factorize(n):
        if e % 2:
            out *= p
    return out


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    # binary quadratic reciprocity; avoids a modular exponentiation
    result = 1
    n = p
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def rational_mod(g: Fraction, p: int) -> int:
    """The residue of ``g`` mod p; p must not divide numerator or denominator."""
    num = g.numerator % p
    den = g.denominator % p
    if num == 0 or den == 0:
        raise ValueError(f"{g} is not a unit mod {p}")
    return num * pow(den, -1, p) % p
