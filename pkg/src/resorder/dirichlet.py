"""Dirichlet characters mod d, the convolution h_chi = mu * chi, and class sums.

A character is stored by its exponent vector on a fixed CRT basis of
(Z/dZ)^x: odd prime powers use the least primitive root, the 2-part uses the
pair {-1, 5}.  Values are kept as exponents in Z/N (N the group exponent) and
only turned into complex numbers on request.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .ntkernel import divisors, factorize, moebius, phi


def _primitive_root(p: int) -> int:
    qs = [q for q, _ in factorize(p - 1)] if p > 2 else []
    for a in range(2, p):
        if all(pow(a, (p - 1) // q, p) != 1 for q in qs):
            return a
    return 1


@dataclass(frozen=True)
class _Component:
    prime: int
    modulus: int  # prime power
    order: int
    gen: int


class CharacterGroup:
    """The group G_d together with discrete-log coordinates of every unit mod d."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("modulus must be positive")
        self.d = d
        comps: list[_Component] = []
        for p, k in factorize(d) if d > 1 else ():
            q = p**k
            if p == 2:
                if k >= 2:
                    comps.append(_Component(2, q, 2, q - 1))
                if k >= 3:
                    comps.append(_Component(2, q, 2 ** (k - 2), 5))
            else:
                g = _primitive_root(p)
                if k > 1 and pow(g, p - 1, p * p) == 1:
                    g += p
                comps.append(_Component(p, q, (p - 1) * p ** (k - 1), g))
        self.components = tuple(comps)
        self.exponent = math.lcm(*(c.order for c in comps)) if comps else 1
        self._logs = self._build_logs()

    def _build_logs(self):
        tables = []
        for c in self.components:
            table, x = {}, 1
            for i in range(c.order):
                table[x] = i
                x = x * c.gen % c.modulus
            tables.append(table)
        logs = {}
        for a in range(self.d):
            if math.gcd(a, self.d) != 1:
                continue
            coords = []
            for c, table in zip(self.components, tables):
                r = a % c.modulus
                if c.prime == 2 and c.gen == c.modulus - 1:
                    coords.append(0 if r % 4 == 1 else 1)
                elif c.prime == 2:
                    # strip the -1 part before taking log base 5
                    coords.append(table[r if r % 4 == 1 else (-r) % c.modulus])
                else:
                    coords.append(table[r])
            logs[a] = tuple(coords)
        return logs

    def coords(self, a: int):
        return self._logs.get(a % self.d)

    def characters(self) -> list["DirichletChar"]:
        out = [()]
        for c in self.components:
            out = [t + (i,) for t in out for i in range(c.order)]
        return [DirichletChar(self, t) for t in out]

    def __len__(self):
        return math.prod(c.order for c in self.components)


class DirichletChar:
    """A character mod d, indexed by its exponent vector on the group basis."""

    def __init__(self, group: CharacterGroup, index: tuple):
        self.group = group
        self.index = tuple(i % c.order for i, c in zip(index, group.components))
        N = group.exponent
        self._weights = tuple(ix * (N // c.order) for ix, c in zip(self.index, group.components))
        g = math.gcd(N, *self._weights) if self._weights else N
        self.order = N // g
        self._scale = g

    @property
    def modulus(self) -> int:
        return self.group.d

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def exponent(self, a: int):
        """chi(a) = exp(2 pi i e / order); None when gcd(a, d) > 1."""
        coords = self.group.coords(a)
        if coords is None:
            return None
        s = sum(w * x for w, x in zip(self._weights, coords))
        return (s // self._scale) % self.order

    def __call__(self, a: int):
        e = self.exponent(a)
        if e is None:
            return 0
        if self.order == 1:
            return 1
        if self.order == 2:
            return -1 if e else 1
        return cmath.exp(2j * math.pi * e / self.order)

    def conj(self) -> "DirichletChar":
        return DirichletChar(self.group, tuple(-i for i in self.index))

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        if other.group is not self.group:
            raise ValueError("characters to different moduli")
        return DirichletChar(self.group, tuple(a + b for a, b in zip(self.index, other.index)))

    def __eq__(self, other):
        return isinstance(other, DirichletChar) and other.group.d == self.group.d and other.index == self.index

    def __hash__(self):
        return hash((self.group.d, self.index))

    @cached_property
    def conductor(self) -> int:
        f, f2 = 1, 1
        for ix, c in zip(self.index, self.group.components):
            if ix == 0:
                continue
            o = c.order // math.gcd(ix, c.order)
            if c.prime != 2:
                f *= c.prime ** (1 + _nu(o, c.prime))
            elif c.gen == c.modulus - 1:
                f2 = max(f2, 4)
            else:
                f2 = max(f2, 2 ** (2 + _nu(o, 2)))
        return f * f2

    def __repr__(self):
        return f"DirichletChar(mod {self.modulus}, index={self.index}, order={self.order})"


def _nu(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@lru_cache(maxsize=64)
def _group(d: int) -> CharacterGroup:
    return CharacterGroup(d)


def character_group(d: int) -> list[DirichletChar]:
    """All phi(d) characters mod d; the principal character comes first."""
    if d < 1:
        raise ValueError("modulus must be positive")
    if d > 10**4:
        raise ValueError("moduli above 10^4 are not supported")
    return _group(d).characters()


def principal(d: int) -> DirichletChar:
    return character_group(d)[0]


def real_nonprincipal(d: int) -> DirichletChar:
    """The unique non-principal real character mod 3 or mod 4 (xi_1, psi_1)."""
    chars = [c for c in character_group(d) if c.order == 2]
    if len(chars) != 1:
        raise ValueError(f"no unique real non-principal character mod {d}")
    return chars[0]


def h_chi(chi: DirichletChar, v: int):
    """(mu * chi)(v); an int for real chi, a complex number otherwise."""
    if v < 1:
        raise ValueError("v must be positive")
    out = 1
    for p, r in factorize(v) if v > 1 else ():
        c = chi(p)
        out *= (c ** (r - 1) if r > 1 else 1) * (c - 1)
        if out == 0:
            return 0
    return out


def class_sum(a: int, d: int, v: int) -> int:
    """Sum of mu(v/t) over divisors t of v with t = a mod d."""
    if math.gcd(a, d) != 1:
        raise ValueError("a must be a unit mod d")
    return sum(moebius(v // t) for t in divisors(v) if (t - a) % d == 0)


def class_sum_characters(a: int, d: int, v: int) -> complex:
    """The character-side expression (1/phi(d)) sum_chi conj(chi(a)) h_chi(v)."""
    total = sum(complex(chi(a)).conjugate() * h_chi(chi, v) for chi in character_group(d))
    return total / phi(d)
