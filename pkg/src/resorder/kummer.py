"""Degrees of the Kummer fields K_{n,k} = Q(zeta_n, g^(1/k)) and derived membership tests.

No field arithmetic happens here: every question about K_{n,k} is reduced to
the closed degree formula and to the quadratic subfields of Q(zeta_8).
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction

from .gdecomp import GParams, n_r
from .ntkernel import phi


class QuadField(enum.Enum):
    RATIONAL = "Q"
    GAUSS = "Q(i)"
    SQRT2 = "Q(sqrt2)"
    SQRTM2 = "Q(sqrt-2)"


def epsilon(n: int, k: int, gp: GParams) -> Fraction:
    """Entanglement correction eps(kr, k) for n = kr; one of 1/2, 1, 2."""
    if k < 1 or n % k:
        raise ValueError(f"k={k} must divide n={n}")
    r = n // k
    nr = n_r(gp, r)
    if n % nr == 0:
        return Fraction(2)
    if gp.sign < 0 and r % 2 == 1 and k % 2 == 0 and k % 2 ** (gp.ep(2) + 1):
        return Fraction(1, 2)
    return Fraction(1)


def degree(n: int, k: int, gp: GParams) -> int:
    """[K_{n,k} : Q] for k | n."""
    eps = epsilon(n, k, gp)
    d = Fraction(phi(n) * k, math.gcd(k, gp.h)) / eps
    if d.denominator != 1:
        raise ArithmeticError(f"non-integral degree {d} for n={n}, k={k}, {gp}")
    return d.numerator


def intersection_L(v: int, gp: GParams) -> QuadField:
    """The field Q(zeta_8) intersected with K_{2v,2v}, for odd v."""
    if v < 1 or v % 2 == 0:
        raise ValueError("v must be a positive odd integer")
    if gp.h % 2 == 0:
        return QuadField.GAUSS if gp.sign < 0 else QuadField.RATIONAL
    D = gp.D
    if (8 * v) % D:
        return QuadField.RATIONAL
    s = gp.sign
    if D % 4 == 1:
        # Q(sqrt(sgn g))
        return QuadField.GAUSS if s < 0 else QuadField.RATIONAL
    if D % 8 == 4:
        return QuadField.GAUSS if s > 0 else QuadField.RATIONAL
    if D % 32 == 8:
        return QuadField.SQRT2 if s > 0 else QuadField.SQRTM2
    # D = 24 mod 32
    return QuadField.SQRTM2 if s > 0 else QuadField.SQRT2


def contains_zeta3(v: int, gp: GParams) -> bool:
    """Whether zeta_3 lies in K_{v,v} (v prime to 3)."""
    if v % 3 == 0:
        raise ValueError("v must be prime to 3")
    return degree(3 * v, v, gp) == degree(v, v, gp)


def sqrt_pm2_sign(v: int, gp: GParams) -> int:
    """+1 if sqrt(-2) lies in K_{2v,2v}, -1 if sqrt(2) does, 0 otherwise (v odd)."""
    L = intersection_L(v, gp)
    if L is QuadField.SQRTM2:
        return 1
    if L is QuadField.SQRT2:
        return -1
    return 0

