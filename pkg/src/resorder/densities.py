"""Closed-form densities of primes whose order (or index) of g lies in a residue class.

All densities are natural densities relative to the set of all primes and are
conditional on GRH where the underlying theorems are.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dirichlet import character_group, real_nonprincipal
from .eulerprod import C_closed, Constant, DensityValue, P123, laatsteh_sum
from .gdecomp import GParams, _nu2, n_r
from .kummer import degree
from .ntkernel import divisors, phi, valuation

EXACT_INDEX_MODULI = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class ClassSpec:
    """Congruence filter p = a1 mod d1 on the primes; (0, 1) means all primes."""

    a1: int
    d1: int

    def __post_init__(self):
        a, d = self.a1, self.d1
        ok = (a, d) in {(0, 1), (3, 4), (2, 3)}
        ok = ok or (a == 1 and d >= 4 and d & (d - 1) == 0)
        ok = ok or (a == 1 and d >= 3 and _is_power(d, 3))
        if not ok:
            raise ValueError(f"unsupported prime class {a}/{d}")

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        a, d = text.split("/")
        return cls(int(a), int(d))

    @property
    def s(self) -> int:
        """Exponent s in 2^s or 3^s for the classes 1 mod 2^s, 1 mod 3^s."""
        return valuation(2 if self.d1 % 2 == 0 else 3, self.d1)

    def __str__(self):
        return f"{self.a1}/{self.d1}"


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


ALL_PRIMES = ClassSpec(0, 1)


def _close_series(term, start: int, settle: int, ratio: Fraction) -> Fraction:
    """Sum term(r) for r >= start, closing the tail geometrically once terms settle.

    The settling is checked, not assumed: four consecutive terms from
    ``settle`` on must have exact ratio ``ratio``.
    """
    stop = max(start, settle)
    total = sum((term(r) for r in range(start, stop)), Fraction(0))
    tail = [term(r) for r in range(stop, stop + 4)]
    for a, b in zip(tail, tail[1:]):
        if b != a * ratio:
            raise ArithmeticError(f"series has not settled at r={stop}: {tail}")
    return total + sum(tail) + tail[-1] * ratio / (1 - ratio)


def _inv_deg(n: int, k: int, gp: GParams) -> Fraction:
    return Fraction(1, degree(n, k, gp))


# ---------------------------------------------------------------------------
# order mod 4


def _mod4_power_class(gp: GParams, s: int) -> dict[int, Fraction]:
    settle = _nu2(gp.h) + valuation(2, gp.D) + 4

    def even_term(r):
        return _inv_deg(2**r, 2 ** (r - 1), gp) - _inv_deg(2 ** (r + 1), 2 ** (r - 1), gp)

    def odd_term(r):
        return _inv_deg(2**r, 2**r, gp) - _inv_deg(2 ** (r + 1), 2**r, gp)

    quarter = Fraction(1, 4)
    e = _close_series(even_term, s, settle, quarter)
    o = _close_series(odd_term, s, settle, quarter)
    return {0: Fraction(2) ** (1 - s) - e, 1: o / 2, 2: e - o, 3: o / 2}


def quadratic_residue_density(gp: GParams) -> Fraction:
    """Density of primes p = 3 mod 4 with (g/p) = 1."""
    if gp.h % 2:
        return Fraction(1, 4)
    return Fraction(1 + gp.sign, 4)


def Delta(gp: GParams) -> DensityValue:
    """The mod 4 asymmetry constant; delta(3,4;1,4) - delta(3,4;3,4) = Delta/2."""
    if gp.h % 2 == 0 or gp.D % 8 or any(p % 4 == 1 for p, _ in _factor(gp.D)):
        return DensityValue()
    P1, P2, P3 = P123(gp)
    return DensityValue.constant(Constant.A_PSI1, -gp.sign * P1 * P2 * P3 / 2)


def Delta_via_C(gp: GParams) -> DensityValue:
    """Delta written as a single constrained sum C_psi1(h, 2, D/8) (cross-check route)."""
    if gp.h % 2 == 0 or gp.D % 8:
        return DensityValue()
    psi1 = real_nonprincipal(4)
    sgn_d = (-1) ** ((gp.D + 8) // 16)
    return C_closed(psi1, gp.h, 2, gp.D // 8) * Fraction(gp.sign * sgn_d, 2)


def delta_mod4(gp: GParams, cls: ClassSpec, j: int) -> DensityValue:
    """Density of primes p in ``cls`` with ord_g(p) = j mod 4."""
    if j not in (0, 1, 2, 3):
        raise ValueError("j must be in 0..3")
    if cls == ALL_PRIMES:
        return delta_mod4(gp, ClassSpec(1, 4), j) + delta_mod4(gp, ClassSpec(3, 4), j)
    if cls == ClassSpec(3, 4):
        qr = quadratic_residue_density(gp)
        if j == 0:
            return DensityValue()
        if j == 2:
            return DensityValue(Fraction(1, 2) - qr)
        sign = 1 if j == 1 else -1
        return DensityValue(qr / 2) + Delta(gp) * Fraction(sign, 4)
    if cls.a1 == 1 and cls.d1 % 4 == 0:
        return DensityValue(_mod4_power_class(gp, cls.s)[j])
    raise ValueError(f"class {cls} is not a mod 4 class")


# ---------------------------------------------------------------------------
# order mod 3


def xi_sum(gp: GParams) -> DensityValue:
    """sum over v prime to 3 with zeta_3 not in K_{v,v} of h_xi1(v)/[K_{v,v}:Q]."""
    xi1 = real_nonprincipal(3)
    h = gp.h
    n1 = n_r(gp, 1)
    eps = 1 if gp.D % 3 else -1
    total = C_closed(xi1, h, 3, 1) + eps * C_closed(xi1, h, 3, n1 // math.gcd(n1, 3))
    if gp.sign < 0:
        total = total - C_closed(xi1, h, 3, 2) / 2 + C_closed(xi1, h, 3, 2 ** (_nu2(h) + 1)) / 2
    return total


def xi_sum_via_laatsteh(gp: GParams) -> DensityValue:
    """Same quantity as 2*sum h_xi1(v)(1/[K_{v,v}] - 1/[K_{3v,v}]) (cross-check route)."""
    xi1 = real_nonprincipal(3)
    return 2 * laatsteh_sum(xi1, 3, 1, gp) - 2 * laatsteh_sum(xi1, 3, 3, gp)


def _mod3_power_class(gp: GParams, s: int) -> dict[int, Fraction]:
    def term(r):
        return _inv_deg(3**r, 3**r, gp) - _inv_deg(3 ** (r + 1), 3**r, gp)

    t = _close_series(term, s, valuation(3, gp.h) + 2, Fraction(1, 9))
    return {0: Fraction(3) ** (1 - s) / 2 - t, 1: t / 2, 2: t / 2}


def delta_mod3(gp: GParams, cls: ClassSpec, j: int) -> DensityValue:
    """Density of primes p in ``cls`` with ord_g(p) = j mod 3."""
    if j not in (0, 1, 2):
        raise ValueError("j must be in 0..2")
    if cls == ALL_PRIMES:
        return delta_mod3(gp, ClassSpec(1, 3), j) + delta_mod3(gp, ClassSpec(2, 3), j)
    if cls == ClassSpec(2, 3):
        if j == 0:
            return DensityValue()
        xi = 1 if j == 1 else -1
        return Fraction(1, 4) + xi_sum(gp) * Fraction(xi, 4)
    if cls.a1 == 1 and cls.d1 % 3 == 0:
        return DensityValue(_mod3_power_class(gp, cls.s)[j])
    raise ValueError(f"class {cls} is not a mod 3 class")


def delta_order(gp: GParams, d: int, j: int, cls: ClassSpec = ALL_PRIMES) -> DensityValue:
    if d == 3:
        return delta_mod3(gp, cls, j % 3)
    if d == 4:
        return delta_mod4(gp, cls, j % 4)
    raise ValueError("order densities are available for d = 3 and d = 4")


def order_difference(gp: GParams, d: int) -> DensityValue:
    """delta_g(1,3) - delta_g(2,3) for d = 3, delta_g(1,4) - delta_g(3,4) for d = 4."""
    other = 2 if d == 3 else 3
    return delta_order(gp, d, 1) - delta_order(gp, d, other)


# ---------------------------------------------------------------------------
# index


def rho_index(gp: GParams, a: int, d: int, cutoff: int = 20000):
    """Density of primes whose index r_g(p) is a mod d.

    Exact when d | a, or when a is a unit and every character mod d has
    conductor 1, 3 or 4.  Otherwise a :class:`~resorder.oracle.SeriesResult`
    (marked ``exact=False``) from the series oracle is returned.
    """
    if d < 1:
        raise ValueError("d must be positive")
    a %= d
    if a == 0:
        return DensityValue(Fraction(1, degree(d, d, gp)))
    if math.gcd(a, d) == 1 and d in EXACT_INDEX_MODULI:
        total = DensityValue()
        for chi in character_group(d):
            total = total + laatsteh_sum(chi, 1, 1, gp) * chi(a)
        return total / phi(d)
    from .oracle import series_rho

    return series_rho(gp, a, d, cutoff)


# ---------------------------------------------------------------------------
# generic behaviour


def generic_delta(a: int, d: int) -> DensityValue:
    """Prime-averaged density of elements of F_p^x with order = a mod d."""
    a %= d
    if d == 3:
        if a == 0:
            return DensityValue(Fraction(3, 8))
        sign = 1 if a == 1 else -1
        return DensityValue(Fraction(5, 16), Fraction(sign, 4), Constant.A_XI1)
    if d == 4:
        return DensityValue(Fraction(1, 3) if a % 2 == 0 else Fraction(1, 6))
    raise ValueError("generic densities are tabulated for d = 3 and d = 4")


def is_generic(gp: GParams, d: int) -> bool:
    """True iff delta_g(a, d) equals the generic value for every residue a."""
    return all(delta_order(gp, d, a) == generic_delta(a, d) for a in range(d))


def local_density(p: int, a: int, d: int) -> Fraction:
    """Fraction of elements of F_p^x whose order is a mod d."""
    return Fraction(sum(phi(r) for r in divisors(p - 1) if (r - a) % d == 0), p - 1)


# ---------------------------------------------------------------------------
# alternative printed closed forms, kept as independent cross-checks


def delta_mod4_generic_explicit(s: int, j: int) -> Fraction:
    """delta_g(1,2^s;j,4) when h is odd and D has an odd prime factor."""
    q = Fraction(4) ** (1 - s)
    return {0: Fraction(2) ** (1 - s) - 2 * q / 3, 1: q / 6, 2: q / 3, 3: q / 6}[j % 4]


def delta_mod3_power_explicit(gp: GParams, s: int, j: int) -> Fraction:
    """delta_g(1,3^s;j,3) through the case split on e_3 = nu_3(h) against s."""
    e3 = gp.ep(3)
    if e3 <= s:
        x = Fraction(3) ** (2 + e3 - 2 * s)
        return Fraction(3) ** (1 - s) / 2 - x / 8 if j % 3 == 0 else x / 16
    y = Fraction(3) ** (1 - e3)
    return y / 8 if j % 3 == 0 else Fraction(3) ** (1 - s) / 4 - y / 16


def delta_mod4_h1(gp: GParams, j: int) -> DensityValue:
    """delta_g(j,4) for odd j and h = 1."""
    if gp.h != 1 or j % 2 == 0:
        raise ValueError("needs h = 1 and odd j")
    D = gp.D
    if D % 8 or any(p % 4 == 1 for p, _ in _factor(D)):
        return DensityValue(Fraction(1, 6))
    sign = gp.sign * (-1) ** ((j + 1) // 2)
    prod = Fraction(1)
    for p, _ in _factor(D // 8):
        prod *= Fraction(2 * p, p**3 - p**2 - p - 1)
    q0 = Fraction(7, 48) if D == 8 else Fraction(1, 6)
    return DensityValue(q0, sign * prod / 8, Constant.A_PSI1)


def _omega_big(n: int) -> int:
    return sum(e for _, e in _factor(n))


def delta_mod3_technischhoor(gp: GParams, j: int) -> DensityValue:
    """delta_g(2,3;j,3) written with the products P'1 and P'2."""
    from .eulerprod import Pprime12

    if j % 3 == 0:
        return DensityValue()
    xi = 1 if j % 3 == 1 else -1
    xi1 = real_nonprincipal(3)
    e2 = gp.ep(2)
    n1 = n_r(gp, 1)
    eps1 = 0 if any(q % 3 == 1 for q, _ in _factor(gp.D)) else 1
    P1, P2 = Pprime12(gp)
    last = DensityValue.constant(
        Constant.A_XI1,
        eps1 * Fraction(xi, 5) * (-1) ** _omega_big(n1) * Fraction(2) ** (e2 + 2 - 2 * valuation(2, n1)) * P1 * P2,
    )
    if gp.sign > 0:
        main = C_closed(xi1, gp.h, 3, 1)
    else:
        f = 1 - Fraction(2**e2 - (-1) ** e2, 3 * Fraction(2) ** (e2 - 1)) - Fraction(2) ** (2 - e2) * (-1) ** e2 / 5
        main = C_closed(xi1, gp.h, 6, 1) * f
    return Fraction(1, 4) + main * Fraction(xi, 4) + last


def delta_mod3_h1(gp: GParams, j: int) -> DensityValue:
    """delta_g(2,3;j,3) for h = 1."""
    if gp.h != 1:
        raise ValueError("needs h = 1")
    if j % 3 == 0:
        return DensityValue()
    xi = 1 if j % 3 == 1 else -1
    n1 = n_r(gp, 1)
    eps1 = 0 if any(q % 3 == 1 for q, _ in _factor(gp.D)) else 1
    prod = Fraction(1)
    for p, _ in _factor(gp.D):
        if p > 3:
            prod *= Fraction(2 * p, p**3 - p**2 - p - 1)
    coef = 1 + eps1 * (-1) ** _omega_big(n1) * Fraction(2) ** (4 - 2 * valuation(2, n1)) * prod
    return DensityValue(Fraction(1, 4), Fraction(xi, 4) * coef, Constant.A_XI1)


def _factor(n: int):
    from .ntkernel import factorize

    return factorize(n) if n > 1 else ()


__all__ = [
    "ALL_PRIMES",
    "ClassSpec",
    "Delta",
    "Delta_via_C",
    "delta_mod3",
    "delta_mod3_h1",
    "delta_mod3_power_explicit",
    "delta_mod3_technischhoor",
    "delta_mod4",
    "delta_mod4_generic_explicit",
    "delta_mod4_h1",
    "delta_order",
    "generic_delta",
    "is_generic",
    "local_density",
    "order_difference",
    "quadratic_residue_density",
    "rho_index",
    "xi_sum",
    "xi_sum_via_laatsteh",
]
