"""Artin-type constants A_chi and exact evaluation of the constrained sums C_chi(h, r, s).

Exact results live in Q + Q*A where A is one of 1, A_psi1 (mod 4) or A_xi1
(mod 3); :class:`DensityValue` carries such numbers.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import exp1

from .dirichlet import DirichletChar, real_nonprincipal
from .gdecomp import GParams, _nu2, n_r
from .ntkernel import factorize, phi, primes_up_to, valuation

DEFAULT_CUTOFF = 10**7


class NumericOnly(ValueError):
    """The requested quantity has no exact form in Q + Q*A_psi1 + Q*A_xi1 here."""


class Constant(enum.Enum):
    NONE = ""
    A_PSI1 = "A_psi1"
    A_XI1 = "A_xi1"

    @property
    def modulus(self) -> int:
        return {Constant.NONE: 1, Constant.A_PSI1: 4, Constant.A_XI1: 3}[self]


# ---------------------------------------------------------------------------
# numeric constants


def A_numeric(chi: DirichletChar, prime_cutoff: int = DEFAULT_CUTOFF, tail_correction: bool = False):
    """Partial Euler product of A_chi over primes <= prime_cutoff.

    With ``tail_correction`` the first-order tail -E1(log x) of the log-product
    is added, which is what the constant registry uses.
    """
    if prime_cutoff < 100:
        raise ValueError("cutoff must be at least 100")
    if chi.is_principal:
        return 1.0
    ps = primes_up_to(prime_cutoff)
    d = chi.modulus
    table = np.array([chi(a) for a in range(d)], dtype=complex)
    c = table[ps % d]
    keep = c != 0
    p = ps[keep].astype(np.float64)
    c = c[keep]
    terms = np.log1p((c - 1) * p / ((p * p - c) * (p - 1)))
    tail = -exp1(math.log(prime_cutoff)) if tail_correction else 0.0
    if chi.is_real:
        return math.exp(math.fsum(terms.real) + tail)
    log_val = complex(math.fsum(terms.real) + tail, math.fsum(terms.imag))
    return complex(np.exp(log_val))


@lru_cache(maxsize=None)
def constant_value(tag: Constant, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Registry of numeric A-constants (tail-corrected partial products)."""
    if tag is Constant.NONE:
        return 0.0
    return A_numeric(real_nonprincipal(tag.modulus), cutoff, tail_correction=True)


# ---------------------------------------------------------------------------
# exact values


@dataclass(frozen=True)
class DensityValue:
    """The number q0 + q1*A_tag (A_NONE contributes nothing)."""

    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    tag: Constant = Constant.NONE

    def __post_init__(self):
        object.__setattr__(self, "q0", Fraction(self.q0))
        object.__setattr__(self, "q1", Fraction(self.q1))
        if self.q1 == 0 or self.tag is Constant.NONE:
            if self.tag is Constant.NONE and self.q1 != 0:
                raise ValueError("q1 must vanish without a constant")
            object.__setattr__(self, "tag", Constant.NONE)

    @classmethod
    def of(cls, x) -> "DensityValue":
        return x if isinstance(x, DensityValue) else cls(Fraction(x))

    @classmethod
    def constant(cls, tag: Constant, coef=1) -> "DensityValue":
        if tag is Constant.NONE:
            return cls(Fraction(coef))
        return cls(0, Fraction(coef), tag)

    def _join(self, other: "DensityValue") -> Constant:
        if self.tag is Constant.NONE:
            return other.tag
        if other.tag is Constant.NONE or other.tag is self.tag:
            return self.tag
        raise ValueError(f"cannot combine {self.tag.value} with {other.tag.value}")

    def __add__(self, other):
        other = DensityValue.of(other)
        return DensityValue(self.q0 + other.q0, self.q1 + other.q1, self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return DensityValue(-self.q0, -self.q1, self.tag)

    def __sub__(self, other):
        return self + (-DensityValue.of(other))

    def __rsub__(self, other):
        return DensityValue.of(other) - self

    def __mul__(self, k):
        if isinstance(k, DensityValue):
            if k.tag is Constant.NONE:
                k = k.q0
            elif self.tag is Constant.NONE:
                return k * self.q0
            else:
                raise ValueError("product of two A-terms is not representable")
        k = Fraction(k)
        return DensityValue(self.q0 * k, self.q1 * k, self.tag)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __eq__(self, other):
        if not isinstance(other, DensityValue):
            try:
                other = DensityValue.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.q0, self.q1, self.tag) == (other.q0, other.q1, other.tag)

    def __hash__(self):
        return hash((self.q0, self.q1, self.tag))

    @property
    def is_rational(self) -> bool:
        return self.tag is Constant.NONE

    def numeric(self, cutoff: int = DEFAULT_CUTOFF) -> float:
        if self.tag is Constant.NONE:
            return float(self.q0)
        return float(self.q0) + float(self.q1) * constant_value(self.tag, cutoff)

    def __float__(self):
        return self.numeric()

    def __str__(self):
        return format_value(self)

    def __repr__(self):
        return f"DensityValue({format_value(self)!r})"


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _aterm(q: Fraction, label: str) -> str:
    n, d = abs(q.numerator), q.denominator
    s = label if n == 1 else f"{n}{label}"
    return s if d == 1 else f"{s}/{d}"


def format_value(v: DensityValue) -> str:
    """Canonical text such as ``5/12 + 5A_xi1/16``, ``-7A_xi1/4`` or ``0``."""
    if v.tag is Constant.NONE:
        return _frac(v.q0)
    a = _aterm(v.q1, v.tag.value)
    if v.q0 == 0:
        return ("-" if v.q1 < 0 else "") + a
    return f"{_frac(v.q0)} {'-' if v.q1 < 0 else '+'} {a}"


_TERM = re.compile(r"^(?P<num>\d*)(?P<lab>A_psi1|A_xi1)(?:/(?P<den>\d+))?$")


def parse_value(text: str) -> DensityValue:
    """Inverse of :func:`format_value`."""
    s = text.replace("−", "-").strip()
    m = re.match(r"^(-?\d+(?:/\d+)?)\s*([+-])\s*(.+)$", s)
    if m and "A_" in m.group(3):
        rat, sign, rest = Fraction(m.group(1)), m.group(2), m.group(3)
    else:
        rat, sign, rest = Fraction(0), "+", s
        if rest.startswith("-") and "A_" in rest:
            sign, rest = "-", rest[1:]
        elif "A_" not in rest:
            return DensityValue(Fraction(rest))
    t = _TERM.match(rest.strip())
    if not t:
        raise ValueError(f"cannot parse density value {text!r}")
    coef = Fraction(int(t.group("num") or 1), int(t.group("den") or 1))
    if sign == "-":
        coef = -coef
    return DensityValue(rat, coef, Constant(t.group("lab")))


# ---------------------------------------------------------------------------
# local factors of C_chi(h, r, s)


def generic_factor(c, p: int) -> Fraction:
    """Local factor of A_chi at p, for chi(p) = c in {-1, 1}."""
    c = Fraction(c)
    return 1 + (c - 1) * p / ((p * p - c) * (p - 1))


def local_factor(c, p: int, e: int, a: int) -> Fraction:
    """Euler factor at p of sum_{s | v} h_chi(v)(h, v)/(v phi(v)).

    ``c`` = chi(p) (real), ``e`` = nu_p(h), ``a`` = nu_p(s); p is assumed prime
    to r.  Case split follows the product formula for C_chi, with the exponent
    in the 2 <= a <= e case taken at p (the printed subscript 2 is a slip).
    """
    c = Fraction(c)
    pf = Fraction(p)
    if a <= 1:
        body = pf ** (1 - e) * (c - 1) / (p - 1) * ((pf**e - c**e) / (p - c) + c**e / (p * p - c))
        return 1 + body if a == 0 else body
    if a >= e + 1:
        return c ** (a - 1) * (c - 1) / (p - 1) * pf ** (e + 3 - 2 * a) / (p * p - c)
    x = c / p
    return (c - 1) / (p - 1) * ((x ** (a - 1) - x**e) / (1 - x) + pf ** (1 - e) * c**e / (p * p - c))


def local_factor_series(c, p: int, e: int, a: int, terms: int = 60) -> float:
    """Same local factor summed term by term (float); used as a transcription check."""
    total = 1.0 if a == 0 else 0.0
    for k in range(max(a, 1), max(a, 1) + terms):
        h = (c ** (k - 1) if k > 1 else 1) * (c - 1)
        total += h * p ** min(k, e) / (p ** (2 * k - 1) * (p - 1))
    return total


def _primitive_tag(chi: DirichletChar) -> Constant:
    if not chi.is_real:
        raise NumericOnly(f"{chi} is complex; use the series oracle")
    f = chi.conductor
    if f == 1:
        return Constant.NONE
    if f == 3:
        return Constant.A_XI1
    if f == 4:
        return Constant.A_PSI1
    raise NumericOnly(f"conductor {f} has no registered constant; use the series oracle")


def _primitive_value(tag: Constant, p: int) -> int:
    if tag is Constant.NONE:
        return 1
    return real_nonprincipal(tag.modulus)(p)


def C_closed(chi: DirichletChar, h: int, r: int, s: int) -> DensityValue:
    """C_chi(h, r, s) = sum over v prime to r, s | v, of h_chi(v)(h,v)/(v phi(v))."""
    if min(h, r, s) < 1:
        raise ValueError("h, r, s must be positive")
    tag = _primitive_tag(chi)
    if math.gcd(r, s) > 1:
        return DensityValue()
    special = {p for n in (h, r, s, chi.modulus) if n > 1 for p, _ in factorize(n)}
    coef = Fraction(1)
    for p in sorted(special):
        if r % p == 0:
            local = Fraction(1)
        else:
            local = local_factor(chi(p), p, valuation(p, h), valuation(p, s))
        cp = _primitive_value(tag, p)
        if cp != 0:
            local /= generic_factor(cp, p)
        coef *= local
        if coef == 0:
            return DensityValue()
    return DensityValue.constant(tag, coef)


def C_series(chi: DirichletChar, h: int, r: int, s: int, V: int) -> float:
    """Truncated direct sum of C_chi(h, r, s) over v <= V."""
    from .dirichlet import h_chi

    total = 0.0
    for v in range(s, V + 1, s):
        if math.gcd(v, r) == 1:
            hv = h_chi(chi, v)
            if hv:
                total += hv * math.gcd(h, v) / (v * phi(v))
    return total


def laatsteh_sum(chi: DirichletChar, r: int, s: int, gp: GParams) -> DensityValue:
    """sum over v prime to r of h_chi(v) / [K_{sv,v}:Q], in closed form (s | r)."""
    if r % s:
        raise ValueError("s must divide r")
    h = gp.h
    ns = n_r(gp, s)
    total = C_closed(chi, h, r, 1) + C_closed(chi, h, r, ns // math.gcd(ns, s))
    if gp.sign < 0 and s % 2 == 1:
        total = total - C_closed(chi, h, r, 2) / 2 + C_closed(chi, h, r, 2 ** (_nu2(h) + 1)) / 2
    return total / phi(s)


# ---------------------------------------------------------------------------
# the specialised products


def _mod4_local(p: int, e: int) -> Fraction:
    """The combination 2[p^e - (-1)^e]/(p^(e-1)(p^2-1)) + 2p(-1)^e/(p^e(p^2+1)(p-1))."""
    pf = Fraction(p)
    sg = (-1) ** e
    return 2 * (pf**e - sg) / (pf ** (e - 1) * (p * p - 1)) + 2 * pf * sg / (pf**e * (p * p + 1) * (p - 1))


def _a_factor(p: int) -> Fraction:
    return 1 - Fraction(2 * p, (p * p + 1) * (p - 1))


def _primes_of(n: int) -> list[int]:
    return [p for p, _ in factorize(n)] if n > 1 else []


def P123(gp: GParams) -> tuple[Fraction, Fraction, Fraction]:
    """(P1, P2, P3/A_psi1) in the branch h odd, 8 | D, no p = 1 mod 4 dividing D."""
    if gp.h % 2 == 0 or gp.D % 8 or any(p % 4 == 1 for p in _primes_of(gp.D)):
        raise ValueError("P1*P2*P3 only arises for odd h, 8 | D and no p = 1 mod 4 dividing D")
    Dp = _primes_of(gp.D)
    P1 = Fraction(1)
    for p in Dp:
        if p % 4 == 3:
            P1 *= _mod4_local(p, gp.ep(p))
    P2 = Fraction(1)
    for p in _primes_of(gp.h):
        if p % 4 == 3 and p not in Dp:
            P2 *= 1 - _mod4_local(p, gp.ep(p))
    P3 = Fraction(1)
    for p in set(Dp) | set(_primes_of(gp.h)):
        if p % 4 == 3:
            P3 /= _a_factor(p)
    return P1, P2, P3


def Pprime12(gp: GParams) -> tuple[Fraction, Fraction]:
    """(P'1, P'2/A_xi1) for the mod 3 difference."""
    Dp = _primes_of(gp.D)
    P1 = Fraction(1)
    for p in Dp:
        if p > 2 and p % 3 == 2:
            P1 *= _mod4_local(p, gp.ep(p))
    P2 = Fraction(1)
    for p in _primes_of(gp.h):
        if p % 3 == 2 and p != 2 and p not in Dp:
            P2 *= (1 - _mod4_local(p, gp.ep(p))) / _a_factor(p)
    for p in set(Dp) | {2}:
        if p % 3 == 2:
            P2 /= _a_factor(p)
    return P1, P2
