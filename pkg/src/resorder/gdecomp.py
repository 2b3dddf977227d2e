"""Decomposition ``g = sign * g0**h`` of a rational base and its degree parameters."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .ntkernel import factorize, lcm, squarefree_part


class InvalidBase(ValueError):
    """Raised for bases g in {-1, 0, 1} or unparseable input."""


_POWER = re.compile(r"^\s*([+-]?)\s*\(?\s*(\d+)\s*\)?\s*\^\s*(\d+)\s*$")


def parse_g(text) -> Fraction:
    """Parse ``"g1/g2"``, an integer string, or a power ``"6^27"`` / ``"-3^8"``.

    A leading minus on a power binds loosely: ``-3^8`` is ``-(3**8)``.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip().replace("**", "^")
    m = _POWER.match(s)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        return Fraction(sign * int(m.group(2)) ** int(m.group(3)))
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidBase(f"cannot parse g={text!r}") from exc


@dataclass(frozen=True)
class GParams:
    g: Fraction
    sign: int
    g0: Fraction
    h: int
    D: int
    m: int
    e: dict = field(default_factory=dict)  # prime -> nu_p(h), only nonzero entries

    @property
    def g1(self) -> int:
        return self.g.numerator

    @property
    def g2(self) -> int:
        return self.g.denominator

    def ep(self, p: int) -> int:
        return self.e.get(p, 0)

    def __str__(self):
        return f"g={self.g} = {'-' if self.sign < 0 else ''}({self.g0})^{self.h}, D={self.D}"


def _nu2(n: int) -> int:
    return (n & -n).bit_length() - 1


def decompose(g) -> GParams:
    """Split g into sign, primitive base g0 > 0 and exponent h; compute D and m."""
    g = parse_g(g)
    if g in (-1, 0, 1):
        raise InvalidBase(f"g={g} is excluded (g must avoid -1, 0, 1)")
    sign = 1 if g > 0 else -1
    num, den = abs(g.numerator), g.denominator
    fn, fd = factorize(num) if num > 1 else (), factorize(den) if den > 1 else ()
    exps = [e for _, e in fn] + [e for _, e in fd]
    h = reduce(math.gcd, exps)
    g0 = Fraction(
        math.prod(p ** (e // h) for p, e in fn),
        math.prod(p ** (e // h) for p, e in fd),
    )
    k = squarefree_part(g0.numerator * g0.denominator)
    D = k if k % 4 == 1 else 4 * k
    e = {p: a for p, a in factorize(h)} if h > 1 else {}
    v2 = e.get(2, 0)
    if (v2 == 0 and D % 8 == 4) or (v2 == 1 and D % 8 == 0):
        m = D // 2
    else:
        m = lcm(2 ** (v2 + 2), D)
    return GParams(g=g, sign=sign, g0=g0, h=h, D=D, m=m, e=e)


def n_r(gp: GParams, r: int) -> int:
    """The entanglement modulus n_r of the Kummer degree formula."""
    if r < 1:
        raise ValueError("r must be positive")
    if gp.sign < 0 and r % 2 == 1:
        return gp.m
    return lcm(2 ** (_nu2(gp.h * r) + 1), gp.D)
