"""Truncated definitional series for the densities, used to validate the closed forms.

Every sum here is written directly in terms of Kummer degrees and exact
membership tests; no Euler product is used.  Each result carries the value at
the cutoff and at half the cutoff so that a convergence estimate comes for free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .dirichlet import h_chi, real_nonprincipal
from .gdecomp import GParams
from .kummer import contains_zeta3, degree, sqrt_pm2_sign
from .ntkernel import smallest_factor_table


@dataclass(frozen=True)
class SeriesResult:
    value: float
    cutoff_t: int
    cutoff_v: int
    convergence_estimate: float
    rigorous_tail: Optional[float] = None
    exact: bool = False

    def __float__(self):
        return self.value

    @property
    def error_bound(self) -> float:
        return self.rigorous_tail if self.rigorous_tail is not None else self.convergence_estimate


def _prefix_pair(terms: dict[int, float], N: int) -> tuple[float, float]:
    """Sums of terms over n <= N and n <= N // 2, each with math.fsum."""
    full = math.fsum(t for n, t in terms.items() if n <= N)
    half = math.fsum(t for n, t in terms.items() if n <= N // 2)
    return full, half


def _result(terms: dict[int, float], N: int, offset: float = 0.0, scale: float = 1.0,
            tail: Optional[float] = None) -> SeriesResult:
    full, half = _prefix_pair(terms, N)
    value = offset + scale * full
    return SeriesResult(value, N, N, abs(scale * (full - half)), tail)


# ---------------------------------------------------------------------------
# index


def _index_weights(a: int, d: int, N: int) -> np.ndarray:
    """c(n) = sum over t | n with t = a mod d of mu(n/t), for n <= N."""
    spf = smallest_factor_table(max(N, 2))
    mu = np.zeros(N + 1, dtype=np.int64)
    mu[1] = 1
    for n in range(2, N + 1):
        p = int(spf[n])
        q = n // p
        mu[n] = 0 if q % p == 0 else -mu[q]
    c = np.zeros(N + 1, dtype=np.int64)
    first = a % d or d
    for t in range(first, N + 1, d):
        m = N // t
        c[t : t * m + 1 : t] += mu[1 : m + 1]
    return c


def series_rho(gp: GParams, a: int, d: int, T: int = 20000, V: Optional[int] = None) -> SeriesResult:
    """rho_g(a, d) = sum over t = a mod d, v >= 1 of mu(v)/[K_{vt,vt}:Q].

    The double sum is regrouped by n = vt and truncated at n <= T*V/T = max(T, V)
    (a hyperbolic cutoff).  The tail estimate uses 1/[K_{n,n}] <= 2h/(n phi(n))
    and |c(n)| <= tau(n), summed over one dyadic block and extended geometrically.
    """
    N = max(T, V or T)
    if N < 10:
        raise ValueError("cutoff must be at least 10")
    c = _index_weights(a, d, N)
    terms = {n: int(c[n]) / degree(n, n, gp) for n in range(1, N + 1) if c[n]}
    tau, phi = _tau_phi(2 * N)
    n = np.arange(N + 1, 2 * N + 1)
    block = math.fsum(tau[N + 1 :] / (n * phi[N + 1 :].astype(np.float64)))
    # blocks shrink by about half per doubling, so the whole tail is ~2 blocks
    return _result(terms, N, tail=2 * gp.h * 2 * block)


def _tau_phi(N: int) -> tuple[np.ndarray, np.ndarray]:
    tau = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):
        tau[k::k] += 1
    phi = np.arange(N + 1, dtype=np.int64)
    spf = smallest_factor_table(max(N, 2))
    for p in np.flatnonzero(spf[2:] == np.arange(2, N + 1)) + 2:
        phi[p::p] -= phi[p::p] // p
    return tau, phi


# ---------------------------------------------------------------------------
# building blocks for the order densities


def delta_sum_series(gp: GParams, V: int) -> SeriesResult:
    """Delta_g: sum over odd v of h_psi1(v) * (+1 if sqrt(-2), -1 if sqrt(2) in K_{2v,2v}) / [K_{2v,2v}]."""
    psi1 = real_nonprincipal(4)
    terms = {}
    for v in range(1, V + 1, 2):
        sgn = sqrt_pm2_sign(v, gp)
        if sgn:
            hv = h_chi(psi1, v)
            if hv:
                terms[v] = sgn * hv / degree(2 * v, 2 * v, gp)
    return _result(terms, V)


def xi_sum_series(gp: GParams, V: int) -> SeriesResult:
    """S_g: sum over v prime to 3 with zeta_3 not in K_{v,v} of h_xi1(v)/[K_{v,v}]."""
    xi1 = real_nonprincipal(3)
    terms = {}
    for v in range(1, V + 1):
        if v % 3 == 0:
            continue
        hv = h_chi(xi1, v)
        if hv and not contains_zeta3(v, gp):
            terms[v] = hv / degree(v, v, gp)
    return _result(terms, V)


def _qr_density(gp: GParams) -> Fraction:
    # (g/p) for p = 3 mod 4 is a character in p; it is constant on that class
    # exactly when g or -g is a square in Q, otherwise it is equidistributed.
    def is_square(q: Fraction) -> bool:
        return q > 0 and all(math.isqrt(x) ** 2 == x for x in (q.numerator, q.denominator))

    if is_square(gp.g):
        return Fraction(1, 2)
    if is_square(-gp.g):
        return Fraction(0)
    return Fraction(1, 4)


def _power_series(gp: GParams, q: int, s: int, V: int, k_shift: int) -> tuple[float, float]:
    """Sums over r >= s with q^(r+1) <= V of 1/[K_{q^r, q^(r-k)}] - 1/[K_{q^(r+1), q^(r-k)}].

    Returns the sum at cutoff V and at V/2.
    """
    def partial(cut):
        out = []
        r = s
        while q ** (r + 1) <= cut:
            k = q ** (r - k_shift)
            out.append(1 / degree(q**r, k, gp) - 1 / degree(q ** (r + 1), k, gp))
            r += 1
        return math.fsum(out)

    return partial(V), partial(V // 2)


def series_delta_order(gp: GParams, modulus: int, cls, j: int, V: int = 10**4) -> SeriesResult:
    """Order density delta_g(cls; j, modulus) assembled from truncated series."""
    from .densities import ALL_PRIMES, ClassSpec

    if V < 100:
        raise ValueError("V must be at least 100")
    if cls == ALL_PRIMES:
        other = ClassSpec(3, 4) if modulus == 4 else ClassSpec(2, 3)
        first = ClassSpec(1, 4) if modulus == 4 else ClassSpec(1, 3)
        x = series_delta_order(gp, modulus, first, j, V)
        y = series_delta_order(gp, modulus, other, j, V)
        return SeriesResult(x.value + y.value, V, V, x.convergence_estimate + y.convergence_estimate)
    if modulus == 4:
        j %= 4
        if cls == ClassSpec(3, 4):
            qr = float(_qr_density(gp))
            if j == 0:
                return SeriesResult(0.0, V, V, 0.0)
            if j == 2:
                return SeriesResult(0.5 - qr, V, V, 0.0)
            dl = delta_sum_series(gp, V)
            sign = 1 if j == 1 else -1
            return SeriesResult(qr / 2 + sign * dl.value / 4, V, V, dl.convergence_estimate / 4)
        s = cls.s
        e_full, e_half = _power_series(gp, 2, s, V, 1)
        o_full, o_half = _power_series(gp, 2, s, V, 0)
        base = 2.0 ** (1 - s)
        pick = {
            0: (base - e_full, base - e_half),
            1: (o_full / 2, o_half / 2),
            2: (e_full - o_full, e_half - o_half),
            3: (o_full / 2, o_half / 2),
        }[j]
        return SeriesResult(pick[0], V, V, abs(pick[0] - pick[1]))
    if modulus == 3:
        j %= 3
        if cls == ClassSpec(2, 3):
            if j == 0:
                return SeriesResult(0.0, V, V, 0.0)
            S = xi_sum_series(gp, V)
            sign = 1 if j == 1 else -1
            return SeriesResult(0.25 + sign * S.value / 4, V, V, S.convergence_estimate / 4)
        s = cls.s
        t_full, t_half = _power_series(gp, 3, s, V, 0)
        base = 3.0 ** (1 - s) / 2
        pick = {0: (base - t_full, base - t_half), 1: (t_full / 2, t_half / 2), 2: (t_full / 2, t_half / 2)}[j]
        return SeriesResult(pick[0], V, V, abs(pick[0] - pick[1]))
    raise ValueError("modulus must be 3 or 4")


def series_order_difference(gp: GParams, d: int, V: int = 10**4) -> SeriesResult:
    """delta_g(1,d) - delta_g(other,d) from the series: S/2 for d = 3, Delta/2 for d = 4."""
    base = xi_sum_series(gp, V) if d == 3 else delta_sum_series(gp, V)
    return SeriesResult(base.value / 2, V, V, base.convergence_estimate / 2)
