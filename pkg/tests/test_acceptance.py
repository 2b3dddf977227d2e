"""Acceptance criteria, one PASS/FAIL line each (repeated in the terminal summary).

Census-based checks run at 10^6 primes and take a few minutes in total.
"""
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import cached_census, record
from resorder.census import census_compare
from resorder.densities import (
    ClassSpec,
    Delta,
    delta_mod3,
    delta_mod4,
    delta_order,
    order_difference,
    rho_index,
    xi_sum,
)
from resorder.dirichlet import class_sum, class_sum_characters
from resorder.eulerprod import Constant, DensityValue, parse_value
from resorder.gdecomp import _nu2, decompose, parse_g
from resorder.oracle import series_delta_order, series_rho
from resorder.report import truncate8

MILLION = 10**6

# g, exact difference, printed numerical column
TABLE1 = [
    ("-14^4", "3A_xi1/4", "+0.13048284"),
    ("-196", "A_xi1", "+0.17397712"),
    ("-3^8", "15A_xi1/16", "+0.16310355"),
    ("-3", "5A_xi1/2", "+0.43494280"),
    ("-2", "3A_xi1/8", "+0.06524142"),
    ("3", "0", "0"),
    ("9", "-5A_xi1/2", "-0.43494280"),
    ("81", "0", "0"),
    ("6561", "-5A_xi1/4", "-0.21747140"),
    ("2", "3A_xi1/8", "+0.06524142"),
    ("4", "-7A_xi1/4", "-0.30445996"),
    ("5", "67A_xi1/94", "+0.12400497"),
    ("25", "-151A_xi1/94", "-0.27947388"),
    ("49", "-3A_xi1/2", "-0.26096568"),
    ("2401", "-A_xi1/2", "-0.08698856"),
]
TABLE2 = [
    ("-216", "9A_psi1/28", "+0.20688771"),
    ("-9", "0", "0"),
    ("-81", "0", "0"),
    ("2", "-A_psi1/4", "-0.16091266"),
    ("4", "0", "0"),
    ("8", "-A_psi1/28", "-0.02298752"),
    ("512", "-3A_psi1/28", "-0.06896257"),
    ("216", "-9A_psi1/28", "-0.20688771"),
    ("2048", "-489A_psi1/2396", "-0.13136276"),
    ("6^9", "-A_psi1/4", "-0.16091266"),
    ("6^27", "-23A_psi1/84", "-0.17623768"),
]
SAMPLE = ("2", "3", "4", "5", "8", "9", "-2", "-3", "-196", "25", "2048", "6^9")
GRID = [s * b**k for b in range(2, 40) for k in range(1, 9) for s in (1, -1) if decompose(s * b**k).h == k]


def _census(g):
    return cached_census(g, MILLION, ((1, 2), (4, 4), (3, 3)), (3,))


def test_criterion_1_constants():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "resorder.cli", "constants", "--cutoff", "10000000", "--format", "json"],
        capture_output=True, text=True, check=True,
    )
    elapsed = time.perf_counter() - start
    rows = {r["label"]: r["numeric"] for r in json.loads(proc.stdout)["rows"]}
    e1 = abs(rows["A_psi1"] - 0.643650679662525)
    e2 = abs(rows["A_xi1"] - 0.173977122429634)
    ok = e1 <= 1e-7 and e2 <= 1e-7 and elapsed <= 60
    assert record("criterion 1 constants", ok, f"|dA_psi1|={e1:.1e} |dA_xi1|={e2:.1e} time={elapsed:.1f}s")


def _table_check(table, d):
    bad = []
    for g, coeff, printed in table:
        diff = order_difference(decompose(parse_g(g)), d)
        if diff != parse_value(coeff) or truncate8(float(diff)) != printed:
            bad.append(f"{g}: {diff} ({truncate8(float(diff))})")
    return bad


def test_criterion_2_table1_exact():
    bad = _table_check(TABLE1, 3)
    assert record("criterion 2 table 1", not bad, f"{len(TABLE1) - len(bad)}/{len(TABLE1)} rows exact and 8 decimals"
                  + (f"; mismatches {bad}" if bad else ""))


def test_criterion_3_table2_exact():
    bad = _table_check(TABLE2, 4)
    assert record("criterion 3 table 2", not bad, f"{len(TABLE2) - len(bad)}/{len(TABLE2)} rows exact and 8 decimals"
                  + (f"; mismatches {bad}" if bad else ""))


EXAMPLE3 = (0.16589, 0.47127, 0.36283)


def _example3_exact():
    gp = decompose(2)
    A = DensityValue(0, 1, Constant.A_XI1)
    want = [DensityValue(Fraction(1, 6)), Fraction(5, 12) + A * Fraction(5, 16), Fraction(5, 12) - A * Fraction(5, 16)]
    return all(rho_index(gp, a, 3) == w for a, w in zip(range(3), want))


@pytest.mark.slow
def test_criterion_4_example3_census():
    start = time.perf_counter()
    t = _census("2")
    elapsed = time.perf_counter() - start
    got = [t.index_ratio(3, a) for a in range(3)]
    dev = max(abs(x - y) for x, y in zip(got, EXAMPLE3))
    exact = _example3_exact()
    ok = dev <= 2e-5 and exact and elapsed <= 300
    shown = ", ".join(f"{x:.6f}" for x in got)
    record("criterion 4 example 3 at 10^6 primes", ok,
           f"ratios {shown}; max deviation {dev:.1e} (tol 2e-5); exact rho values {'ok' if exact else 'wrong'}; "
           f"census {elapsed:.0f}s")
    # the quoted digits belong to the primes up to 1299709, i.e. the first 10^5 primes
    small = cached_census("2", 10**5, ((1, 2), (4, 4), (3, 3)), (3,))
    got5 = [small.index_ratio(3, a) for a in range(3)]
    dev5 = max(abs(x - y) for x, y in zip(got5, EXAMPLE3))
    record("criterion 4 supplementary, primes up to 1299709", dev5 <= 2e-5 and exact and small.max_prime == 1299709,
           f"ratios {', '.join(f'{x:.6f}' for x in got5)}; max deviation {dev5:.1e}")
    assert ok


@pytest.mark.slow
def test_criterion_5_even_order():
    t = _census("2")
    frac = t.order_ratio(2, 0)
    dev = abs(frac - 17 / 24)
    assert record("criterion 5 even order g=2", dev <= 3e-3, f"fraction {frac:.6f} vs 17/24, deviation {dev:.1e} (tol 3e-3)")


def _census_rows(table, d, gs):
    worst, out = 0.0, []
    for g, _, _ in table:
        if g not in gs:
            continue
        rows, _ = census_compare(parse_g(g), d, MILLION, tally=_census(g))
        _, analytic, emp = rows[-1]
        dev = abs(emp - float(analytic))
        worst = max(worst, dev)
        out.append(f"{g}:{dev:.1e}")
    return worst, out


@pytest.mark.slow
def test_criterion_6_desk_scale_tables():
    w1, r1 = _census_rows(TABLE1, 3, {"2", "4", "5", "9", "-3", "3"})
    w2, r2 = _census_rows(TABLE2, 4, {"2", "4", "8", "216", "-216"})
    ok = len(r1) >= 5 and len(r2) >= 5 and max(w1, w2) <= 5e-3
    assert record("criterion 6 census tables at 10^6 primes", ok,
                  f"table 1 [{' '.join(r1)}]; table 2 [{' '.join(r2)}] (tol 5e-3)")


def test_criterion_7_oracle_equivalence():
    V = 10**5
    worst_ratio, fails, checks = 0.0, [], 0
    for g in SAMPLE:
        gp = decompose(parse_g(g))
        pairs = []
        for d in (3, 4):
            for j in range(d):
                pairs.append((f"order({j},{d})", delta_order(gp, d, j), series_delta_order(gp, d, ClassSpec(0, 1), j, V)))
        for a in range(3):
            closed = rho_index(gp, a, 3)
            pairs.append((f"rho({a},3)", closed, series_rho(gp, a, 3, V)))
        for name, closed, ser in pairs:
            tol = max(10 * ser.convergence_estimate, 1e-3)
            err = abs(ser.value - float(closed))
            checks += 1
            worst_ratio = max(worst_ratio, err / tol)
            if err > tol:
                fails.append(f"{g} {name}: {err:.1e} > {tol:.1e}")
    assert record("criterion 7 oracle equivalence V=10^5", not fails,
                  f"{checks - len(fails)}/{checks} agree; worst error/tolerance {worst_ratio:.1e}"
                  + (f"; {fails}" if fails else ""))


def _mod3_literal_violations():
    """Bases where the printed mod 3 sign law (direction and equality set) fails."""
    bad = []
    for g in GRID + [-3, 3, 9, 48]:
        gp = decompose(g)
        S = xi_sum(gp).q1  # delta(2,3;1,3) - delta(2,3;2,3) = S/2
        equal = gp.D == 12 and _nu2(gp.h) in (0, 2)
        if equal:
            ok = S == 0
        elif gp.sign > 0 and gp.h % 2 == 0:
            ok = S <= 0
        else:
            ok = S >= 0
        if not ok:
            bad.append(g)
    return sorted(set(bad), key=abs)


def _mod3_corrected_ok():
    for g in GRID + [-3, 3, 9, 48, -(15**5)]:
        gp = decompose(g)
        S = xi_sum(gp).q1
        v2 = _nu2(gp.h)
        zero = (gp.sign > 0 and gp.D == 12 and v2 in (0, 2)) or (
            gp.D == 24 and ((gp.sign > 0 and v2 == 2) or (gp.sign < 0 and v2 == 1)))
        if zero:
            if S != 0:
                return False
        elif gp.sign > 0 and gp.h % 2 == 0:
            if not S < 0:
                return False
        elif not (S > 0 or (gp.sign < 0 and gp.D == 60 and gp.h % 5 == 0)):
            return False
    return True


@pytest.mark.slow
def test_criterion_8_invariants():
    notes = []
    C = ClassSpec
    sums_ok = True
    for g in SAMPLE + ("6", "7", "-5", "-4", "-8", "12", "3/2", "-81"):
        gp = decompose(parse_g(g))
        for s in (2, 3, 4):
            sums_ok &= sum((delta_mod4(gp, C(1, 2**s), j) for j in range(4)), DensityValue()) == Fraction(2, 2**s)
        for s in (1, 2, 3):
            sums_ok &= sum((delta_mod3(gp, C(1, 3**s), j) for j in range(3)), DensityValue()) == Fraction(1, 2 * 3 ** (s - 1))
        sums_ok &= sum((delta_mod3(gp, C(2, 3), j) for j in range(3)), DensityValue()) == Fraction(1, 2)
        # primes = 3 mod 4 have density 1/2, so their classes sum to 1/2
        sums_ok &= sum((delta_mod4(gp, C(3, 4), j) for j in range(4)), DensityValue()) == Fraction(1, 2)
    rho_ok = sum((rho_index(decompose(2), a, 3) for a in range(3)), DensityValue()) == 1
    notes.append(f"class sums {'ok' if sums_ok and rho_ok else 'broken'}")

    neg_ok = all(Delta(decompose(-parse_g(g))) == -Delta(decompose(parse_g(g))) for g in SAMPLE)
    notes.append(f"Delta(-g)=-Delta(g) {'ok' if neg_ok else 'broken'}")

    comp_ok = all(
        delta_mod4(decompose(g), C(3, 4), j) + delta_mod4(decompose(-g), C(3, 4), j) == Fraction(1, 4)
        for g in GRID for j in (1, 3)
    )
    notes.append(f"complement law {'ok' if comp_ok else 'broken'}")

    sign4_ok = True
    for g in GRID:
        gp = decompose(g)
        diff = delta_mod4(gp, C(3, 4), 3) - delta_mod4(gp, C(3, 4), 1)
        if Delta(gp) != DensityValue():
            sign4_ok &= (diff.q1 > 0) == (gp.sign > 0) and diff.q1 != 0
    notes.append(f"mod 4 sign law {'ok' if sign4_ok else 'broken'}")

    mod3_bad = _mod3_literal_violations()
    mod3_ok = not mod3_bad
    notes.append("mod 3 sign law as stated " + ("ok" if mod3_ok else f"fails at {len(mod3_bad)} bases, e.g. {mod3_bad[:6]}"))

    rng = random.Random(2024)
    orth_ok, done = True, 0
    while done < 200:
        d = rng.randint(1, 24)
        a = rng.randrange(d) if d > 1 else 0
        if math.gcd(a, d) != 1:
            continue
        v = rng.randint(1, 10**4)
        rhs = class_sum_characters(a, d, v)
        orth_ok &= abs(rhs.imag) < 1e-9 and abs(rhs.real - class_sum(a, d, v)) < 1e-9
        done += 1
    notes.append(f"orthogonality {'ok' if orth_ok else 'broken'}")

    t = _census("2")
    viol = {k: v for k, v in t.violations.items() if v}
    notes.append("census violations " + ("0" if not viol else str(viol)))

    others = sums_ok and rho_ok and neg_ok and comp_ok and sign4_ok and orth_ok and not viol
    ok = others and mod3_ok
    record("criterion 8 invariant suites", ok, "; ".join(notes))
    corrected = _mod3_corrected_ok()
    record("criterion 8 supplementary, corrected mod 3 sign law", corrected and others,
           "zero set and D=60 exceptions as determined by the closed form and census")
    assert ok
