# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
#       format_version: '1.5'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# # Counting orders over the first primes
#
# A census walks through the first N primes, computes ord_g(p) and the index
# (p-1)/ord_g(p), and tallies them by residue class.  Primes dividing the
# numerator or denominator of g are skipped but still counted in N.

import time

from resorder.census import CensusSpec, avg_local_density, census_compare, census_run
from resorder.densities import rho_index
from resorder.gdecomp import decompose

spec = CensusSpec(pairs=((1, 2), (4, 4), (3, 3)), index_moduli=(3,))
t0 = time.perf_counter()
tally = census_run(2, 10**5, spec)
print("largest prime", tally.max_prime, f"({time.perf_counter() - t0:.1f}s)")

# The index of <2> mod 3 over primes up to 1299709, next to the exact values.

for a in range(3):
    exact = rho_index(decompose(2), a, 3)
    print(a, round(tally.index_ratio(3, a), 5), float(exact), exact)

# The even-order share approaches 17/24 slowly.

print(tally.order_ratio(2, 0), 17 / 24)

# Congruence impossibilities are checked on every prime; a non-zero count
# would point to a bug in the order computation.

print(tally.violations)

# ## A comparison table row
#
# Each class of ord mod 3 for g = 5 with the analytic density.

rows, _ = census_compare(5, 3, 10**5)
for label, analytic, emp in rows:
    print(f"{label:>22}  {float(analytic):+.6f}  {emp:+.6f}")

# ## Averaging over primes
#
# Averaging the local densities over p recovers the generic distribution,
# here (1/3, 1/6, 1/3, 1/6) modulo 4.

print(avg_local_density(4, 10**5))
