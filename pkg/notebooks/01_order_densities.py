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

# # Order of g modulo p in a residue class
#
# Every density below is of the form q0 + q1*A with q0, q1 rational and A one
# of two Artin-type constants.  Start with the constants themselves.

from resorder.densities import ClassSpec, delta_order, order_difference, rho_index, xi_sum
from resorder.eulerprod import Constant, constant_value
from resorder.gdecomp import decompose, parse_g
from resorder.oracle import series_delta_order, series_order_difference

for tag in (Constant.A_PSI1, Constant.A_XI1):
    print(tag.value, constant_value(tag, 10**7))

# ## The full distribution for g = 2
#
# Modulo 4 the order is never 0 mod 4 for p = 3 mod 4, and the odd classes
# split unevenly through the A_psi1 term.

gp = decompose(2)
for d in (3, 4):
    vals = [delta_order(gp, d, j) for j in range(d)]
    print(d, [str(v) for v in vals], "sum =", sum(vals[1:], vals[0]))

# Restricting to primes in one class changes the picture.  For p = 3 mod 4
# the order is 2 mod 4 exactly when g is a non-residue.

for j in range(4):
    print(j, delta_order(gp, 4, j, ClassSpec(3, 4)), delta_order(gp, 4, j, ClassSpec(1, 4)))

# ## Comparing against the defining series
#
# The oracle never touches an Euler product: it sums Kummer degrees directly.
# Its value at cutoff V and at V/2 gives a convergence estimate.

for g in ("2", "5", "-3", "2048"):
    gp = decompose(parse_g(g))
    for d in (3, 4):
        closed = order_difference(gp, d)
        ser = series_order_difference(gp, d, 10**4)
        print(f"g={g:>5} d={d}  {str(closed):>18}  {float(closed):+.8f}  series {ser.value:+.8f}  est {ser.convergence_estimate:.1e}")

# ## Where the mod 3 difference vanishes
#
# S is the A_xi1 multiple behind delta(2,3;1,3) - delta(2,3;2,3).  Listing
# bases with D = 12 or 24 shows that negative bases with D = 12 do not vanish.

for g in (3, 9, 48, 81, -3, -12, -27, 6, -6, 6**2, -(6**2), 6**4):
    gp = decompose(g)
    print(f"g={g:>6} D={gp.D:>3} h={gp.h}  S={xi_sum(gp)}")

# ## Index in a class
#
# For g = 2 and d = 3 the three index densities are exact; for other moduli the
# series is the only route and comes with a tail estimate.

print([str(rho_index(decompose(2), a, 3)) for a in range(3)])
res = rho_index(decompose(2), 1, 5)
print(res.value, res.error_bound)
