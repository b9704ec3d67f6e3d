#!/usr/bin/env python3
# The sqrt(x) law: per-class amplitudes summing to zeta(3/2)/pi.
from fractions import Fraction

from qtv.coefficients import (coeff_sum_limit, gap_coeff, gap_coeff_sum,
                              limit_estimate, main_constant, zeta_3_2)
from qtv.interval import PrecisionBudget

budget = PrecisionBudget(Fraction(1, 10**12))

print("per-class amplitudes (class d contributes ~ amp(d) sqrt(x)):")
for d in (1, 2, 3, 5, 10, 100):
    enc = gap_coeff(d, budget)
    print("  d=%4d  %.12f" % (d, float(enc.midpoint)))
print()

# partial sums approach the limit like -1/(6 sqrt(D))
lim = coeff_sum_limit(budget)
print("series limit -2/15 + zeta(3/2)/pi = %.12f" % float(lim.midpoint))
print("%8s %16s %16s" % ("D", "partial sum", "gap * sqrt(D)"))
for limit in (10, 100, 1000, 10**4, 10**5):
    closed = gap_coeff_sum(limit, budget)
    gap_mid = float((closed - lim).midpoint)
    print("%8d %16.10f %16.10f" % (limit, float(closed.midpoint),
                                   gap_mid * limit**0.5))
print()

z = zeta_3_2(budget)
c = main_constant(budget)
print("zeta(3/2)    in [%.15f, %.15f]" % (z.lo, z.hi))
print("zeta(3/2)/pi in [%.15f, %.15f]" % (c.lo, c.hi))
print()

# the limit can also be squeezed out of partial sums alone: one
# Richardson step on the 1/sqrt(D) decay, then compare
est = limit_estimate(10**6, budget)
gap_value = (est - lim).abs().hi
print("extrapolated limit:  %.12f" % float(est.midpoint))
print("distance to the certified value: %.2e" % float(gap_value))
